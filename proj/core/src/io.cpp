#include "xmap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "xmap/error.hpp"

namespace xmap::io {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kSpace) - first + 1);
}

/// Non-blank lines with CR stripped; a leading UTF-8 BOM is dropped.
std::vector<Line> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    auto line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (trim(line).empty()) continue;
    lines.push_back({number, line});
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

void expect_header(const std::vector<Line>& lines, std::string_view header) {
  if (lines.empty()) throw errors::parse_error(1, "missing header '" + std::string(header) + "'");
  if (lines.front().text != header) {
    throw errors::parse_error(lines.front().number, "expected header '" + std::string(header) +
                                                         "', got '" + std::string(lines.front().text) +
                                                         "'");
  }
}

std::vector<std::string_view> fields_of(const Line& line, std::size_t expected) {
  auto fields = split_fields(line.text);
  if (fields.size() != expected) {
    throw errors::parse_error(line.number, "expected " + std::to_string(expected) + " fields, got " +
                                               std::to_string(fields.size()));
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (field.starts_with('+')) field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

CategoryLabel label_at(const Line& line, std::string_view field) {
  try {
    return CategoryLabel(field);
  } catch (const Error& e) {
    throw e.with_line(line.number);
  }
}

double finite_value_at(const Line& line, std::string_view field, const CategoryLabel& key) {
  const auto value = parse_number(field);
  if (!value) throw errors::parse_error(line.number, "invalid value '" + std::string(field) + "'");
  if (!std::isfinite(*value)) throw errors::non_finite_value(line.number, key.str());
  return *value;
}

}  // namespace

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", w);
  std::string text(buf);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  // below the 9-digit resolution: keep it readable-back rather than "0"
  if (text == "0" && w != 0.0) return format_value(w);
  return text;
}

std::string format_value(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Crossmap read_edge_list(std::string_view text, std::string source_taxonomy,
                        std::string target_taxonomy) {
  const auto lines = split_lines(text);
  expect_header(lines, "from,to,weight");

  std::vector<LinkSpec> specs;
  std::vector<std::size_t> spec_lines;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto fields = fields_of(line, 3);
    const auto from = label_at(line, fields[0]);
    const auto to = label_at(line, fields[1]);
    const auto weight = parse_number(fields[2]);
    if (!weight || !std::isfinite(*weight)) {
      throw errors::parse_error(line.number, "invalid weight '" + std::string(fields[2]) + "'");
    }
    specs.push_back({from.str(), to.str(), *weight});
    spec_lines.push_back(line.number);
  }

  try {
    return build_crossmap(std::move(source_taxonomy), std::move(target_taxonomy), specs);
  } catch (const Error& e) {
    if (const auto idx = e.info().link_index) throw e.with_line(spec_lines.at(*idx));
    throw;
  }
}

std::string write_edge_list(const Crossmap& c) {
  std::string out = "from,to,weight\n";
  for (const auto& link : c.links()) {
    out += link.from.str();
    out += ',';
    out += link.to.str();
    out += ',';
    out += format_weight(link.weight);
    out += '\n';
  }
  return out;
}

WideTable read_wide_table(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw errors::parse_error(1, "missing header row");

  WideTable table;
  for (auto field : split_fields(lines.front().text)) table.columns.emplace_back(trim(field));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = fields_of(lines[i], table.columns.size());
    auto& row = table.rows.emplace_back();
    for (auto field : fields) row.emplace_back(trim(field));
    table.row_lines.push_back(lines[i].number);
  }
  return table;
}

Crossmap import_crosswalk(const WideTable& table, const std::string& from_col,
                          const std::string& to_col, std::string source_taxonomy,
                          std::string target_taxonomy) {
  const auto column = [&](const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end()) throw errors::missing_column(name);
    return static_cast<std::size_t>(it - table.columns.begin());
  };
  const auto from_idx = column(from_col);
  const auto to_idx = column(to_col);

  std::vector<LinkSpec> specs;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.row_lines.at(r);
    if (row[from_idx].empty()) throw errors::empty_cell(line, from_col);
    if (row[to_idx].empty()) throw errors::empty_cell(line, to_col);
    const Line where{line, {}};
    const auto from = label_at(where, row[from_idx]);
    const auto to = label_at(where, row[to_idx]);
    if (!seen.insert(from.str()).second) throw errors::duplicate_source_code(from.str(), line);
    specs.push_back({from.str(), to.str(), 1.0});
  }

  if (source_taxonomy.empty()) source_taxonomy = from_col;
  if (target_taxonomy.empty()) target_taxonomy = to_col;
  return build_crossmap(std::move(source_taxonomy), std::move(target_taxonomy), specs);
}

IndexedSeries read_series(std::string_view text, std::string taxonomy) {
  const auto lines = split_lines(text);
  expect_header(lines, "key,value");

  IndexedSeries series(std::move(taxonomy));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto fields = fields_of(line, 2);
    auto key = label_at(line, fields[0]);
    const double value = finite_value_at(line, fields[1], key);
    if (series.contains(key)) throw errors::duplicate_key(key.str(), line.number);
    series.insert(std::move(key), value);
  }
  return series;
}

std::string write_series(const IndexedSeries& s) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : s.entries()) {
    out += key.str();
    out += ',';
    out += format_value(value);
    out += '\n';
  }
  return out;
}

HarmonisedPanel read_panel(std::string_view text, std::string target_taxonomy) {
  const auto lines = split_lines(text);
  expect_header(lines, "unit,key,value");

  HarmonisedPanel panel{std::move(target_taxonomy), {}};
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto fields = fields_of(line, 3);
    const auto unit = trim(fields[0]);
    if (unit.empty()) throw errors::parse_error(line.number, "empty unit");
    auto key = label_at(line, fields[1]);
    const double value = finite_value_at(line, fields[2], key);
    if (!seen.emplace(std::string(unit), key.str()).second) {
      throw errors::duplicate_key(std::string(unit) + "/" + key.str(), line.number);
    }
    panel.rows.push_back({std::string(unit), std::move(key), value});
  }
  return panel;
}

std::string write_panel(const HarmonisedPanel& p) {
  std::string out = "unit,key,value\n";
  for (const auto& row : p.rows) {
    out += row.unit;
    out += ',';
    out += row.key.str();
    out += ',';
    out += format_value(row.value);
    out += '\n';
  }
  return out;
}

std::string write_summary_json(const CrossmapSummary& summary) {
  nlohmann::ordered_json doc;
  doc["n_sources"] = summary.n_sources;
  doc["n_targets"] = summary.n_targets;
  doc["n_links"] = summary.n_links;
  doc["n_splits"] = summary.n_splits;
  doc["n_aggregates"] = summary.n_aggregates;
  doc["max_in_degree"] = summary.max_in_degree;
  doc["is_crosswalk"] = summary.is_crosswalk;
  auto targets = nlohmann::ordered_json::array();
  for (const auto& [label, degree] : summary.most_synthetic_targets) {
    targets.push_back(nlohmann::ordered_json::array({label.str(), degree}));
  }
  doc["most_synthetic_targets"] = std::move(targets);
  return doc.dump();
}

CrossmapSummary read_summary_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    CrossmapSummary summary;
    summary.n_sources = doc.at("n_sources").get<std::size_t>();
    summary.n_targets = doc.at("n_targets").get<std::size_t>();
    summary.n_links = doc.at("n_links").get<std::size_t>();
    summary.n_splits = doc.at("n_splits").get<std::size_t>();
    summary.n_aggregates = doc.at("n_aggregates").get<std::size_t>();
    summary.max_in_degree = doc.at("max_in_degree").get<std::size_t>();
    summary.is_crosswalk = doc.at("is_crosswalk").get<bool>();
    for (const auto& entry : doc.at("most_synthetic_targets")) {
      summary.most_synthetic_targets.emplace_back(CategoryLabel(entry.at(0).get<std::string>()),
                                                  entry.at(1).get<std::size_t>());
    }
    return summary;
  } catch (const nlohmann::json::exception& e) {
    throw errors::parse_error(1, e.what());
  }
}

}  // namespace xmap::io
