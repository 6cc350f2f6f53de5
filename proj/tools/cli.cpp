#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "xmap/crossmap.hpp"
#include "xmap/io.hpp"
#include "xmap/transform.hpp"
#include "xmap/viz.hpp"

namespace xmap::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw errors::io(path, "cannot open file for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw errors::io(path, "read failed");
  return buf.str();
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// Writes `text` to `out_path` when set, else to `out`.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw errors::io(out_path, "cannot open file for writing");
  file << text;
  if (!file) throw errors::io(out_path, "write failed");
}

struct Names {
  std::string source;
  std::string target;
};

void add_name_flags(CLI::App* cmd, Names& names) {
  cmd->add_option("--source-name", names.source, "Source taxonomy name (default: file stem)");
  cmd->add_option("--target-name", names.target, "Target taxonomy name (default: file stem)");
}

Crossmap load_map(const std::string& path, const Names& names) {
  const auto stem = stem_of(path);
  return io::read_edge_list(read_file(path), names.source.empty() ? stem : names.source,
                            names.target.empty() ? stem : names.target);
}

std::string summary_text(const CrossmapSummary& s) {
  std::ostringstream out;
  out << s.n_sources << " sources, " << s.n_targets << " targets, " << s.n_links << " links, "
      << s.n_splits << " splits, " << s.n_aggregates << " aggregates, max in-degree "
      << s.max_in_degree << (s.is_crosswalk ? ", crosswalk" : "");
  return out.str();
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonFiniteValue:
    case ErrorKind::MissingColumn:
    case ErrorKind::EmptyCell:
    case ErrorKind::Io:
      return kParseOrIoError;
    default:
      return kDomainError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Validate, transform, compose and render crossmaps", "xmap"};
  app.require_subcommand(1, 1);

  Names names;
  std::string out_path;

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an edge list and print a summary line");
  validate->add_option("edges", validate_path, "Edge list (from,to,weight)")->required();
  add_name_flags(validate, names);

  std::string map_path;
  std::string data_path;
  bool allow_unmatched = false;
  auto* transform = app.add_subcommand("transform", "Apply a crossmap to a key,value series");
  transform->add_option("--map", map_path, "Edge list")->required();
  transform->add_option("--data", data_path, "Series (key,value)")->required();
  transform->add_flag("--allow-unmatched", allow_unmatched,
                      "Drop data categories without a mapping instead of failing");
  transform->add_option("--out", out_path, "Write result to file");
  add_name_flags(transform, names);

  std::string first_path;
  std::string second_path;
  std::string via_name;
  auto* compose_cmd = app.add_subcommand("compose", "Compose two sequential crossmaps");
  compose_cmd->add_option("first", first_path, "First edge list")->required();
  compose_cmd->add_option("second", second_path, "Second edge list")->required();
  compose_cmd->add_option("--out", out_path, "Write result to file");
  compose_cmd->add_option("--via-name", via_name, "Intermediate taxonomy name");
  add_name_flags(compose_cmd, names);

  std::string render_path;
  std::string format = "svg";
  std::string order = "splits-first";
  bool hide_unit_weights = false;
  auto* render = app.add_subcommand("render", "Draw a crossmap as SVG or DOT");
  render->add_option("edges", render_path, "Edge list")->required();
  render->add_option("--format", format, "svg or dot")->check(CLI::IsMember({"svg", "dot"}));
  render->add_option("--order", order, "Source/target ordering")
      ->check(CLI::IsMember({"splits-first", "target-indegree", "input-order"}));
  render->add_flag("--hide-unit-weights", hide_unit_weights, "Omit labels on weight-1 links");
  render->add_option("--out", out_path, "Write result to file");
  add_name_flags(render, names);

  std::string summary_path;
  bool as_json = false;
  auto* summarize_cmd = app.add_subcommand("summarize", "Relation census and syntheticness");
  summarize_cmd->add_option("edges", summary_path, "Edge list")->required();
  summarize_cmd->add_flag("--json", as_json, "Emit JSON");
  add_name_flags(summarize_cmd, names);

  std::string table_path;
  std::string from_col;
  std::string to_col;
  auto* import_cmd = app.add_subcommand("import-crosswalk", "Convert a wide crosswalk table");
  import_cmd->add_option("table", table_path, "CSV with a header row")->required();
  import_cmd->add_option("--from", from_col, "Source column")->required();
  import_cmd->add_option("--to", to_col, "Target column")->required();
  import_cmd->add_option("--out", out_path, "Write result to file");
  add_name_flags(import_cmd, names);

  std::vector<const char*> argv{"xmap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*validate) {
      const auto c = load_map(validate_path, names);
      out << "valid: " << summary_text(summarize(c)) << '\n';
    } else if (*transform) {
      const auto c = load_map(map_path, names);
      const auto series = io::read_series(read_file(data_path), c.source_taxonomy());
      const auto result = apply_detailed(c, series, {allow_unmatched});
      if (!result.unmatched.empty()) {
        err << "warning: " << result.unmatched.size() << " unmatched categor"
            << (result.unmatched.size() == 1 ? "y" : "ies") << " excluded:";
        for (const auto& u : result.unmatched) err << ' ' << u.str();
        err << '\n';
      }
      emit(io::write_series(result.series), out_path, out);
    } else if (*compose_cmd) {
      const auto via = via_name.empty() ? stem_of(first_path) + "+" + stem_of(second_path) : via_name;
      const auto a = io::read_edge_list(read_file(first_path),
                                        names.source.empty() ? stem_of(first_path) : names.source, via);
      const auto b = io::read_edge_list(read_file(second_path), via,
                                        names.target.empty() ? stem_of(second_path) : names.target);
      emit(io::write_edge_list(xmap::compose(a, b)), out_path, out);
    } else if (*render) {
      const auto c = load_map(render_path, names);
      if (format == "dot") {
        emit(viz::render_dot(c), out_path, out);
      } else {
        const auto ordering = order == "target-indegree" ? viz::Ordering::TargetInDegree
                              : order == "input-order"   ? viz::Ordering::InputOrder
                                                         : viz::Ordering::SplitsFirst;
        viz::RenderStyle style;
        style.hide_unit_weights = hide_unit_weights;
        emit(viz::render_svg(viz::layout_bipartite(c, ordering), c, style), out_path, out);
      }
    } else if (*summarize_cmd) {
      const auto s = summarize(load_map(summary_path, names));
      if (as_json) {
        out << io::write_summary_json(s) << '\n';
      } else {
        out << summary_text(s) << '\n';
        out << "most synthetic targets:";
        for (const auto& [label, degree] : s.most_synthetic_targets) {
          if (degree < 2) break;
          out << ' ' << label.str() << '(' << degree << ')';
        }
        out << '\n';
      }
    } else if (*import_cmd) {
      const auto table = io::read_wide_table(read_file(table_path));
      emit(io::write_edge_list(io::import_crosswalk(table, from_col, to_col, names.source, names.target)),
           out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kOk;
}

}  // namespace xmap::cli
