#include "xmap/crossmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xmap/error.hpp"

namespace xmap {
namespace {

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

}  // namespace

CategoryLabel::CategoryLabel(std::string_view text) {
  const auto trimmed = trim(text);
  if (trimmed.empty()) throw errors::invalid_label(std::string(text), "label is empty");
  if (trimmed.find_first_of(",\n\r\"") != std::string_view::npos) {
    throw errors::invalid_label(std::string(trimmed),
                                "label must not contain a comma, line break or double quote");
  }
  text_ = std::string(trimmed);
}

const char* to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::OneToOne: return "one-to-one";
    case RelationKind::Split: return "split";
    case RelationKind::Unique: return "unique";
    case RelationKind::Aggregate: return "aggregate";
  }
  return "?";
}

Crossmap build_crossmap(std::string source_taxonomy, std::string target_taxonomy,
                        std::span<const LinkSpec> specs) {
  if (specs.empty()) throw errors::empty_crossmap();

  Crossmap c;
  c.source_taxonomy_ = std::move(source_taxonomy);
  c.target_taxonomy_ = std::move(target_taxonomy);
  c.links_.reserve(specs.size());

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    Link link{CategoryLabel(spec.from), CategoryLabel(spec.to), spec.weight};
    if (!std::isfinite(link.weight) || link.weight <= 0.0) {
      throw errors::weight_out_of_range(link.from.str(), link.to.str(), link.weight, i);
    }
    c.links_.push_back(std::move(link));
  }

  const auto& links = c.links_;
  c.sorted_.resize(links.size());
  std::iota(c.sorted_.begin(), c.sorted_.end(), std::size_t{0});
  std::stable_sort(c.sorted_.begin(), c.sorted_.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(links[a].from, links[a].to) < std::tie(links[b].from, links[b].to);
  });

  // Stable sort keeps the earlier occurrence first; report the later one.
  for (std::size_t k = 1; k < c.sorted_.size(); ++k) {
    const auto& prev = links[c.sorted_[k - 1]];
    const auto& cur = links[c.sorted_[k]];
    if (prev.from == cur.from && prev.to == cur.to) {
      throw errors::duplicate_link(cur.from.str(), cur.to.str(), c.sorted_[k]);
    }
  }

  // Per-source sums in (from, to) order; sources checked in first-appearance order.
  std::map<CategoryLabel, double> sums;
  for (auto idx : c.sorted_) sums[links[idx].from] += links[idx].weight;

  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& link = links[i];
    if (c.out_degree_[link.from]++ == 0) {
      c.sources_.push_back(link.from);
      const double sum = sums.at(link.from);
      // slack absorbs the binary rounding of decimal inputs sitting exactly on the
      // tolerance, e.g. 3 x 0.333333
      if (std::abs(sum - 1.0) > kWeightSumTolerance + 1e-12) {
        throw errors::weight_sum_violation(link.from.str(), sum, i);
      }
    }
    if (c.in_degree_[link.to]++ == 0) c.targets_.push_back(link.to);
  }

  // A lone outgoing link that passed the sum check can only mean "all of it".
  for (auto& link : c.links_) {
    if (c.out_degree_.at(link.from) == 1) link.weight = 1.0;
  }

  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].weight > 1.0) {
      throw errors::weight_out_of_range(links[i].from.str(), links[i].to.str(), links[i].weight, i);
    }
  }
  return c;
}

std::size_t Crossmap::out_degree(const CategoryLabel& s) const {
  const auto it = out_degree_.find(s);
  return it == out_degree_.end() ? 0 : it->second;
}

std::size_t Crossmap::in_degree(const CategoryLabel& t) const {
  const auto it = in_degree_.find(t);
  return it == in_degree_.end() ? 0 : it->second;
}

std::optional<double> Crossmap::weight(const CategoryLabel& from, const CategoryLabel& to) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::tie(from, to),
                                   [&](std::size_t idx, const auto& key) {
                                     return std::tie(links_[idx].from, links_[idx].to) < key;
                                   });
  if (it == sorted_.end()) return std::nullopt;
  const auto& link = links_[*it];
  if (link.from != from || link.to != to) return std::nullopt;
  return link.weight;
}

RelationKind classify_source(const Crossmap& c, const CategoryLabel& s) {
  const auto degree = c.out_degree(s);
  if (degree == 0) throw errors::unknown_category(s.str());
  return degree > 1 ? RelationKind::Split : RelationKind::OneToOne;
}

RelationKind classify_target(const Crossmap& c, const CategoryLabel& t) {
  const auto degree = c.in_degree(t);
  if (degree == 0) throw errors::unknown_category(t.str());
  return degree > 1 ? RelationKind::Aggregate : RelationKind::Unique;
}

bool is_crosswalk(const Crossmap& c) {
  return std::all_of(c.links().begin(), c.links().end(),
                     [](const Link& link) { return link.weight == 1.0; });
}

CrossmapSummary summarize(const Crossmap& c) {
  CrossmapSummary out;
  out.n_sources = c.sources().size();
  out.n_targets = c.targets().size();
  out.n_links = c.links().size();
  for (const auto& s : c.sources()) {
    if (c.out_degree(s) > 1) ++out.n_splits;
  }
  for (const auto& t : c.targets()) {
    const auto degree = c.in_degree(t);
    if (degree > 1) ++out.n_aggregates;
    out.max_in_degree = std::max(out.max_in_degree, degree);
    out.most_synthetic_targets.emplace_back(t, degree);
  }
  std::sort(out.most_synthetic_targets.begin(), out.most_synthetic_targets.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  out.is_crosswalk = is_crosswalk(c);
  return out;
}

}  // namespace xmap
