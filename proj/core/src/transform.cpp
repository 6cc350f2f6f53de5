#include "xmap/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xmap/error.hpp"

namespace xmap {

IndexedSeries::IndexedSeries(std::string taxonomy,
                             std::initializer_list<std::pair<std::string, double>> entries)
    : taxonomy_(std::move(taxonomy)) {
  for (const auto& [key, value] : entries) insert(CategoryLabel(key), value);
}

void IndexedSeries::insert(CategoryLabel key, double value) {
  if (!std::isfinite(value)) throw errors::non_finite_value(0, key.str());
  if (entries_.contains(key)) throw errors::duplicate_key(key.str());
  entries_.emplace(std::move(key), value);
}

double IndexedSeries::value_or_zero(const CategoryLabel& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second;
}

ApplyResult apply_detailed(const Crossmap& c, const IndexedSeries& s, ApplyOptions options) {
  if (s.taxonomy() != c.source_taxonomy()) {
    throw errors::taxonomy_mismatch(c.source_taxonomy(), s.taxonomy());
  }

  ApplyResult result{IndexedSeries(c.target_taxonomy()), {}};
  for (const auto& [key, value] : s.entries()) {
    if (c.has_source(key)) continue;
    if (!options.allow_unmatched) throw errors::missing_source_mapping(key.str());
    result.unmatched.push_back(key);
  }

  // rename, multiply by weight, group-sum by target
  std::map<CategoryLabel, double> totals;
  for (const auto& t : c.targets()) totals.emplace(t, 0.0);
  const auto links = c.links();
  for (auto idx : c.sorted_order()) {
    const auto& link = links[idx];
    totals[link.to] += link.weight * s.value_or_zero(link.from);
  }
  for (auto& [key, value] : totals) result.series.insert(key, value);
  return result;
}

Crossmap compose(const Crossmap& a, const Crossmap& b) {
  if (a.target_taxonomy() != b.source_taxonomy()) {
    throw errors::taxonomy_mismatch(a.target_taxonomy(), b.source_taxonomy());
  }
  for (const auto& m : a.targets()) {
    if (!b.has_source(m)) throw errors::uncovered_intermediate(m.str());
  }

  const auto a_links = a.links();
  const auto b_links = b.links();
  std::map<CategoryLabel, std::vector<std::size_t>> b_stored;  // by source, stored order
  std::map<CategoryLabel, std::vector<std::size_t>> b_sorted;  // by source, (from, to) order
  for (std::size_t i = 0; i < b_links.size(); ++i) b_stored[b_links[i].from].push_back(i);
  for (auto idx : b.sorted_order()) b_sorted[b_links[idx].from].push_back(idx);

  using Pair = std::pair<CategoryLabel, CategoryLabel>;
  std::map<Pair, double> weights;
  for (auto ia : a.sorted_order()) {
    const auto& first = a_links[ia];
    for (auto ib : b_sorted.at(first.to)) {
      const auto& second = b_links[ib];
      weights[{first.from, second.to}] += first.weight * second.weight;
    }
  }

  std::vector<LinkSpec> specs;
  specs.reserve(weights.size());
  std::set<Pair> emitted;
  for (const auto& first : a_links) {
    for (auto ib : b_stored.at(first.to)) {
      Pair key{first.from, b_links[ib].to};
      if (!emitted.insert(key).second) continue;
      // products of shares may overshoot 1 by an ulp when several paths merge
      const double w = std::min(weights.at(key), 1.0);
      specs.push_back({key.first.str(), key.second.str(), w});
    }
  }
  return build_crossmap(a.source_taxonomy(), b.target_taxonomy(), specs);
}

Crossmap invert(const Crossmap& c) {
  for (const auto& s : c.sources()) {
    if (c.out_degree(s) > 1) throw errors::not_bijective(s.str(), "source splits (one-to-many)");
  }
  for (const auto& t : c.targets()) {
    if (c.in_degree(t) > 1) {
      throw errors::not_bijective(t.str(), "target aggregates (many-to-one)");
    }
  }
  std::vector<LinkSpec> specs;
  specs.reserve(c.links().size());
  for (const auto& link : c.links()) specs.push_back({link.to.str(), link.from.str(), link.weight});
  return build_crossmap(c.target_taxonomy(), c.source_taxonomy(), specs);
}

MultiStepChain::MultiStepChain(std::vector<Crossmap> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw errors::empty_chain();
  for (std::size_t i = 0; i + 1 < steps_.size(); ++i) {
    const auto& cur = steps_[i];
    const auto& next = steps_[i + 1];
    if (cur.target_taxonomy() != next.source_taxonomy()) {
      throw errors::taxonomy_mismatch(cur.target_taxonomy(), next.source_taxonomy());
    }
    for (const auto& m : cur.targets()) {
      if (!next.has_source(m)) throw errors::uncovered_intermediate(m.str());
    }
  }
}

Crossmap MultiStepChain::collapse() const {
  Crossmap acc = steps_.front();
  for (std::size_t i = 1; i < steps_.size(); ++i) acc = compose(acc, steps_[i]);
  return acc;
}

IndexedSeries apply_chain(const MultiStepChain& chain, const IndexedSeries& s,
                          ApplyOptions options) {
  IndexedSeries current = s;
  for (const auto& step : chain.steps()) current = apply(step, current, options);
  return current;
}

HarmonisedPanel harmonise(std::span<const HarmoniseInput> inputs) {
  HarmonisedPanel panel;
  if (inputs.empty()) return panel;
  panel.target_taxonomy = inputs.front().crossmap.target_taxonomy();

  std::set<std::string> units;
  for (const auto& input : inputs) {
    if (!units.insert(input.unit).second) throw errors::duplicate_unit(input.unit);
    if (input.crossmap.target_taxonomy() != panel.target_taxonomy) {
      throw errors::target_taxonomy_mismatch(input.unit, panel.target_taxonomy,
                                             input.crossmap.target_taxonomy());
    }
  }

  for (const auto& input : inputs) {
    IndexedSeries out;
    try {
      out = apply(input.crossmap, input.series);
    } catch (const Error& e) {
      throw e.with_unit(input.unit);
    }
    for (const auto& [key, value] : out.entries()) panel.rows.push_back({input.unit, key, value});
  }
  return panel;
}

}  // namespace xmap
