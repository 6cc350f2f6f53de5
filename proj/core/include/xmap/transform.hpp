#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "xmap/crossmap.hpp"

namespace xmap {

/// Index-value data under one taxonomy: category -> finite numeric mass.
/// Entries are kept in label order.
class IndexedSeries {
 public:
  IndexedSeries() = default;
  explicit IndexedSeries(std::string taxonomy) : taxonomy_(std::move(taxonomy)) {}

  /// Throws Error(DuplicateKey) or Error(NonFiniteValue).
  IndexedSeries(std::string taxonomy, std::initializer_list<std::pair<std::string, double>> entries);

  const std::string& taxonomy() const noexcept { return taxonomy_; }
  const std::map<CategoryLabel, double>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Throws Error(DuplicateKey) if present, Error(NonFiniteValue) on NaN/inf.
  void insert(CategoryLabel key, double value);

  bool contains(const CategoryLabel& key) const { return entries_.contains(key); }
  /// Zero for absent keys.
  double value_or_zero(const CategoryLabel& key) const;

  friend bool operator==(const IndexedSeries&, const IndexedSeries&) = default;

 private:
  std::string taxonomy_;
  std::map<CategoryLabel, double> entries_;
};

struct ApplyOptions {
  /// When set, data categories without an outgoing link are dropped and
  /// reported instead of raising MissingSourceMapping.
  bool allow_unmatched = false;
};

struct ApplyResult {
  IndexedSeries series;
  /// Data categories whose mass was excluded (only with allow_unmatched).
  std::vector<CategoryLabel> unmatched;
};

/// Recode and redistribute `s` through `c`: the value of target t is the sum
/// over links (f, t, w) of w * s[f], with absent sources counting as zero.
/// Every target of `c` is present in the output.
ApplyResult apply_detailed(const Crossmap& c, const IndexedSeries& s, ApplyOptions options = {});

inline IndexedSeries apply(const Crossmap& c, const IndexedSeries& s, ApplyOptions options = {}) {
  return apply_detailed(c, s, options).series;
}

/// Sequential composition: weight(s -> u) = sum over m of a(s -> m) * b(m -> u).
/// Requires a.target_taxonomy == b.source_taxonomy and every target of `a` to
/// be a source of `b`.
Crossmap compose(const Crossmap& a, const Crossmap& b);

/// Reverse a one-to-one crosswalk. Throws Error(NotBijective) on any split,
/// aggregate or fractional weight.
Crossmap invert(const Crossmap& c);

/// Ordered crossmaps over k taxonomic layers, each step feeding the next.
class MultiStepChain {
 public:
  /// Throws EmptyChain, TaxonomyMismatch or UncoveredIntermediate.
  explicit MultiStepChain(std::vector<Crossmap> steps);

  std::span<const Crossmap> steps() const noexcept { return steps_; }
  std::size_t layer_count() const noexcept { return steps_.size() + 1; }

  /// Fold of compose over all steps.
  Crossmap collapse() const;

 private:
  std::vector<Crossmap> steps_;
};

IndexedSeries apply_chain(const MultiStepChain& chain, const IndexedSeries& s,
                          ApplyOptions options = {});

struct PanelRow {
  std::string unit;
  CategoryLabel key;
  double value;

  friend bool operator==(const PanelRow&, const PanelRow&) = default;
};

/// Long-format result of transforming several sources into one taxonomy.
struct HarmonisedPanel {
  std::string target_taxonomy;
  std::vector<PanelRow> rows;
};

struct HarmoniseInput {
  std::string unit;
  Crossmap crossmap;
  IndexedSeries series;
};

/// Strict apply per unit, concatenated in input order with keys ascending.
/// Errors from apply are re-thrown tagged with the unit.
HarmonisedPanel harmonise(std::span<const HarmoniseInput> inputs);

}  // namespace xmap
