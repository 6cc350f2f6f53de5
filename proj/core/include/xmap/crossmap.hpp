#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xmap {

/// Maximum deviation of a source's outgoing weight total from one.
inline constexpr double kWeightSumTolerance = 1e-6;

/// A category code of some taxonomy ("BLX", "111111", "004").
///
/// Stored trimmed of surrounding whitespace. Never empty and never contains a
/// comma, line break or double quote, so it can be written to CSV verbatim.
/// Comparison is by exact bytes.
class CategoryLabel {
 public:
  /// Throws Error(InvalidLabel) when the trimmed text violates the rules above.
  explicit CategoryLabel(std::string_view text);

  const std::string& str() const noexcept { return text_; }

  friend auto operator<=>(const CategoryLabel&, const CategoryLabel&) = default;
  friend bool operator==(const CategoryLabel&, const CategoryLabel&) = default;

 private:
  std::string text_;
};

/// Unvalidated edge as read from a file or assembled by a caller.
struct LinkSpec {
  std::string from;
  std::string to;
  double weight = 0.0;
};

struct Link {
  CategoryLabel from;
  CategoryLabel to;
  double weight;

  friend bool operator==(const Link&, const Link&) = default;
};

enum class RelationKind { OneToOne, Split, Unique, Aggregate };

const char* to_string(RelationKind kind);

class Crossmap;

/// The only way to obtain a Crossmap. Validates, in this order: empty input,
/// labels, non-positive or non-finite weights, duplicate (from, to) pairs,
/// per-source weight sums, then weights above one. Throws Error.
Crossmap build_crossmap(std::string source_taxonomy, std::string target_taxonomy,
                        std::span<const LinkSpec> links);

/// Validated, immutable weighted bipartite mapping from a source taxonomy to
/// a target taxonomy. Links keep their construction order.
class Crossmap {
 public:
  const std::string& source_taxonomy() const noexcept { return source_taxonomy_; }
  const std::string& target_taxonomy() const noexcept { return target_taxonomy_; }

  std::span<const Link> links() const noexcept { return links_; }
  /// Link positions ordered by (from, to); the canonical reduction order.
  std::span<const std::size_t> sorted_order() const noexcept { return sorted_; }

  /// Source / target categories in order of first appearance in links().
  std::span<const CategoryLabel> sources() const noexcept { return sources_; }
  std::span<const CategoryLabel> targets() const noexcept { return targets_; }

  bool has_source(const CategoryLabel& s) const { return out_degree_.contains(s); }
  bool has_target(const CategoryLabel& t) const { return in_degree_.contains(t); }

  /// Zero for labels that are not sources / targets.
  std::size_t out_degree(const CategoryLabel& s) const;
  std::size_t in_degree(const CategoryLabel& t) const;

  std::optional<double> weight(const CategoryLabel& from, const CategoryLabel& to) const;

  friend bool operator==(const Crossmap&, const Crossmap&) = default;

 private:
  friend Crossmap build_crossmap(std::string, std::string, std::span<const LinkSpec>);
  Crossmap() = default;

  std::string source_taxonomy_;
  std::string target_taxonomy_;
  std::vector<Link> links_;
  std::vector<std::size_t> sorted_;
  std::vector<CategoryLabel> sources_;
  std::vector<CategoryLabel> targets_;
  std::map<CategoryLabel, std::size_t> out_degree_;
  std::map<CategoryLabel, std::size_t> in_degree_;
};

/// Convenience overload for brace-initialised link lists.
inline Crossmap build_crossmap(std::string source_taxonomy, std::string target_taxonomy,
                               std::initializer_list<LinkSpec> links) {
  return build_crossmap(std::move(source_taxonomy), std::move(target_taxonomy),
                        std::span<const LinkSpec>(links.begin(), links.size()));
}

/// Split when the source has more than one outgoing link, else OneToOne.
/// Throws Error(UnknownCategory) if `s` is not a source of `c`.
RelationKind classify_source(const Crossmap& c, const CategoryLabel& s);

/// Aggregate when the target has more than one incoming link, else Unique.
/// Throws Error(UnknownCategory) if `t` is not a target of `c`.
RelationKind classify_target(const Crossmap& c, const CategoryLabel& t);

/// True when every link carries unit weight.
bool is_crosswalk(const Crossmap& c);

struct CrossmapSummary {
  std::size_t n_sources = 0;
  std::size_t n_targets = 0;
  std::size_t n_links = 0;
  std::size_t n_splits = 0;
  std::size_t n_aggregates = 0;
  std::size_t max_in_degree = 0;
  /// Every target with its in-degree; in-degree descending, then label.
  std::vector<std::pair<CategoryLabel, std::size_t>> most_synthetic_targets;
  bool is_crosswalk = false;

  friend bool operator==(const CrossmapSummary&, const CrossmapSummary&) = default;
};

CrossmapSummary summarize(const Crossmap& c);

}  // namespace xmap
