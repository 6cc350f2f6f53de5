#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xmap/crossmap.hpp"
#include "xmap/transform.hpp"

namespace xmap::viz {

/// Source/target ordering for two-layer layouts.
///  - SplitsFirst: split sources above one-to-one sources (each group in
///    input order); targets by barycenter of their source rows, ties by label.
///  - TargetInDegree: targets by in-degree descending, then label; sources by
///    barycenter of their target rows, ties by label.
///  - InputOrder: both columns in order of first appearance.
enum class Ordering { SplitsFirst, TargetInDegree, InputOrder };

enum class LineStyle { Solid, Dashed };

struct PlacedNode {
  CategoryLabel label;
  std::size_t layer = 0;
  std::size_t row = 0;
  /// "split" / "one-to-one" for layers with outgoing links, "aggregate" /
  /// "unique" for the final layer.
  std::string style_class;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
};

struct Layer {
  std::string taxonomy;
  std::vector<PlacedNode> nodes;  // indexed by row
};

/// Edge between layer `from_layer` and `from_layer + 1`.
struct PlacedEdge {
  CategoryLabel from;
  CategoryLabel to;
  std::size_t from_layer = 0;
  std::size_t from_row = 0;
  std::size_t to_row = 0;
  double weight = 0.0;
  LineStyle line_style = LineStyle::Solid;  // dashed iff the source splits
  std::optional<std::string> label_text;
};

struct LayoutPlan {
  std::vector<Layer> layers;
  std::vector<PlacedEdge> edges;  // crossmap link order, step by step
};

LayoutPlan layout_bipartite(const Crossmap& c, Ordering ordering = Ordering::SplitsFirst);

/// Layered layout for k taxonomies. Starts from first-appearance order and
/// runs `sweeps` barycenter iterations (left-to-right, then right-to-left),
/// returning the ordering with the fewest crossings seen, so the result never
/// has more crossings than the input order.
LayoutPlan layout_chain(const MultiStepChain& chain, std::size_t sweeps = 4);

/// Number of pairwise edge crossings between adjacent layers.
std::size_t count_crossings(const LayoutPlan& plan);

struct RenderStyle {
  bool hide_unit_weights = false;
  bool shade_by_in_degree = true;
  double node_spacing = 36.0;
  double layer_spacing = 260.0;
};

/// Fill opacity of a node with `in_degree` incoming links.
double target_opacity(std::size_t in_degree);

/// Labels longer than this are truncated with an ellipsis.
inline constexpr std::size_t kMaxLabelChars = 24;

/// SVG 1.1 node-link diagram. Element order: nodes layer by layer in row
/// order, edges sorted by (from, to), then node labels, then weight labels.
/// Throws PlanMismatch if `plan` does not describe `c`, InvalidStyle on
/// non-positive spacings.
std::string render_svg(const LayoutPlan& plan, const Crossmap& c, const RenderStyle& style = {});
std::string render_svg(const LayoutPlan& plan, const MultiStepChain& chain,
                       const RenderStyle& style = {});

/// DOT digraph with one same-rank subgraph per layer (splits-first order),
/// one edge statement per link sorted by (from, to), weight as edge label and
/// style=dashed for split sources.
std::string render_dot(const Crossmap& c);

}  // namespace xmap::viz
