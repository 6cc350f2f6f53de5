#include <algorithm>
#include <map>
#include <numeric>

#include "xmap/io.hpp"
#include "xmap/viz.hpp"

namespace xmap::viz {
namespace {

using Order = std::vector<CategoryLabel>;
using RowIndex = std::map<CategoryLabel, std::size_t>;

RowIndex rows_of(const Order& order) {
  RowIndex rows;
  for (std::size_t i = 0; i < order.size(); ++i) rows.emplace(order[i], i);
  return rows;
}

/// Layer orders plus the crossmaps connecting consecutive layers.
struct Skeleton {
  std::vector<std::string> taxonomies;
  std::vector<Order> layers;
  std::vector<const Crossmap*> steps;
};

Skeleton skeleton_of(std::span<const Crossmap> steps) {
  Skeleton sk;
  sk.taxonomies.push_back(steps.front().source_taxonomy());
  sk.layers.emplace_back(steps.front().sources().begin(), steps.front().sources().end());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    sk.steps.push_back(&step);
    sk.taxonomies.push_back(step.target_taxonomy());
    Order layer(step.targets().begin(), step.targets().end());
    // sources of the next step that nothing flows into still get a row
    if (i + 1 < steps.size()) {
      for (const auto& s : steps[i + 1].sources()) {
        if (!step.has_target(s)) layer.push_back(s);
      }
    }
    sk.layers.push_back(std::move(layer));
  }
  return sk;
}

LayoutPlan materialise(const Skeleton& sk) {
  LayoutPlan plan;
  const auto last = sk.layers.size() - 1;
  for (std::size_t l = 0; l < sk.layers.size(); ++l) {
    Layer layer{sk.taxonomies[l], {}};
    for (std::size_t row = 0; row < sk.layers[l].size(); ++row) {
      const auto& label = sk.layers[l][row];
      PlacedNode node{label, l, row, {}, 0, 0};
      if (l > 0) node.in_degree = sk.steps[l - 1]->in_degree(label);
      if (l < last) node.out_degree = sk.steps[l]->out_degree(label);
      if (l < last) {
        node.style_class = node.out_degree > 1 ? "split" : "one-to-one";
      } else {
        node.style_class = node.in_degree > 1 ? "aggregate" : "unique";
      }
      layer.nodes.push_back(std::move(node));
    }
    plan.layers.push_back(std::move(layer));
  }

  for (std::size_t l = 0; l < sk.steps.size(); ++l) {
    const auto from_rows = rows_of(sk.layers[l]);
    const auto to_rows = rows_of(sk.layers[l + 1]);
    const auto& step = *sk.steps[l];
    for (const auto& link : step.links()) {
      PlacedEdge edge{link.from, link.to, l, from_rows.at(link.from), to_rows.at(link.to), link.weight,
                      step.out_degree(link.from) > 1 ? LineStyle::Dashed : LineStyle::Solid,
                      io::format_weight(link.weight)};
      plan.edges.push_back(std::move(edge));
    }
  }
  return plan;
}

/// Mean row of each node's neighbours in `reference`; nodes without
/// neighbours keep their current row.
std::vector<double> barycenters(const Order& layer, const RowIndex& reference,
                                const std::map<CategoryLabel, std::vector<CategoryLabel>>& adjacent) {
  std::vector<double> out(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    const auto it = adjacent.find(layer[i]);
    if (it == adjacent.end() || it->second.empty()) {
      out[i] = static_cast<double>(i);
      continue;
    }
    double sum = 0.0;
    for (const auto& n : it->second) sum += static_cast<double>(reference.at(n));
    out[i] = sum / static_cast<double>(it->second.size());
  }
  return out;
}

enum class Ties { Stable, ByLabel };

void sort_by_barycenter(Order& layer, const RowIndex& reference,
                        const std::map<CategoryLabel, std::vector<CategoryLabel>>& adjacent, Ties ties) {
  const auto bary = barycenters(layer, reference, adjacent);
  std::vector<std::size_t> idx(layer.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (bary[a] != bary[b]) return bary[a] < bary[b];
    return ties == Ties::ByLabel && layer[a] < layer[b];
  });
  Order sorted;
  sorted.reserve(layer.size());
  for (auto i : idx) sorted.push_back(layer[i]);
  layer = std::move(sorted);
}

std::map<CategoryLabel, std::vector<CategoryLabel>> targets_by_source(const Crossmap& c) {
  std::map<CategoryLabel, std::vector<CategoryLabel>> adj;
  for (const auto& link : c.links()) adj[link.from].push_back(link.to);
  return adj;
}

std::map<CategoryLabel, std::vector<CategoryLabel>> sources_by_target(const Crossmap& c) {
  std::map<CategoryLabel, std::vector<CategoryLabel>> adj;
  for (const auto& link : c.links()) adj[link.to].push_back(link.from);
  return adj;
}

/// Inversions of the to-row sequence after sorting edges by (from, to),
/// counted with a Fenwick tree. Edges sharing an endpoint never cross.
std::size_t crossings_between(std::vector<std::pair<std::size_t, std::size_t>> edges,
                              std::size_t to_count) {
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> tree(to_count + 1, 0);
  std::size_t seen = 0;
  std::size_t crossings = 0;
  for (const auto& [from, to] : edges) {
    // edges already inserted with to-row <= this one
    std::size_t not_greater = 0;
    for (auto i = to + 1; i > 0; i -= i & (~i + 1)) not_greater += tree[i];
    crossings += seen - not_greater;
    for (auto i = to + 1; i <= to_count; i += i & (~i + 1)) ++tree[i];
    ++seen;
  }
  return crossings;
}

std::size_t skeleton_crossings(const Skeleton& sk) {
  std::size_t total = 0;
  for (std::size_t l = 0; l < sk.steps.size(); ++l) {
    const auto from_rows = rows_of(sk.layers[l]);
    const auto to_rows = rows_of(sk.layers[l + 1]);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& link : sk.steps[l]->links()) {
      edges.emplace_back(from_rows.at(link.from), to_rows.at(link.to));
    }
    total += crossings_between(std::move(edges), sk.layers[l + 1].size());
  }
  return total;
}

}  // namespace

LayoutPlan layout_bipartite(const Crossmap& c, Ordering ordering) {
  auto sk = skeleton_of(std::span<const Crossmap>(&c, 1));
  auto& sources = sk.layers[0];
  auto& targets = sk.layers[1];

  switch (ordering) {
    case Ordering::InputOrder:
      break;
    case Ordering::SplitsFirst:
      std::stable_partition(sources.begin(), sources.end(),
                            [&](const CategoryLabel& s) { return c.out_degree(s) > 1; });
      sort_by_barycenter(targets, rows_of(sources), sources_by_target(c), Ties::ByLabel);
      break;
    case Ordering::TargetInDegree:
      std::sort(targets.begin(), targets.end(), [&](const CategoryLabel& a, const CategoryLabel& b) {
        const auto da = c.in_degree(a);
        const auto db = c.in_degree(b);
        if (da != db) return da > db;
        return a < b;
      });
      sort_by_barycenter(sources, rows_of(targets), targets_by_source(c), Ties::ByLabel);
      break;
  }
  return materialise(sk);
}

LayoutPlan layout_chain(const MultiStepChain& chain, std::size_t sweeps) {
  auto sk = skeleton_of(chain.steps());
  const auto steps = chain.steps();

  std::vector<std::map<CategoryLabel, std::vector<CategoryLabel>>> left(sk.layers.size());
  std::vector<std::map<CategoryLabel, std::vector<CategoryLabel>>> right(sk.layers.size());
  for (std::size_t l = 0; l < steps.size(); ++l) {
    right[l] = targets_by_source(steps[l]);
    left[l + 1] = sources_by_target(steps[l]);
  }

  auto best = sk.layers;
  auto best_crossings = skeleton_crossings(sk);
  for (std::size_t iter = 0; iter < sweeps && best_crossings > 0; ++iter) {
    const auto keep_if_better = [&] {
      const auto crossings = skeleton_crossings(sk);
      if (crossings < best_crossings) {
        best_crossings = crossings;
        best = sk.layers;
      }
    };
    for (std::size_t l = 1; l < sk.layers.size(); ++l) {
      sort_by_barycenter(sk.layers[l], rows_of(sk.layers[l - 1]), left[l], Ties::Stable);
    }
    keep_if_better();
    for (std::size_t l = sk.layers.size() - 1; l-- > 0;) {
      sort_by_barycenter(sk.layers[l], rows_of(sk.layers[l + 1]), right[l], Ties::Stable);
    }
    keep_if_better();
  }
  sk.layers = std::move(best);
  return materialise(sk);
}

std::size_t count_crossings(const LayoutPlan& plan) {
  if (plan.layers.size() < 2) return 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per_step(plan.layers.size() - 1);
  for (const auto& e : plan.edges) per_step.at(e.from_layer).emplace_back(e.from_row, e.to_row);
  std::size_t total = 0;
  for (std::size_t l = 0; l < per_step.size(); ++l) {
    total += crossings_between(std::move(per_step[l]), plan.layers[l + 1].nodes.size());
  }
  return total;
}

}  // namespace xmap::viz
