#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xmap/error.hpp"
#include "xmap/io.hpp"
#include "xmap/viz.hpp"

namespace xmap::viz {
namespace {

constexpr double kMargin = 24.0;
constexpr double kLabelRoom = 180.0;  // horizontal space reserved for outer labels
constexpr double kNodeRadius = 5.0;
constexpr double kFontSize = 12.0;
constexpr double kWeightFontSize = 10.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

/// Truncates to kMaxLabelChars code points, never splitting a UTF-8 sequence.
std::optional<std::string> truncated(const std::string& text) {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (chars == kMaxLabelChars) return text.substr(0, i) + "…";
    ++chars;
  }
  return std::nullopt;
}

void check_style(const RenderStyle& style) {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(style.node_spacing)) throw errors::invalid_style("node_spacing must be > 0");
  if (!positive(style.layer_spacing)) throw errors::invalid_style("layer_spacing must be > 0");
}

std::set<CategoryLabel> label_set(const Layer& layer) {
  std::set<CategoryLabel> out;
  for (const auto& node : layer.nodes) out.insert(node.label);
  return out;
}

void check_plan(const LayoutPlan& plan, std::span<const Crossmap> steps) {
  if (plan.layers.size() != steps.size() + 1) {
    throw errors::plan_mismatch("plan has " + std::to_string(plan.layers.size()) +
                                " layers, expected " + std::to_string(steps.size() + 1));
  }
  std::size_t links = 0;
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const auto& step = steps[l];
    links += step.links().size();
    std::set<CategoryLabel> sources(step.sources().begin(), step.sources().end());
    const auto from = label_set(plan.layers[l]);
    if (!std::includes(from.begin(), from.end(), sources.begin(), sources.end()) ||
        (l == 0 && from != sources)) {
      throw errors::plan_mismatch("layer " + std::to_string(l) + " does not match source categories");
    }
    std::set<CategoryLabel> targets(step.targets().begin(), step.targets().end());
    const auto to = label_set(plan.layers[l + 1]);
    if (!std::includes(to.begin(), to.end(), targets.begin(), targets.end()) ||
        (l + 1 == steps.size() && to != targets)) {
      throw errors::plan_mismatch("layer " + std::to_string(l + 1) +
                                  " does not match target categories");
    }
  }
  if (plan.edges.size() != links) throw errors::plan_mismatch("edge count differs from link count");
}

struct Point {
  double x;
  double y;
};

class SvgWriter {
 public:
  SvgWriter(const LayoutPlan& plan, const RenderStyle& style) : plan_(plan), style_(style) {}

  std::string render() {
    std::size_t max_rows = 1;
    for (const auto& layer : plan_.layers) max_rows = std::max(max_rows, layer.nodes.size());
    const double width = 2 * (kMargin + kLabelRoom) +
                         style_.layer_spacing * static_cast<double>(plan_.layers.size() - 1);
    const double height = 2 * kMargin + kFontSize +
                          style_.node_spacing * static_cast<double>(max_rows - 1) + kFontSize;

    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
         << "\" font-family=\"sans-serif\" font-size=\"" << num(kFontSize) << "\">\n";
    for (const auto& layer : plan_.layers) {
      out_ << "<!-- " << xml_escape(layer.taxonomy) << " -->\n";
      for (const auto& node : layer.nodes) node_shape(node);
    }
    const auto edges = sorted_edges();
    for (const auto* e : edges) edge_line(*e);
    for (const auto& layer : plan_.layers) {
      for (const auto& node : layer.nodes) node_label(node);
    }
    std::size_t shown = 0;
    for (const auto* e : edges) {
      if (!e->label_text) continue;
      if (style_.hide_unit_weights && e->weight == 1.0) continue;
      weight_label(*e, shown++);
    }
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  Point position(std::size_t layer, std::size_t row) const {
    return {kMargin + kLabelRoom + style_.layer_spacing * static_cast<double>(layer),
            kMargin + kFontSize + style_.node_spacing * static_cast<double>(row)};
  }

  bool is_last(std::size_t layer) const { return layer + 1 == plan_.layers.size(); }

  std::vector<const PlacedEdge*> sorted_edges() const {
    std::vector<const PlacedEdge*> edges;
    for (const auto& e : plan_.edges) edges.push_back(&e);
    std::stable_sort(edges.begin(), edges.end(), [](const PlacedEdge* a, const PlacedEdge* b) {
      return std::tie(a->from_layer, a->from, a->to) < std::tie(b->from_layer, b->from, b->to);
    });
    return edges;
  }

  void node_shape(const PlacedNode& node) {
    const auto p = position(node.layer, node.row);
    out_ << "<circle class=\"node " << node.style_class << "\" cx=\"" << num(p.x) << "\" cy=\""
         << num(p.y) << "\" r=\"" << num(kNodeRadius) << "\" fill=\"#1f3b5c\"";
    if (node.layer > 0 && style_.shade_by_in_degree) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.2f", target_opacity(node.in_degree));
      out_ << " fill-opacity=\"" << buf << '"';
    }
    out_ << "/>\n";
  }

  void edge_line(const PlacedEdge& e) {
    const auto a = position(e.from_layer, e.from_row);
    const auto b = position(e.from_layer + 1, e.to_row);
    out_ << "<line class=\"edge\" x1=\"" << num(a.x + kNodeRadius) << "\" y1=\"" << num(a.y)
         << "\" x2=\"" << num(b.x - kNodeRadius) << "\" y2=\"" << num(b.y)
         << "\" stroke=\"#555555\" stroke-width=\"1.2\"";
    if (e.line_style == LineStyle::Dashed) out_ << " stroke-dasharray=\"5,3\"";
    out_ << "/>\n";
  }

  void node_label(const PlacedNode& node) {
    const auto p = position(node.layer, node.row);
    const bool first = node.layer == 0;
    const bool last = is_last(node.layer);
    double x = p.x;
    double y = p.y + kFontSize / 3;
    const char* anchor = "middle";
    if (first) {
      x -= 2 * kNodeRadius;
      anchor = "end";
    } else if (last) {
      x += 2 * kNodeRadius;
      anchor = "start";
    } else {
      y = p.y - 2 * kNodeRadius;
    }
    out_ << "<text class=\"label " << node.style_class << "\" x=\"" << num(x) << "\" y=\"" << num(y)
         << "\" text-anchor=\"" << anchor << '"';
    if (!last) {
      // redistributed sources in italics, unmodified ones in bold
      out_ << (node.out_degree > 1 ? " font-style=\"italic\"" : " font-weight=\"bold\"");
    }
    out_ << '>';
    const auto& text = node.label.str();
    if (const auto shortened = truncated(text)) {
      out_ << "<title>" << xml_escape(text) << "</title>" << xml_escape(*shortened);
    } else {
      out_ << xml_escape(text);
    }
    out_ << "</text>\n";
  }

  void weight_label(const PlacedEdge& e, std::size_t index) {
    const auto a = position(e.from_layer, e.from_row);
    const auto b = position(e.from_layer + 1, e.to_row);
    // alternate above/below the midpoint to reduce collisions
    const double offset = index % 2 == 0 ? -3.0 : kWeightFontSize;
    out_ << "<text class=\"weight\" x=\"" << num((a.x + b.x) / 2) << "\" y=\""
         << num((a.y + b.y) / 2 + offset) << "\" text-anchor=\"middle\" font-size=\""
         << num(kWeightFontSize) << "\" fill=\"#333333\">" << xml_escape(*e.label_text)
         << "</text>\n";
  }

  const LayoutPlan& plan_;
  const RenderStyle& style_;
  std::ostringstream out_;
};

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

double target_opacity(std::size_t in_degree) {
  if (in_degree == 0) return 0.35;
  return std::min(1.0, 0.35 + 0.25 * static_cast<double>(in_degree - 1));
}

std::string render_svg(const LayoutPlan& plan, const Crossmap& c, const RenderStyle& style) {
  check_style(style);
  check_plan(plan, std::span<const Crossmap>(&c, 1));
  return SvgWriter(plan, style).render();
}

std::string render_svg(const LayoutPlan& plan, const MultiStepChain& chain, const RenderStyle& style) {
  check_style(style);
  check_plan(plan, chain.steps());
  return SvgWriter(plan, style).render();
}

std::string render_dot(const Crossmap& c) {
  const auto plan = layout_bipartite(c, Ordering::SplitsFirst);
  const auto id = [](char prefix, std::size_t row) { return prefix + std::to_string(row); };

  std::map<CategoryLabel, std::size_t> source_row;
  std::map<CategoryLabel, std::size_t> target_row;
  for (const auto& n : plan.layers[0].nodes) source_row.emplace(n.label, n.row);
  for (const auto& n : plan.layers[1].nodes) target_row.emplace(n.label, n.row);

  std::ostringstream out;
  out << "digraph crossmap {\n"
      << "  label=" << dot_quote(c.source_taxonomy() + " -> " + c.target_taxonomy()) << ";\n"
      << "  rankdir=LR;\n"
      << "  node [shape=plaintext, fontname=\"Helvetica\"];\n";

  out << "  subgraph source_layer {\n    rank=same;\n";
  for (const auto& n : plan.layers[0].nodes) {
    out << "    " << id('s', n.row) << " [label=" << dot_quote(n.label.str())
        << ", fontname=" << (n.out_degree > 1 ? "\"Helvetica-Oblique\"" : "\"Helvetica-Bold\"")
        << "];\n";
  }
  out << "  }\n";

  out << "  subgraph target_layer {\n    rank=same;\n";
  for (const auto& n : plan.layers[1].nodes) {
    char alpha[8];
    std::snprintf(alpha, sizeof alpha, "%02x",
                  static_cast<unsigned>(std::lround(target_opacity(n.in_degree) * 255)));
    out << "    " << id('t', n.row) << " [label=" << dot_quote(n.label.str())
        << ", shape=box, style=filled, fillcolor=\"#1f3b5c" << alpha << "\"];\n";
  }
  out << "  }\n";

  std::vector<const Link*> links;
  for (const auto& link : c.links()) links.push_back(&link);
  std::sort(links.begin(), links.end(), [](const Link* a, const Link* b) {
    return std::tie(a->from, a->to) < std::tie(b->from, b->to);
  });
  for (const auto* link : links) {
    out << "  " << id('s', source_row.at(link->from)) << " -> " << id('t', target_row.at(link->to))
        << " [label=" << dot_quote(io::format_weight(link->weight));
    if (c.out_degree(link->from) > 1) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace xmap::viz
