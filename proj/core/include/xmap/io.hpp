#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xmap/crossmap.hpp"
#include "xmap/transform.hpp"

namespace xmap::io {

// Text formats. All readers accept "\n" or "\r\n" line endings and ignore
// blank lines; all writers emit "\n". Parse errors carry 1-based line numbers.
//
//   edge list   from,to,weight
//   series      key,value
//   panel       unit,key,value
//   wide table  any header; one code per cell (crosswalk import)

/// Parses an edge list and validates it with build_crossmap. Validation
/// errors are re-thrown with the line of the offending link attached.
Crossmap read_edge_list(std::string_view text, std::string source_taxonomy,
                        std::string target_taxonomy);

/// Rows in stored link order; weights via format_weight.
std::string write_edge_list(const Crossmap& c);

/// Up to 9 fractional digits with trailing zeros trimmed ("0.5", "1").
std::string format_weight(double w);

/// Shortest decimal text that parses back to the same double ("12", "0.1").
std::string format_value(double v);

struct WideTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // source line of each row
};

WideTable read_wide_table(std::string_view text);

/// One unit-weight link per row, from `from_col` to `to_col`. Taxonomy
/// names default to the column names. Extra columns are ignored.
Crossmap import_crosswalk(const WideTable& table, const std::string& from_col,
                          const std::string& to_col, std::string source_taxonomy = {},
                          std::string target_taxonomy = {});

IndexedSeries read_series(std::string_view text, std::string taxonomy);
/// Rows in key order, values via format_value.
std::string write_series(const IndexedSeries& s);

HarmonisedPanel read_panel(std::string_view text, std::string target_taxonomy);
std::string write_panel(const HarmonisedPanel& p);

/// Compact JSON object, keys in fixed order: n_sources, n_targets, n_links,
/// n_splits, n_aggregates, max_in_degree, is_crosswalk, most_synthetic_targets.
std::string write_summary_json(const CrossmapSummary& summary);
CrossmapSummary read_summary_json(std::string_view text);

}  // namespace xmap::io
