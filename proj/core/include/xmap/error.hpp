#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace xmap {

enum class ErrorKind {
  InvalidLabel,
  EmptyCrossmap,
  DuplicateLink,
  WeightOutOfRange,
  WeightSumViolation,
  UnknownCategory,
  TaxonomyMismatch,
  MissingSourceMapping,
  UncoveredIntermediate,
  NotBijective,
  EmptyChain,
  TargetTaxonomyMismatch,
  DuplicateUnit,
  ParseError,
  NonFiniteValue,
  DuplicateKey,
  MissingColumn,
  DuplicateSourceCode,
  EmptyCell,
  PlanMismatch,
  InvalidStyle,
  Io,
};

const char* to_string(ErrorKind kind);

/// Structured payload of an Error. Only the fields relevant to the kind are set.
struct ErrorInfo {
  ErrorKind kind = ErrorKind::ParseError;
  std::string label;   // offending category / column / unit-less subject
  std::string detail;  // free-form reason
  std::optional<double> value;
  std::optional<std::size_t> line;        // 1-based document line
  std::optional<std::size_t> link_index;  // 0-based position in a link list
  std::string unit;                       // harmonisation unit, if any
};

/// The single exception type thrown by the library. `kind()` is stable and
/// meant for dispatch; `what()` is a human-readable message naming the
/// offending category so the input can be repaired.
class Error : public std::runtime_error {
 public:
  explicit Error(ErrorInfo info);

  ErrorKind kind() const noexcept { return info_.kind; }
  const ErrorInfo& info() const noexcept { return info_; }
  const std::string& label() const noexcept { return info_.label; }
  std::optional<std::size_t> line() const noexcept { return info_.line; }

  /// Copy of this error with a document line attached.
  Error with_line(std::size_t line) const;
  /// Copy of this error tagged with a harmonisation unit.
  Error with_unit(std::string unit) const;

 private:
  ErrorInfo info_;
};

namespace errors {

Error invalid_label(std::string text, std::string reason);
Error empty_crossmap();
Error duplicate_link(std::string from, std::string to, std::size_t index);
Error weight_out_of_range(std::string from, std::string to, double w, std::size_t index);
Error weight_sum_violation(std::string from, double sum, std::size_t index);
Error unknown_category(std::string label);
Error taxonomy_mismatch(std::string expected, std::string actual);
Error missing_source_mapping(std::string label);
Error uncovered_intermediate(std::string label);
Error not_bijective(std::string label, std::string reason);
Error empty_chain();
Error target_taxonomy_mismatch(std::string unit, std::string expected, std::string actual);
Error duplicate_unit(std::string unit);
Error parse_error(std::size_t line, std::string reason);
Error non_finite_value(std::size_t line, std::string label);
Error duplicate_key(std::string label, std::optional<std::size_t> line = std::nullopt);
Error missing_column(std::string name);
Error duplicate_source_code(std::string label, std::size_t line);
Error empty_cell(std::size_t line, std::string column);
Error plan_mismatch(std::string reason);
Error invalid_style(std::string reason);
Error io(std::string path, std::string reason);

}  // namespace errors
}  // namespace xmap
