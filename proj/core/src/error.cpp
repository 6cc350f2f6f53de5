#include "xmap/error.hpp"

#include <sstream>
#include <utility>

namespace xmap {
namespace {

std::string render(const ErrorInfo& info) {
  std::ostringstream out;
  out.precision(12);
  if (!info.unit.empty()) out << "unit '" << info.unit << "': ";
  if (info.line) out << "line " << *info.line << ": ";
  out << to_string(info.kind);
  switch (info.kind) {
    case ErrorKind::DuplicateLink:
      out << " (" << info.label << " -> " << info.detail << ")";
      break;
    case ErrorKind::WeightOutOfRange:
      out << " (" << info.label << " -> " << info.detail << ", weight " << info.value.value_or(0.0)
          << "; must satisfy 0 < w <= 1)";
      break;
    case ErrorKind::WeightSumViolation:
      out << " (source " << info.label << " outgoing weights sum to " << info.value.value_or(0.0)
          << ", expected 1)";
      break;
    default:
      if (!info.label.empty()) out << " (" << info.label << ")";
      if (!info.detail.empty()) out << ": " << info.detail;
      break;
  }
  return out.str();
}

ErrorInfo make(ErrorKind kind, std::string label = {}, std::string detail = {}) {
  ErrorInfo info;
  info.kind = kind;
  info.label = std::move(label);
  info.detail = std::move(detail);
  return info;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::EmptyCrossmap: return "EmptyCrossmap";
    case ErrorKind::DuplicateLink: return "DuplicateLink";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::WeightSumViolation: return "WeightSumViolation";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::TaxonomyMismatch: return "TaxonomyMismatch";
    case ErrorKind::MissingSourceMapping: return "MissingSourceMapping";
    case ErrorKind::UncoveredIntermediate: return "UncoveredIntermediate";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::EmptyChain: return "EmptyChain";
    case ErrorKind::TargetTaxonomyMismatch: return "TargetTaxonomyMismatch";
    case ErrorKind::DuplicateUnit: return "DuplicateUnit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::DuplicateKey: return "DuplicateKey";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::DuplicateSourceCode: return "DuplicateSourceCode";
    case ErrorKind::EmptyCell: return "EmptyCell";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::InvalidStyle: return "InvalidStyle";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorInfo info) : std::runtime_error(render(info)), info_(std::move(info)) {}

Error Error::with_line(std::size_t line) const {
  ErrorInfo copy = info_;
  copy.line = line;
  return Error(std::move(copy));
}

Error Error::with_unit(std::string unit) const {
  ErrorInfo copy = info_;
  copy.unit = std::move(unit);
  return Error(std::move(copy));
}

namespace errors {

Error invalid_label(std::string text, std::string reason) {
  return Error(make(ErrorKind::InvalidLabel, std::move(text), std::move(reason)));
}

Error empty_crossmap() {
  return Error(make(ErrorKind::EmptyCrossmap, {}, "a crossmap needs at least one link"));
}

Error duplicate_link(std::string from, std::string to, std::size_t index) {
  auto info = make(ErrorKind::DuplicateLink, std::move(from), std::move(to));
  info.link_index = index;
  return Error(std::move(info));
}

Error weight_out_of_range(std::string from, std::string to, double w, std::size_t index) {
  auto info = make(ErrorKind::WeightOutOfRange, std::move(from), std::move(to));
  info.value = w;
  info.link_index = index;
  return Error(std::move(info));
}

Error weight_sum_violation(std::string from, double sum, std::size_t index) {
  auto info = make(ErrorKind::WeightSumViolation, std::move(from));
  info.value = sum;
  info.link_index = index;
  return Error(std::move(info));
}

Error unknown_category(std::string label) {
  return Error(make(ErrorKind::UnknownCategory, std::move(label)));
}

Error taxonomy_mismatch(std::string expected, std::string actual) {
  return Error(make(ErrorKind::TaxonomyMismatch, {},
                    "expected taxonomy '" + expected + "', got '" + actual + "'"));
}

Error missing_source_mapping(std::string label) {
  return Error(make(ErrorKind::MissingSourceMapping, std::move(label),
                    "data category has no outgoing link; its mass would be lost"));
}

Error uncovered_intermediate(std::string label) {
  return Error(make(ErrorKind::UncoveredIntermediate, std::move(label),
                    "intermediate category is not a source of the next crossmap"));
}

Error not_bijective(std::string label, std::string reason) {
  return Error(make(ErrorKind::NotBijective, std::move(label), std::move(reason)));
}

Error empty_chain() { return Error(make(ErrorKind::EmptyChain, {}, "a chain needs at least one step")); }

Error target_taxonomy_mismatch(std::string unit, std::string expected, std::string actual) {
  auto info = make(ErrorKind::TargetTaxonomyMismatch, {},
                   "expected target taxonomy '" + expected + "', got '" + actual + "'");
  info.unit = std::move(unit);
  return Error(std::move(info));
}

Error duplicate_unit(std::string unit) {
  auto info = make(ErrorKind::DuplicateUnit);
  info.unit = std::move(unit);
  return Error(std::move(info));
}

Error parse_error(std::size_t line, std::string reason) {
  auto info = make(ErrorKind::ParseError, {}, std::move(reason));
  info.line = line;
  return Error(std::move(info));
}

Error non_finite_value(std::size_t line, std::string label) {
  auto info = make(ErrorKind::NonFiniteValue, std::move(label));
  info.line = line;
  return Error(std::move(info));
}

Error duplicate_key(std::string label, std::optional<std::size_t> line) {
  auto info = make(ErrorKind::DuplicateKey, std::move(label));
  info.line = line;
  return Error(std::move(info));
}

Error missing_column(std::string name) { return Error(make(ErrorKind::MissingColumn, std::move(name))); }

Error duplicate_source_code(std::string label, std::size_t line) {
  auto info = make(ErrorKind::DuplicateSourceCode, std::move(label));
  info.line = line;
  return Error(std::move(info));
}

Error empty_cell(std::size_t line, std::string column) {
  auto info = make(ErrorKind::EmptyCell, std::move(column));
  info.line = line;
  return Error(std::move(info));
}

Error plan_mismatch(std::string reason) { return Error(make(ErrorKind::PlanMismatch, {}, std::move(reason))); }

Error invalid_style(std::string reason) { return Error(make(ErrorKind::InvalidStyle, {}, std::move(reason))); }

Error io(std::string path, std::string reason) {
  return Error(make(ErrorKind::Io, std::move(path), std::move(reason)));
}

}  // namespace errors
}  // namespace xmap
