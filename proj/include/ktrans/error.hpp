#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ktrans {

enum class Errc {
  dependent_input,
  dimension_mismatch,
  slice_degenerate,
  numerical_failure,
  iteration_limit,
  invalid_input,
  empty_support,
  invalid_range,
  not_a_dependency,
  field_mismatch,
  not_a_transversal,
  not_disjoint,
  too_large,
  all_projections_contain_origin,
  generation_timeout,
  parse_error,
  invariant_violation,
  unsupported_dimension,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::dependent_input: return "DependentInput";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::slice_degenerate: return "SliceDegenerate";
    case Errc::numerical_failure: return "NumericalFailure";
    case Errc::iteration_limit: return "IterationLimit";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::empty_support: return "EmptySupport";
    case Errc::invalid_range: return "InvalidRange";
    case Errc::not_a_dependency: return "NotADependency";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::not_a_transversal: return "NotATransversal";
    case Errc::not_disjoint: return "NotDisjoint";
    case Errc::too_large: return "TooLarge";
    case Errc::all_projections_contain_origin: return "AllProjectionsContainOrigin";
    case Errc::generation_timeout: return "GenerationTimeout";
    case Errc::parse_error: return "ParseError";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells the failure apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ktrans
