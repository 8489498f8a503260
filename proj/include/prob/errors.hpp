#pragma once

#include <stdexcept>
#include <string>

namespace prob {

// Every failure the engine can signal. Construction errors and precondition
// violations all surface as Error with one of these codes; the CLI maps any
// Error to exit status 2.
enum class errc {
  duplicate_label,
  non_positive_mass,
  mass_not_normalized,
  empty_support,
  length_mismatch,
  bad_label,
  bad_rational,
  division_by_zero,
  domain_mismatch,
  empty_sequence,
  not_surjective,
  not_measure_preserving,
  unknown_label,
  scheme_mismatch,
  incomplete_map,
  invalid_partition,
  unknown_block,
  not_a_refinement,
  empty_conditioning_event,
  incomplete_table,
  unequal_block_sizes,
  non_uniform_scheme,
  degenerate_regressor,
  non_positive_epsilon,
  correlated_inputs,
  variance_bound_violated,
  base_mismatch,
  composition_mismatch,
  shape_mismatch,
  marginal_mismatch,
  too_short,
  syntax_error,
  semantic_error,
  unknown_command,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::non_positive_mass: return "NonPositiveMass";
    case errc::mass_not_normalized: return "MassNotNormalized";
    case errc::empty_support: return "EmptySupport";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::bad_label: return "BadLabel";
    case errc::bad_rational: return "BadRational";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::empty_sequence: return "EmptySequence";
    case errc::not_surjective: return "NotSurjective";
    case errc::not_measure_preserving: return "NotMeasurePreserving";
    case errc::unknown_label: return "UnknownLabel";
    case errc::scheme_mismatch: return "SchemeMismatch";
    case errc::incomplete_map: return "IncompleteMap";
    case errc::invalid_partition: return "InvalidPartition";
    case errc::unknown_block: return "UnknownBlock";
    case errc::not_a_refinement: return "NotARefinement";
    case errc::empty_conditioning_event: return "EmptyConditioningEvent";
    case errc::incomplete_table: return "IncompleteTable";
    case errc::unequal_block_sizes: return "UnequalBlockSizes";
    case errc::non_uniform_scheme: return "NonUniformScheme";
    case errc::degenerate_regressor: return "DegenerateRegressor";
    case errc::non_positive_epsilon: return "NonPositiveEpsilon";
    case errc::correlated_inputs: return "CorrelatedInputs";
    case errc::variance_bound_violated: return "VarianceBoundViolated";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::composition_mismatch: return "CompositionMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::marginal_mismatch: return "MarginalMismatch";
    case errc::too_short: return "TooShort";
    case errc::syntax_error: return "SyntaxError";
    case errc::semantic_error: return "SemanticError";
    case errc::unknown_command: return "UnknownCommand";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace prob
