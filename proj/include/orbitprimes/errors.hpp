#ifndef ORBITPRIMES_ERRORS_HPP
#define ORBITPRIMES_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace orbitprimes {

// Failure codes surfaced by library operations and mapped to CLI error JSON.
enum class Errc {
  cap_exceeded,
  degree_zero,
  degree_too_small,
  not_preperiodic,
  not_wandering,
  not_period2,
  zero_at_origin,
  nonzero_constant_term,
  constant_cofactor,
  involution_excluded,
  inadmissible_parameters,
  classification_failure,
  negative_leading,
  no_bracketing_index,
  interval_too_wide,
  horizon_violation,
  horizon_too_small,
  degenerate_linear_solve,
  empty_interval,
  not_prime,
  parse_error,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::degree_zero: return "DegreeZero";
    case Errc::degree_too_small: return "DegreeTooSmall";
    case Errc::not_preperiodic: return "NotPreperiodic";
    case Errc::not_wandering: return "NotWandering";
    case Errc::not_period2: return "NotPeriod2";
    case Errc::zero_at_origin: return "ZeroAtOrigin";
    case Errc::nonzero_constant_term: return "NonzeroConstantTerm";
    case Errc::constant_cofactor: return "ConstantCofactor";
    case Errc::involution_excluded: return "InvolutionExcluded";
    case Errc::inadmissible_parameters: return "InadmissibleParameters";
    case Errc::classification_failure: return "ClassificationFailure";
    case Errc::negative_leading: return "NegativeLeading";
    case Errc::no_bracketing_index: return "NoBracketingIndex";
    case Errc::interval_too_wide: return "IntervalTooWide";
    case Errc::horizon_violation: return "HorizonViolation";
    case Errc::horizon_too_small: return "HorizonTooSmall";
    case Errc::degenerate_linear_solve: return "DegenerateLinearSolve";
    case Errc::empty_interval: return "EmptyInterval";
    case Errc::not_prime: return "NotPrime";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

// Domain error with a stable code and an optional index payload
// (e.g. CapExceeded reports the first offending orbit index).
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  DomainError(Errc code, const std::string& message, long long index)
      : std::runtime_error(message), code_(code), index_(index) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }
  std::optional<long long> index() const { return index_; }

 private:
  Errc code_;
  std::optional<long long> index_;
};

}  // namespace orbitprimes

#endif
