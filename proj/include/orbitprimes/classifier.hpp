#ifndef ORBITPRIMES_CLASSIFIER_HPP
#define ORBITPRIMES_CLASSIFIER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

// The four shapes a strictly preperiodic zero orbit can take, up to the
// sign-conjugation mirror. Patterns, unmirrored (mirrored = negate all):
//   FixedAfterOne:     0 -> a -> a              (a > 0)
//   SignFlipThenFixed: 0 -> -a -> a -> a        (a in {1, 2})
//   TwoCycleAfterOne:  0 -> -1 -> a -> -1       (a != 0, -1)
//   TwoCycleAfterTwo:  0 -> 1 -> 2 -> -1 -> 2   (a = 2)
enum class Family {
  FixedAfterOne,
  SignFlipThenFixed,
  TwoCycleAfterOne,
  TwoCycleAfterTwo,
};

const char* family_name(Family f);

struct ZeroOrbitClass {
  enum class Kind { StrictlyPreperiodic, Periodic, Wandering };

  Kind kind;
  // Valid when kind == StrictlyPreperiodic:
  Family family = Family::FixedAfterOne;
  Int a = 0;
  bool mirrored = false;
  // Valid when kind == Periodic:
  unsigned period = 0;

  bool operator==(const ZeroOrbitClass&) const = default;
};

// Classifies the orbit of 0 under poly. Strictly preperiodic orbits are
// matched against the four families above; a strictly preperiodic orbit
// matching none of them throws DomainError(ClassificationFailure) with
// the observed orbit prefix in the message, since it would contradict
// the exhaustive case analysis this module encodes.
ZeroOrbitClass classify_zero_orbit(const IntPoly& poly);

// Constructs a member of the given family: the minimal representative
// plus the family's vanishing-locus multiple of g. Requirements:
//   FixedAfterOne:     a > 0, g != 0        -> a + x(x-a)g
//   SignFlipThenFixed: a in {1, 2}          -> (2/a)x^2 - a + x(x-a)(x+a)g
//   TwoCycleAfterOne:  a != 0, a != -1      -> x^2 - ax - 1 + x(x+1)(x-a)g
//   TwoCycleAfterTwo:  a = 2                -> 1 + x + x^2 - x^3 + x(x-1)(x-2)(x+1)g
// mirrored applies sign conjugation to the result. Violations throw
// DomainError(InadmissibleParameters).
IntPoly family_generator(Family family, const Int& a, const IntPoly& g,
                         bool mirrored = false);

// Expected orbit prefix (indices 0..count-1) for a classified family.
std::vector<Int> family_orbit_prefix(Family family, const Int& a, bool mirrored,
                                     std::size_t count);

struct ClassificationViolation {
  IntPoly poly;
  std::vector<Int> prefix;  // observed orbit of 0, indices 0..6
  std::string reason;
};

struct ClassificationReport {
  unsigned coeff_bound = 0;
  unsigned degree_bound = 0;
  std::size_t total_polys = 0;
  std::size_t wandering = 0;
  std::size_t periodic = 0;
  std::size_t strictly_preperiodic = 0;
  // Counts per family, unmirrored/mirrored.
  std::size_t family_counts[4][2] = {};
  std::vector<ClassificationViolation> violations;
};

// Enumerates every poly with 1 <= degree <= degree_bound and
// |coeff| <= coeff_bound, classifies each zero orbit, and re-derives the
// orbit prefix from the classification to confirm it reproduces the
// observed terms. Mismatches are collected, not thrown.
ClassificationReport verify_classification_exhaustive(unsigned coeff_bound,
                                                      unsigned degree_bound);

}  // namespace orbitprimes

#endif
