#include "orbitprimes/classifier.hpp"

#include <sstream>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/orbit.hpp"

namespace orbitprimes {

namespace {

std::string prefix_string(const std::vector<Int>& prefix) {
  std::ostringstream out;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out << " -> ";
    out << prefix[i].get_str();
  }
  return out.str();
}

// Orbit of 0, indices 0..count-1, by direct evaluation. Terms stay tiny
// for any preperiodic orbit, and callers only look at a short prefix.
std::vector<Int> zero_prefix(const IntPoly& poly, std::size_t count) {
  std::vector<Int> prefix;
  prefix.reserve(count);
  Int x = 0;
  for (std::size_t i = 0; i < count; ++i) {
    prefix.push_back(x);
    x = poly.eval(x);
  }
  return prefix;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::FixedAfterOne: return "FixedAfterOne";
    case Family::SignFlipThenFixed: return "SignFlipThenFixed";
    case Family::TwoCycleAfterOne: return "TwoCycleAfterOne";
    case Family::TwoCycleAfterTwo: return "TwoCycleAfterTwo";
  }
  return "Unknown";
}

ZeroOrbitClass classify_zero_orbit(const IntPoly& poly) {
  if (poly.degree() < 1)
    throw DomainError(Errc::degree_too_small, "classification needs degree >= 1");

  // Terms 0..4 decide everything: a repeat shows by index 4 or never,
  // and a repeating orbit's entire future is determined by x1..x4.
  std::vector<Int> p = zero_prefix(poly, 5);
  const Int& x1 = p[1];
  const Int& x2 = p[2];
  const Int& x3 = p[3];
  const Int& x4 = p[4];

  ZeroOrbitClass out;
  if (x1 == 0) {
    out.kind = ZeroOrbitClass::Kind::Periodic;
    out.period = 1;
    return out;
  }
  if (x2 == 0) {
    out.kind = ZeroOrbitClass::Kind::Periodic;
    out.period = 2;
    return out;
  }
  if (x2 != x4) {
    out.kind = ZeroOrbitClass::Kind::Wandering;
    return out;
  }

  out.kind = ZeroOrbitClass::Kind::StrictlyPreperiodic;
  // x2 == x4 != 0: eventually periodic, 0 off the cycle. Match the four
  // families; parameters are canonicalized so the mirrored member of a
  // family reports the same a with the flag set.
  if (x1 == x2) {
    out.family = Family::FixedAfterOne;
    out.mirrored = x1 < 0;
    out.a = abs(x1);
    return out;
  }
  if (x2 == -x1 && x3 == x2 && (abs(x1) == 1 || abs(x1) == 2)) {
    out.family = Family::SignFlipThenFixed;
    out.mirrored = x1 > 0;
    out.a = abs(x1);
    return out;
  }
  if (x1 == -1 && x3 == -1 && x2 != 0 && x2 != -1) {
    out.family = Family::TwoCycleAfterOne;
    out.mirrored = false;
    out.a = x2;
    return out;
  }
  if (x1 == 1 && x3 == 1 && x2 != 0 && x2 != 1) {
    out.family = Family::TwoCycleAfterOne;
    out.mirrored = true;
    out.a = -x2;
    return out;
  }
  if (x1 == 1 && x2 == 2 && x3 == -1) {
    out.family = Family::TwoCycleAfterTwo;
    out.mirrored = false;
    out.a = 2;
    return out;
  }
  if (x1 == -1 && x2 == -2 && x3 == 1) {
    out.family = Family::TwoCycleAfterTwo;
    out.mirrored = true;
    out.a = 2;
    return out;
  }
  throw DomainError(Errc::classification_failure,
                    "strictly preperiodic zero orbit matches no family: " +
                        prefix_string(p) + " under " + poly.to_string());
}

IntPoly family_generator(Family family, const Int& a, const IntPoly& g,
                         bool mirrored) {
  IntPoly x = IntPoly::identity();
  IntPoly base;
  IntPoly locus;
  switch (family) {
    case Family::FixedAfterOne:
      if (a <= 0)
        throw DomainError(Errc::inadmissible_parameters,
                          "FixedAfterOne needs a > 0 (use mirrored for the negative branch)");
      if (g.is_zero())
        throw DomainError(Errc::inadmissible_parameters,
                          "FixedAfterOne with g = 0 is the constant map");
      base = IntPoly::constant(a);
      locus = x * (x - IntPoly::constant(a));
      break;
    case Family::SignFlipThenFixed: {
      if (a != 1 && a != 2)
        throw DomainError(Errc::inadmissible_parameters,
                          "SignFlipThenFixed needs a in {1, 2}");
      Int lead = 2 / a;
      base = IntPoly({-a, 0, lead});
      locus = x * (x - IntPoly::constant(a)) * (x + IntPoly::constant(a));
      break;
    }
    case Family::TwoCycleAfterOne:
      if (a == 0 || a == -1)
        throw DomainError(Errc::inadmissible_parameters,
                          "TwoCycleAfterOne needs a outside {0, -1}");
      base = IntPoly({-1, -a, 1});
      locus = x * (x + IntPoly::constant(1)) * (x - IntPoly::constant(a));
      break;
    case Family::TwoCycleAfterTwo:
      if (a != 2)
        throw DomainError(Errc::inadmissible_parameters, "TwoCycleAfterTwo needs a = 2");
      base = IntPoly({1, 1, 1, -1});
      locus = x * (x - IntPoly::constant(1)) * (x - IntPoly::constant(2)) *
              (x + IntPoly::constant(1));
      break;
  }
  IntPoly result = base + locus * g;
  if (mirrored) result = result.sign_conjugate();

  ZeroOrbitClass check = classify_zero_orbit(result);
  if (check.kind != ZeroOrbitClass::Kind::StrictlyPreperiodic ||
      check.family != family || check.a != a || check.mirrored != mirrored)
    throw DomainError(Errc::classification_failure,
                      "generated member fails to classify back: " + result.to_string());
  return result;
}

std::vector<Int> family_orbit_prefix(Family family, const Int& a, bool mirrored,
                                     std::size_t count) {
  std::vector<Int> prefix;
  prefix.reserve(count);
  auto cycle_from = [&](std::size_t preperiod, const std::vector<Int>& head,
                        const std::vector<Int>& cycle) {
    for (std::size_t i = 0; i < count; ++i) {
      if (i < preperiod)
        prefix.push_back(head[i]);
      else
        prefix.push_back(cycle[(i - preperiod) % cycle.size()]);
    }
  };
  switch (family) {
    case Family::FixedAfterOne:
      cycle_from(1, {0}, {a});
      break;
    case Family::SignFlipThenFixed:
      cycle_from(2, {0, -a}, {a});
      break;
    case Family::TwoCycleAfterOne:
      cycle_from(1, {0}, {-1, a});
      break;
    case Family::TwoCycleAfterTwo:
      cycle_from(2, {0, 1}, {2, -1});
      break;
  }
  if (mirrored)
    for (Int& v : prefix) v = -v;
  return prefix;
}

ClassificationReport verify_classification_exhaustive(unsigned coeff_bound,
                                                      unsigned degree_bound) {
  if (degree_bound < 1 || coeff_bound < 1)
    throw DomainError(Errc::inadmissible_parameters,
                      "need coeff_bound >= 1 and degree_bound >= 1");

  ClassificationReport report;
  report.coeff_bound = coeff_bound;
  report.degree_bound = degree_bound;

  long cb = coeff_bound;
  std::vector<Int> coeffs;
  for (unsigned deg = 1; deg <= degree_bound; ++deg) {
    coeffs.assign(deg + 1, Int(-cb));
    coeffs[deg] = -cb;
    while (true) {
      if (coeffs[deg] != 0) {
        IntPoly poly(coeffs);
        ++report.total_polys;
        try {
          ZeroOrbitClass cls = classify_zero_orbit(poly);
          switch (cls.kind) {
            case ZeroOrbitClass::Kind::Wandering:
              ++report.wandering;
              break;
            case ZeroOrbitClass::Kind::Periodic:
              ++report.periodic;
              break;
            case ZeroOrbitClass::Kind::StrictlyPreperiodic: {
              ++report.strictly_preperiodic;
              ++report.family_counts[static_cast<int>(cls.family)][cls.mirrored ? 1 : 0];
              std::vector<Int> expected =
                  family_orbit_prefix(cls.family, cls.a, cls.mirrored, 7);
              if (expected != zero_prefix(poly, 7))
                report.violations.push_back({poly, zero_prefix(poly, 7),
                                             "classified pattern does not reproduce the orbit"});
              break;
            }
          }
        } catch (const DomainError& e) {
          report.violations.push_back({poly, zero_prefix(poly, 7), e.what()});
        }
      }
      // odometer over coefficient vectors
      std::size_t pos = 0;
      while (pos <= deg) {
        if (coeffs[pos] < cb) {
          ++coeffs[pos];
          break;
        }
        coeffs[pos] = -cb;
        ++pos;
      }
      if (pos > deg) break;
    }
  }
  return report;
}

}  // namespace orbitprimes
