#include "orbitprimes/coprime.hpp"

#include <algorithm>
#include <cstdlib>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/orbit.hpp"

namespace orbitprimes {

namespace {

// numerator / gcd(|numerator|, |divisor|), keeping the numerator's sign.
Int strip_common(const Int& numerator, const Int& divisor) {
  Int g = gcd(numerator, divisor);  // mpz gcd is nonnegative
  return numerator / g;
}

void record_units(CoprimeSeq& seq) {
  for (std::size_t i = 0; i < seq.terms.size(); ++i)
    if (abs(seq.terms[i]) == 1) seq.unit_indices.push_back(seq.start_index + i);
}

}  // namespace

const char* coprime_rule_name(CoprimeRule rule) {
  switch (rule) {
    case CoprimeRule::Preperiodic: return "preperiodic";
    case CoprimeRule::Period1: return "period1";
    case CoprimeRule::Period2: return "period2";
  }
  return "unknown";
}

Int ell(const IntPoly& poly) {
  Int f0 = poly.eval(Int(0));
  if (f0 == 0)
    throw DomainError(Errc::zero_at_origin, "ell undefined: f(0) = 0");
  Int f20 = poly.eval(f0);
  if (f20 == 0)
    throw DomainError(Errc::zero_at_origin, "ell undefined: f(f(0)) = 0");
  return lcm(f0, f20);  // mpz lcm is nonnegative
}

CoprimeSeq coprime_preperiodic(const IntPoly& poly, const Int& start,
                               std::size_t count) {
  if (!is_zero_strictly_preperiodic(poly))
    throw DomainError(Errc::not_preperiodic,
                      "zero orbit of " + poly.to_string() + " is not strictly preperiodic");
  if (!is_wandering(poly, start))
    throw DomainError(Errc::not_wandering, "start " + start.get_str() + " is not wandering");

  CoprimeSeq seq;
  seq.rule = CoprimeRule::Preperiodic;
  seq.poly = poly;
  seq.start = start;
  seq.start_index = 0;
  seq.ell = ell(poly);

  Orbit orb(poly, start);
  std::span<const Int> x = orb.extend(count == 0 ? 0 : count - 1);
  seq.terms.reserve(count);
  for (std::size_t n = 0; n < count; ++n)
    seq.terms.push_back(strip_common(x[n], seq.ell));
  record_units(seq);
  return seq;
}

std::pair<unsigned, IntPoly> decompose_xr(const IntPoly& poly) {
  if (poly.is_zero())
    throw DomainError(Errc::inadmissible_parameters, "cannot decompose the zero polynomial");
  if (poly.coeff(0) != 0)
    throw DomainError(Errc::nonzero_constant_term,
                      poly.to_string() + " has nonzero constant term");
  std::size_t r = 0;
  while (poly.coeff(r) == 0) ++r;
  std::vector<Int> rest(poly.coeffs().begin() + static_cast<std::ptrdiff_t>(r),
                        poly.coeffs().end());
  return {static_cast<unsigned>(r), IntPoly(std::move(rest))};
}

CoprimeSeq coprime_period1(const IntPoly& poly, const Int& start,
                           std::size_t count) {
  auto [r, g] = decompose_xr(poly);  // checks f(0) = 0
  if (g.degree() < 1)
    throw DomainError(Errc::constant_cofactor,
                      "cofactor of " + poly.to_string() + " is constant; every a_n is a unit");
  if (!is_wandering(poly, start))
    throw DomainError(Errc::not_wandering, "start " + start.get_str() + " is not wandering");

  CoprimeSeq seq;
  seq.rule = CoprimeRule::Period1;
  seq.poly = poly;
  seq.start = start;
  seq.start_index = 1;
  seq.r = r;
  seq.cofactor = g;
  seq.divisor = g.eval(Int(0));

  Orbit orb(poly, start);
  std::span<const Int> x = orb.extend(count == 0 ? 0 : count - 1);
  seq.terms.reserve(count);
  // a_{n+1} = g(x_n) / gcd(g(x_n), g(0)): the x^r part of x_{n+1} is
  // swallowed by x_n's primes, so only the cofactor contributes new ones.
  for (std::size_t n = 0; n < count; ++n)
    seq.terms.push_back(strip_common(g.eval(x[n]), seq.divisor));
  record_units(seq);
  return seq;
}

CoprimeSeq coprime_period2(const IntPoly& poly, const Int& start,
                           std::size_t count) {
  if (poly.degree() == 1 && poly.coeff(1) == -1)
    throw DomainError(Errc::involution_excluded,
                      poly.to_string() + " swaps every pair; no growth to mine");
  Int f0 = poly.eval(Int(0));
  if (f0 == 0 || poly.eval(f0) != 0)
    throw DomainError(Errc::not_period2,
                      "origin is not on a 2-cycle of " + poly.to_string());
  if (!is_wandering(poly, start))
    throw DomainError(Errc::not_wandering, "start " + start.get_str() + " is not wandering");

  IntPoly f2 = poly.iterate(2);
  auto [r, big_g] = decompose_xr(f2);
  if (big_g.degree() < 1)
    throw DomainError(Errc::constant_cofactor,
                      "cofactor of " + f2.to_string() + " is constant; every a_n is a unit");

  CoprimeSeq seq;
  seq.rule = CoprimeRule::Period2;
  seq.poly = poly;
  seq.start = start;
  seq.start_index = 2;
  seq.r = r;
  seq.cofactor = big_g;
  seq.divisor = big_g.eval(Int(0)) * f0;

  Orbit orb(poly, start);
  std::span<const Int> x = orb.extend(count == 0 ? 0 : count - 1);
  seq.terms.reserve(count);
  for (std::size_t n = 0; n < count; ++n)
    seq.terms.push_back(strip_common(big_g.eval(x[n]), seq.divisor));
  record_units(seq);
  return seq;
}

std::vector<ExceptionalOrbit> search_exceptional_orbits(long long a_bound,
                                                        long long x_bound) {
  if (a_bound < 1 || x_bound < 1)
    throw DomainError(Errc::inadmissible_parameters, "bounds must be positive");

  auto divides = [](long long q, long long n) { return n % q == 0; };

  std::vector<ExceptionalOrbit> found;
  for (long long a = 1; a <= a_bound; ++a) {
    std::vector<long long> divs;
    for (long long e = 1; e <= a; ++e)
      if (a % e == 0) {
        divs.push_back(e);
        divs.push_back(-e);
      }
    for (long long u = -x_bound; u <= x_bound; ++u) {
      if (u == 0 || u == a) continue;
      for (long long v = -x_bound; v <= x_bound; ++v) {
        if (v == 0 || v == a || v == u) continue;
        if (!divides(u * (a - u), v - a)) continue;
        for (long long d : divs) {
          if (d == a || d == u || d == v) continue;
          if (!divides(v * (a - v), a - d)) continue;
          if (!divides(u - v, v - d)) continue;
          found.push_back({a, u, v, d});
        }
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace orbitprimes
