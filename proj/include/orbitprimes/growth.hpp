#ifndef ORBITPRIMES_GROWTH_HPP
#define ORBITPRIMES_GROWTH_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

/**
 * Affine normalization of a degree-d map with positive leading
 * coefficient a: alpha = a^{-1/(d-1)}, beta = -b/(d a) with b the
 * coefficient of x^{d-1}. alpha is exact when a is a perfect
 * (d-1)-th power (always for d = 2), otherwise a certified interval
 * [alpha_lo, alpha_hi].
 */
struct AffineNorm {
  unsigned degree = 0;
  Int lead = 0;
  bool alpha_exact = false;
  Rat alpha_lo, alpha_hi;  // equal when alpha_exact
  Rat beta;
};

AffineNorm normalize_affine(const IntPoly& poly, unsigned precision_bits = 128);

/**
 * Certified bracket [lo, hi] for the growth constant tau of a wandering
 * orbit: |x_n| = nearest_integer(alpha tau^{d^n} + beta) for all
 * horizon <= n <= n_used, for every t in [lo, hi] in place of tau.
 *
 * chain_start is the first index at which the doubling sandwich
 *   a s_k^d < s_{k+1},  t_{k+1} < a t_k^d   (s = x - beta - 1/2, t = x - beta + 1/2)
 * is certified through n_used together with the entry condition
 * alpha^{-1}(x_n - beta) > 1; all checks are exact rational arithmetic.
 * horizon additionally waits for the terms to turn positive so the
 * nearest integer equals |x_n| literally.
 */
struct TauEstimate {
  IntPoly poly;
  Int start;
  unsigned degree = 0;
  Int lead = 0;
  bool alpha_exact = false;
  Rat alpha_lo, alpha_hi;
  Rat beta;
  Rat lo, hi;
  std::size_t chain_start = 0;
  std::size_t horizon = 0;
  std::size_t n_used = 0;
  unsigned precision_bits = 0;
};

// Verifies the sandwich on exact rationals for indices chain_start..n_max
// (consuming orbit terms through n_max + 1) and takes the bracket at
// n_used = n_max + 1 with directed rounding at precision_bits.
TauEstimate estimate_tau(const IntPoly& poly, const Int& start,
                         std::size_t n_max, unsigned precision_bits = 128);

// The integer that alpha t^{d^n} + beta rounds to for every t in the
// estimate's interval; equals |x_n| by the certificate. Errors:
// HorizonViolation below est.horizon, IntervalTooWide(n) when the two
// interval ends round differently at depth n.
Int reconstruct(const IntPoly& poly, const TauEstimate& est, std::size_t n);

/**
 * Truncation P_k(T) = c_1 T + c_0 + c_{-1} T^{-1} + ... + c_{1-k} T^{1-k}
 * of the series solving P(T^d) = f(P(T)). coeff(j) stores c_{1-j}, so
 * coeff(0) = c_1 = alpha and coeff(1) = c_0 = beta. Coefficients are
 * exact rationals when alpha is (coeff_lo == coeff_hi), else certified
 * intervals. identity_exact marks a truncation that satisfies the
 * functional equation with no discrepancy at any order (exact mode).
 */
struct SeriesTruncation {
  unsigned k = 0;
  unsigned degree = 0;
  bool exact = false;
  bool identity_exact = false;
  std::vector<Rat> coeff_lo, coeff_hi;  // size k + 1
  std::optional<Rat> fitted_c;          // filled by series_residual_check
};

// Solves for the k + 1 leading coefficients by matching orders of the
// functional equation. Exact mode whenever alpha is rational (superset
// of the monic case); interval mode otherwise, at precision_bits.
// DegenerateLinearSolve(j) if the linear coefficient for c_{-j} cannot
// be certified nonzero.
SeriesTruncation series_coefficients(const IntPoly& poly, unsigned k,
                                     unsigned precision_bits = 128);

// Nonzero coefficients of f(P_k(T)) - P_k(T^d), exponent-descending.
// Exact mode only; every exponent >= d - k must be absent, which
// series_coefficients already guarantees.
std::vector<std::pair<long, Rat>> series_discrepancy(const IntPoly& poly,
                                                     const SeriesTruncation& trunc);

struct ResidualRow {
  std::size_t n = 0;
  Rat res_lo, res_hi;        // |x_n - P_k(tau^{d^n})| over the tau interval
  Rat scaled_lo, scaled_hi;  // residual * tau^{k d^n}
  bool decrease_certified = false;  // res strictly below the previous row's
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  Rat fitted_c;             // max over rows of the scaled upper end
  bool identically_zero = false;   // truncation satisfies the equation exactly
  bool decay_certified = false;    // scaled sequence certified non-increasing
};

// Evaluates the truncation residual against orbit terms for
// n_lo <= n <= n_hi, fits the smallest constant making
// |x_n - P_k(tau^{d^n})| <= C / tau^{k d^n} hold over the range, and
// certifies the decay by comparing scaled residuals of consecutive rows.
// Sets trunc.fitted_c.
ResidualReport series_residual_check(const IntPoly& poly, const TauEstimate& est,
                                     SeriesTruncation& trunc, std::size_t n_lo,
                                     std::size_t n_hi);

// Chooses a prime in the open interval (lo, hi), or nullopt if the
// interval holds none. The default scans upward from lo + 1.
using MillsPicker =
    std::function<std::optional<Int>(const Int& lo, const Int& hi)>;

struct MillsResult {
  std::vector<Int> primes;
  Rat tau_lo, tau_hi;        // [p_last^{3^-last}, (p_last+1)^{3^-last})
  bool floor_verified = false;  // floor(t^{3^n}) = p_n certified for both ends
};

// p_0 = p0, p_{n+1} = picked prime in (p_n^3, (p_n+1)^3). Floor
// verification is exact integer arithmetic: p_n^{3^{last-n}} <= p_last
// and p_last + 1 <= (p_n+1)^{3^{last-n}} for every n. Errors:
// NotPrime(p0), EmptyInterval(n) when a scan finds no prime (reported,
// not assumed impossible), InadmissibleParameters for a picker result
// that is out of range or composite.
MillsResult mills_sequence(const Int& p0, std::size_t count,
                           unsigned precision_bits = 128,
                           const MillsPicker& picker = {});

}  // namespace orbitprimes

#endif
