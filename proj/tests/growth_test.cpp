#include <doctest.h>

#include <map>
#include <optional>
#include <vector>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/factorint.hpp"
#include "orbitprimes/growth.hpp"
#include "orbitprimes/intpoly.hpp"
#include "orbitprimes/orbit.hpp"

using namespace orbitprimes;

namespace {

Rat rat_pow(Rat base, const Int& e) {
  Rat acc(1);
  Int n = e;
  for (; n > 0; n >>= 1, base *= base)
    if (mpz_odd_p(n.get_mpz_t())) acc *= base;
  return acc;
}

Int rat_floor(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

Int ipow(Int b, unsigned e) {
  Int acc(1);
  for (; e; e >>= 1, b *= b)
    if (e & 1) acc *= b;
  return acc;
}

// The growth law, checked in exact rational arithmetic with no MPFR in
// sight: alpha t^{d^n} + beta rounds to |x_n| at both bracket ends.
// Only valid when alpha is exact (all the pinned maps below).  The
// bracket is anchored at n_used, where it spans the whole half-integer
// window by construction, so the last decidable index is n_used - 1.
void verify_growth_law_exactly(const IntPoly& poly, const TauEstimate& est) {
  REQUIRE(est.alpha_exact);
  Orbit orb(poly, est.start);
  auto x = orb.extend(est.n_used);
  Rat half(1, 2);
  for (std::size_t n = est.horizon; n < est.n_used; ++n) {
    Int e = ipow(Int(est.degree), static_cast<unsigned>(n));
    Int r_lo = rat_floor(est.alpha_lo * rat_pow(est.lo, e) + est.beta + half);
    Int r_hi = rat_floor(est.alpha_lo * rat_pow(est.hi, e) + est.beta + half);
    CAPTURE(n);
    CHECK(r_lo == r_hi);
    CHECK(r_lo == abs(x[n]));
  }
}

// Independent Laurent arithmetic for the substitution oracle.
using LMap = std::map<long, Rat>;

void ladd(LMap& p, long e, const Rat& c) {
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

LMap lmul(const LMap& a, const LMap& b) {
  LMap out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) ladd(out, ea + eb, ca * cb);
  return out;
}

LMap lapply(const IntPoly& f, const LMap& arg) {
  LMap acc;  // Horner from the top coefficient down
  for (int i = f.degree(); i >= 0; --i) {
    acc = lmul(acc, arg);
    if (f.coeff(static_cast<std::size_t>(i)) != 0)
      ladd(acc, 0, Rat(f.coeff(static_cast<std::size_t>(i))));
  }
  return acc;
}

LMap lstretch(const LMap& p, int d) {
  LMap out;
  for (const auto& [e, c] : p) out.emplace(e * d, c);
  return out;
}

LMap truncation_laurent(const SeriesTruncation& t) {
  LMap p;
  for (unsigned j = 0; j <= t.k; ++j)
    if (t.coeff_lo[j] != 0) p.emplace(1 - static_cast<long>(j), t.coeff_lo[j]);
  return p;
}

}  // namespace

TEST_CASE("normalize_affine: exact and interval modes") {
  SUBCASE("monic quadratic") {
    AffineNorm n = normalize_affine(IntPoly::from_string("x^2-6x-1"));
    CHECK(n.degree == 2);
    CHECK(n.lead == 1);
    CHECK(n.alpha_exact);
    CHECK(n.alpha_lo == 1);
    CHECK(n.beta == 3);  // -(-6)/(2*1)
  }
  SUBCASE("non-monic quadratic is still exact: alpha = 1/a") {
    AffineNorm n = normalize_affine(IntPoly::from_string("2x^2-1"));
    CHECK(n.alpha_exact);
    CHECK(n.alpha_lo == Rat(1, 2));
    CHECK(n.beta == 0);
  }
  SUBCASE("perfect power leading coefficient at degree 3") {
    AffineNorm n = normalize_affine(IntPoly::from_string("4x^3"));
    CHECK(n.alpha_exact);
    CHECK(n.alpha_lo == Rat(1, 2));  // 4^{-1/2}
  }
  SUBCASE("irrational alpha becomes a certified bracket") {
    AffineNorm n = normalize_affine(IntPoly::from_string("3x^3+1"));
    CHECK_FALSE(n.alpha_exact);
    CHECK(n.alpha_lo < n.alpha_hi);
    // alpha = 3^{-1/2}: square both ends against 1/3 exactly.
    CHECK(n.alpha_lo * n.alpha_lo <= Rat(1, 3));
    CHECK(n.alpha_hi * n.alpha_hi >= Rat(1, 3));
    CHECK(n.alpha_hi - n.alpha_lo < Rat(Int(1), Int(1) << 100));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(normalize_affine(IntPoly::from_string("2x+1")), DomainError);
    CHECK_THROWS_AS(normalize_affine(IntPoly::from_string("-x^2+1")),
                    DomainError);
    try {
      normalize_affine(IntPoly::from_string("-x^2+1"));
    } catch (const DomainError& e) {
      CHECK(e.code() == Errc::negative_leading);
    }
  }
}

TEST_CASE("estimate_tau: doubling map with known constant 2") {
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  TauEstimate est = estimate_tau(f, 3, 6);
  CHECK(est.degree == 2);
  CHECK(est.beta == 1);
  CHECK(est.chain_start == 0);
  CHECK(est.horizon == 0);
  CHECK(est.n_used == 7);
  CHECK(est.precision_bits == 128);
  // x_n = 2^{2^n} + 1, so tau is exactly 2 and the bracket must pin it.
  CHECK(est.lo <= 2);
  CHECK(est.hi >= 2);
  CHECK(est.hi - est.lo < Rat(Int(1), Int("1000000000000000000000000000000")));
  verify_growth_law_exactly(f, est);
}

TEST_CASE("estimate_tau: Lucas-style map has closed-form tau (3+sqrt5)/2") {
  IntPoly f = IntPoly::from_string("x^2-2");
  TauEstimate est = estimate_tau(f, 3, 6);
  // est.lo <= (3+sqrt5)/2 iff (2 lo - 3)^2 <= 5 (both ends exceed 3/2).
  REQUIRE(est.lo > Rat(3, 2));
  Rat u = 2 * est.lo - 3, v = 2 * est.hi - 3;
  CHECK(u * u <= 5);
  CHECK(v * v >= 5);
  verify_growth_law_exactly(f, est);
}

TEST_CASE("estimate_tau: late entry sets chain_start and horizon") {
  // Orbit of 3: 3, -3, 21, 357, ...; beta = 2, entry only at n = 2.
  IntPoly f = IntPoly::from_string("x^2-4x");
  TauEstimate est = estimate_tau(f, 3, 4);
  CHECK(est.chain_start == 2);
  CHECK(est.horizon == 2);
  verify_growth_law_exactly(f, est);

  SUBCASE("below the horizon reconstruction refuses") {
    try {
      reconstruct(f, est, 1);
      FAIL("expected HorizonViolation");
    } catch (const DomainError& e) {
      CHECK(e.code() == Errc::horizon_violation);
      CHECK(e.index() == 1);
    }
  }
  SUBCASE("n_max too small to enter the sandwich") {
    try {
      estimate_tau(f, 3, 1);
      FAIL("expected NoBracketingIndex");
    } catch (const DomainError& e) {
      CHECK(e.code() == Errc::no_bracketing_index);
    }
  }
}

TEST_CASE("estimate_tau rejects non-wandering starts and tiny degrees") {
  try {
    estimate_tau(IntPoly::from_string("x^2-2x+2"), 2, 4);  // 2 is fixed
    FAIL("expected NotWandering");
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::not_wandering);
  }
  CHECK_THROWS_AS(estimate_tau(IntPoly::from_string("2x+1"), 1, 4),
                  DomainError);
}

TEST_CASE("reconstruct recovers every certified term") {
  struct Row {
    const char* poly;
    int start;
  } rows[] = {{"x^2-x+1", 2}, {"x^2-2x+2", 3}, {"x^2-2", 3}, {"x^2-6x-1", 3}};
  for (const Row& r : rows) {
    CAPTURE(r.poly);
    IntPoly f = IntPoly::from_string(r.poly);
    TauEstimate est = estimate_tau(f, r.start, 6);
    Orbit orb(f, r.start);
    auto x = orb.extend(est.n_used);
    for (std::size_t n = est.horizon; n < est.n_used; ++n) {
      CAPTURE(n);
      CHECK(reconstruct(f, est, n) == abs(x[n]));
    }
    // At n_used itself the bracket covers the full half-integer window,
    // so rounding cannot settle and the call must refuse.
    try {
      reconstruct(f, est, est.n_used);
      FAIL("expected IntervalTooWide at n_used");
    } catch (const DomainError& e) {
      CHECK(e.code() == Errc::interval_too_wide);
    }
  }
  // The flagship pin: index 5 of the doubling map is the fifth Fermat
  // number, reproduced from the bracket alone.
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  TauEstimate est = estimate_tau(f, 3, 6);
  CHECK(reconstruct(f, est, 5) == Int("4294967297"));
}

TEST_CASE("reconstruct: extrapolation far past n_used exhausts the bracket") {
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  TauEstimate est = estimate_tau(f, 3, 2, 16);  // deliberately coarse
  try {
    reconstruct(f, est, 20);
    FAIL("expected IntervalTooWide");
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::interval_too_wide);
    CHECK(e.index() == 20);
  }
}

TEST_CASE("reconstruct refuses a mismatched estimate") {
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  TauEstimate est = estimate_tau(f, 3, 4);
  CHECK_THROWS_AS(reconstruct(IntPoly::from_string("x^2-x+1"), est, 3),
                  DomainError);
}

TEST_CASE("series coefficients: pinned exact values") {
  SUBCASE("hand-solved truncation for the squaring map with beta 1/2") {
    SeriesTruncation t = series_coefficients(IntPoly::from_string("x^2-x+1"), 4);
    CHECK(t.exact);
    CHECK_FALSE(t.identity_exact);
    REQUIRE(t.coeff_lo.size() == 5);
    CHECK(t.coeff_lo[0] == 1);           // c_1 = alpha
    CHECK(t.coeff_lo[1] == Rat(1, 2));   // c_0 = beta
    CHECK(t.coeff_lo[2] == Rat(-1, 8));  // c_{-1}
    CHECK(t.coeff_lo[3] == 0);           // c_{-2}
    CHECK(t.coeff_lo[4] == Rat(-9, 128));  // c_{-3}
    for (unsigned j = 0; j <= 4; ++j) CHECK(t.coeff_lo[j] == t.coeff_hi[j]);
  }
  SUBCASE("doubling map truncates to T + 1 with an exact identity") {
    SeriesTruncation t = series_coefficients(IntPoly::from_string("x^2-2x+2"), 5);
    CHECK(t.exact);
    CHECK(t.identity_exact);
    CHECK(t.coeff_lo[0] == 1);
    CHECK(t.coeff_lo[1] == 1);
    for (unsigned j = 2; j <= 5; ++j) CHECK(t.coeff_lo[j] == 0);
  }
  SUBCASE("Lucas map closes at T + 1/T") {
    SeriesTruncation t = series_coefficients(IntPoly::from_string("x^2-2"), 3);
    CHECK(t.identity_exact);
    CHECK(t.coeff_lo[0] == 1);
    CHECK(t.coeff_lo[1] == 0);
    CHECK(t.coeff_lo[2] == 1);  // c_{-1}
    CHECK(t.coeff_lo[3] == 0);
  }
  SUBCASE("non-monic maps stay exact when the lead is a perfect power") {
    SeriesTruncation t = series_coefficients(IntPoly::from_string("2x^2"), 3);
    CHECK(t.exact);
    CHECK(t.identity_exact);  // P = T/2 solves it on the nose
    CHECK(t.coeff_lo[0] == Rat(1, 2));
    for (unsigned j = 1; j <= 3; ++j) CHECK(t.coeff_lo[j] == 0);

    t = series_coefficients(IntPoly::from_string("2x^2+x"), 3);
    CHECK(t.exact);
    CHECK_FALSE(t.identity_exact);
    CHECK(t.coeff_lo[0] == Rat(1, 2));
    CHECK(t.coeff_lo[1] == Rat(-1, 4));
    CHECK(t.coeff_lo[2] == Rat(-1, 16));
  }
  CHECK_THROWS_AS(series_coefficients(IntPoly::from_string("x^2"), 0),
                  DomainError);
  CHECK_THROWS_AS(series_coefficients(IntPoly::from_string("3x+1"), 2),
                  DomainError);
}

TEST_CASE("series coefficients satisfy the functional equation: oracle") {
  // Substitute the truncation into f(P) - P(T^d) with independent
  // Laurent arithmetic; orders d-k and above must all cancel.
  const char* polys[] = {"x^2-x+1", "x^2-2x+2", "x^2-2",   "x^2-6x-1",
                         "2x^2",    "2x^2+x",   "4x^3",    "x^3-2x^2+5",
                         "16x^5+x^2-3"};
  for (const char* text : polys) {
    CAPTURE(text);
    IntPoly f = IntPoly::from_string(text);
    const unsigned k = 4;
    SeriesTruncation t = series_coefficients(f, k);
    REQUIRE(t.exact);
    LMap p = truncation_laurent(t);
    LMap residue = lapply(f, p);
    for (const auto& [e, c] : lstretch(p, f.degree())) ladd(residue, e, -c);
    long cutoff = static_cast<long>(f.degree()) - static_cast<long>(k);
    for (const auto& [e, c] : residue) {
      CAPTURE(e);
      CHECK(e < cutoff);
    }
    // series_discrepancy must report exactly the surviving terms.
    auto disc = series_discrepancy(f, t);
    CHECK(disc.size() == residue.size());
    for (const auto& [e, c] : disc) {
      auto it = residue.find(e);
      REQUIRE(it != residue.end());
      CHECK(it->second == c);
    }
    // Exponent-descending order.
    for (std::size_t i = 1; i < disc.size(); ++i)
      CHECK(disc[i - 1].first > disc[i].first);
  }
}

TEST_CASE("series discrepancy: pinned leading defect") {
  // P_2 for the squaring map with beta 1/2 leaves exactly 9/64 T^{-2}.
  SeriesTruncation t = series_coefficients(IntPoly::from_string("x^2-x+1"), 2);
  auto disc = series_discrepancy(IntPoly::from_string("x^2-x+1"), t);
  REQUIRE(disc.size() == 1);
  CHECK(disc[0].first == -2);
  CHECK(disc[0].second == Rat(9, 64));

  // Exact identities leave nothing.
  SeriesTruncation id = series_coefficients(IntPoly::from_string("x^2-2"), 2);
  CHECK(series_discrepancy(IntPoly::from_string("x^2-2"), id).empty());
}

TEST_CASE("series coefficients: interval mode brackets the true values") {
  SeriesTruncation t = series_coefficients(IntPoly::from_string("3x^3+1"), 3);
  CHECK_FALSE(t.exact);
  // c_1 = 3^{-1/2}: verify by squaring the rational endpoints.
  CHECK(t.coeff_lo[0] * t.coeff_lo[0] <= Rat(1, 3));
  CHECK(t.coeff_hi[0] * t.coeff_hi[0] >= Rat(1, 3));
  CHECK(t.coeff_hi[0] - t.coeff_lo[0] < Rat(Int(1), Int(1) << 100));
  // c_0 = beta = 0 exactly, even in interval mode.
  CHECK(t.coeff_lo[1] == 0);
  CHECK(t.coeff_hi[1] == 0);
  for (unsigned j = 0; j <= 3; ++j) CHECK(t.coeff_lo[j] <= t.coeff_hi[j]);
  // Interval mode refuses the exact-only discrepancy listing.
  CHECK_THROWS_AS(series_discrepancy(IntPoly::from_string("3x^3+1"), t),
                  DomainError);
}

TEST_CASE("residual check: decay certified for the squaring map") {
  IntPoly f = IntPoly::from_string("x^2-x+1");
  TauEstimate est = estimate_tau(f, 2, 6);

  SeriesTruncation t1 = series_coefficients(f, 1);
  ResidualReport r1 = series_residual_check(f, est, t1, 0, 5);
  REQUIRE(r1.rows.size() == 6);
  CHECK_FALSE(r1.identically_zero);
  CHECK(r1.decay_certified);
  for (std::size_t i = 1; i < r1.rows.size(); ++i) {
    CHECK(r1.rows[i].decrease_certified);
    CHECK(r1.rows[i].res_hi < r1.rows[i - 1].res_lo);
  }
  CHECK(r1.fitted_c > 0);
  CHECK(t1.fitted_c == r1.fitted_c);

  SeriesTruncation t2 = series_coefficients(f, 2);
  ResidualReport r2 = series_residual_check(f, est, t2, 0, 5);
  CHECK(r2.decay_certified);
  // A longer truncation fits strictly better, row by row.
  for (std::size_t i = 0; i < 6; ++i) {
    CAPTURE(i);
    CHECK(r2.rows[i].res_hi < r1.rows[i].res_lo);
  }
}

TEST_CASE("residual check: exact identity short-circuits") {
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  TauEstimate est = estimate_tau(f, 3, 6);
  SeriesTruncation t = series_coefficients(f, 2);
  REQUIRE(t.identity_exact);
  ResidualReport r = series_residual_check(f, est, t, 0, 5);
  CHECK(r.identically_zero);
  CHECK(r.decay_certified);
  CHECK(r.fitted_c == 0);
  for (const ResidualRow& row : r.rows) {
    // The truncation is the exact law: residual intervals pin to zero
    // from below and stay microscopic above.
    CHECK(row.res_lo == 0);
    CHECK(row.res_hi < Rat(1, 1000000));
  }
}

TEST_CASE("residual check: constant scaled residual is honestly undecidable") {
  // For the Lucas map at k = 1 the scaled residual is exactly 1 at
  // every index, so consecutive rows can certify neither decrease nor
  // increase and the check must refuse rather than guess.
  IntPoly f = IntPoly::from_string("x^2-2");
  TauEstimate est = estimate_tau(f, 3, 6);
  SeriesTruncation t = series_coefficients(f, 1);
  REQUIRE_FALSE(t.identity_exact);
  try {
    series_residual_check(f, est, t, 1, 4);
    FAIL("expected IntervalTooWide");
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::interval_too_wide);
  }
}

TEST_CASE("residual check: interval-mode map certifies decay too") {
  // tau^108 eats ~195 bits, so the default 128 cannot resolve row 3.
  IntPoly f = IntPoly::from_string("3x^3+1");
  TauEstimate est = estimate_tau(f, 2, 4, 320);
  SeriesTruncation t = series_coefficients(f, 2, 320);
  ResidualReport r = series_residual_check(f, est, t, 0, 3);
  CHECK(r.decay_certified);
  CHECK_FALSE(r.identically_zero);
  CHECK(r.fitted_c > 0);
}

TEST_CASE("residual check: range and estimate validation") {
  IntPoly f = IntPoly::from_string("x^2-x+1");
  TauEstimate est = estimate_tau(f, 2, 4);
  SeriesTruncation t = series_coefficients(f, 2);
  CHECK_THROWS_AS(series_residual_check(f, est, t, 3, 2), DomainError);
  IntPoly g = IntPoly::from_string("x^2-2");
  CHECK_THROWS_AS(series_residual_check(g, est, t, 0, 3), DomainError);
}

TEST_CASE("mills-style tower: pinned chain from 2") {
  MillsResult m = mills_sequence(2, 4);
  REQUIRE(m.primes.size() == 4);
  CHECK(m.primes[0] == 2);
  CHECK(m.primes[1] == 11);
  CHECK(m.primes[2] == 1361);
  CHECK(m.primes[3] == Int("2521008887"));
  CHECK(m.floor_verified);
  // tau ~ 2.2295: bracket must be tight and correctly ordered.
  CHECK(m.tau_lo < m.tau_hi);
  CHECK(m.tau_lo > Rat(22294, 10000));
  CHECK(m.tau_hi < Rat(22296, 10000));

  SUBCASE("floor law re-verified in exact integer arithmetic") {
    for (std::size_t n = 0; n < 4; ++n) {
      unsigned e = 1;
      for (std::size_t i = n; i < 3; ++i) e *= 3;
      CHECK(ipow(m.primes[n], e) <= m.primes[3]);
      CHECK(m.primes[3] + 1 <= ipow(m.primes[n] + 1, e));
    }
  }
  SUBCASE("every step is the least prime in its cube interval") {
    for (std::size_t n = 0; n + 1 < 4; ++n) {
      Int lo = m.primes[n] * m.primes[n] * m.primes[n];
      for (Int q = lo + 1; q < m.primes[n + 1]; ++q) {
        CHECK_FALSE(is_probable_prime(q));
      }
    }
  }
}

TEST_CASE("mills-style tower: single term is the exact unit bracket") {
  MillsResult m = mills_sequence(2, 1);
  CHECK(m.primes == std::vector<Int>{Int(2)});
  CHECK(m.tau_lo == 2);
  CHECK(m.tau_hi == 3);
  CHECK(m.floor_verified);
}

TEST_CASE("mills-style tower: seeds other than 2") {
  MillsResult m = mills_sequence(11, 2);
  CHECK(m.primes[0] == 11);
  CHECK(m.primes[1] == 1361);
}

TEST_CASE("mills-style tower: picker control and validation") {
  SUBCASE("a picker may choose any prime in range") {
    auto largest = [](const Int& lo, const Int& hi) -> std::optional<Int> {
      for (Int q = hi - 1; q > lo; --q)
        if (is_probable_prime(q)) return q;
      return std::nullopt;
    };
    MillsResult m = mills_sequence(2, 3, 128, largest);
    CHECK(m.primes[1] == 23);  // largest prime below 27
    CHECK(m.floor_verified);   // the floor law holds for any valid chain
    CHECK(m.tau_lo > Rat(2));
    CHECK(m.tau_hi < Rat(3));
  }
  SUBCASE("picker results are validated, not trusted") {
    auto composite = [](const Int& lo, const Int&) -> std::optional<Int> {
      return lo + 1;  // 9 for the first interval: composite
    };
    CHECK_THROWS_AS(mills_sequence(2, 2, 128, composite), DomainError);
    auto out_of_range = [](const Int&, const Int& hi) -> std::optional<Int> {
      return hi + 2;
    };
    CHECK_THROWS_AS(mills_sequence(2, 2, 128, out_of_range), DomainError);
  }
  SUBCASE("a picker finding nothing reports an empty interval") {
    auto nothing = [](const Int&, const Int&) -> std::optional<Int> {
      return std::nullopt;
    };
    try {
      mills_sequence(2, 3, 128, nothing);
      FAIL("expected EmptyInterval");
    } catch (const DomainError& e) {
      CHECK(e.code() == Errc::empty_interval);
      CHECK(e.index() == 1);
    }
  }
}

TEST_CASE("mills-style tower: seed validation") {
  try {
    mills_sequence(4, 2);
    FAIL("expected NotPrime");
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::not_prime);
  }
  CHECK_THROWS_AS(mills_sequence(2, 0), DomainError);
}
