#include <doctest.h>

#include <functional>
#include <vector>

#include "orbitprimes/coprime.hpp"
#include "orbitprimes/errors.hpp"
#include "orbitprimes/intpoly.hpp"
#include "orbitprimes/orbit.hpp"

using namespace orbitprimes;

namespace {

Errc thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  FAIL("expected a DomainError");
  return Errc::parse_error;
}

void check_pairwise_coprime(const std::vector<Int>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      Int g;
      mpz_gcd(g.get_mpz_t(), terms[i].get_mpz_t(), terms[j].get_mpz_t());
      CAPTURE(i);
      CAPTURE(j);
      CHECK(g == 1);
    }
}

}  // namespace

TEST_CASE("ell on pinned maps") {
  // lcm(|f(0)|, |f^2(0)|) for the standard examples.
  CHECK(ell(IntPoly::from_string("x^2-x+1")) == 1);
  CHECK(ell(IntPoly::from_string("x^2-2x+2")) == 2);
  CHECK(ell(IntPoly::from_string("x^2-6x-1")) == 6);
  CHECK(ell(IntPoly::from_string("x^7-8x^6+7x^5+7")) == 7);
  CHECK(ell(IntPoly::from_string("x^2-2")) == 2);
  CHECK(ell(IntPoly::from_string("1+x+x^2-x^3")) == 2);  // lcm(1, 2)

  // f(0) = 0 and f(f(0)) = 0 are both rejected.
  CHECK(thrown_code([] { ell(IntPoly::from_string("x^2-x")); }) ==
        Errc::zero_at_origin);
  // f = x^2-3x+2: 0 -> 2 -> 0.
  CHECK(thrown_code([] { ell(IntPoly::from_string("x^2-3x+2")); }) ==
        Errc::zero_at_origin);
}

TEST_CASE("preperiodic rule: pinned sequences") {
  SUBCASE("ell = 1 leaves the orbit untouched") {
    CoprimeSeq s = coprime_preperiodic(IntPoly::from_string("x^2-x+1"), 2, 5);
    CHECK(s.ell == 1);
    CHECK(s.start_index == 0);
    CHECK(s.terms == std::vector<Int>{Int(2), Int(3), Int(7), Int(43), Int(1807)});
    CHECK(s.unit_indices.empty());
    check_pairwise_coprime(s.terms);
  }
  SUBCASE("ell = 2 halves the even orbit") {
    // Orbit of 2 under x^2-2x+2 is 2 -> 2: not wandering; use start 4:
    // 4, 10, 82, 6562; dividing by gcd with 2 gives 2, 5, 41, 3281.
    CoprimeSeq s = coprime_preperiodic(IntPoly::from_string("x^2-2x+2"), 4, 4);
    CHECK(s.ell == 2);
    CHECK(s.terms == std::vector<Int>{Int(2), Int(5), Int(41), Int(3281)});
    check_pairwise_coprime(s.terms);
  }
  SUBCASE("negative orbit terms keep their sign; units are flagged") {
    // x^2-6x-1 from 1: 1, -6, 71, 4614, ... with ell = 6.
    CoprimeSeq s = coprime_preperiodic(IntPoly::from_string("x^2-6x-1"), 1, 5);
    CHECK(s.ell == 6);
    CHECK(s.terms[0] == 1);
    CHECK(s.terms[1] == -1);   // -6 / gcd(6, 6)
    CHECK(s.terms[2] == 71);
    CHECK(s.unit_indices == std::vector<std::size_t>{0, 1});
    check_pairwise_coprime(s.terms);
  }
  SUBCASE("degree 7 map divides only the tail term by 7") {
    IntPoly f = IntPoly::from_string("x^7-8x^6+7x^5+7");
    CoprimeSeq s = coprime_preperiodic(f, 6, 3);
    Orbit orb(f, 6);
    auto x = orb.extend(2);
    CHECK(s.ell == 7);
    // x_0 = 6 is coprime to 7, so a_0 = 6.
    CHECK(s.terms[0] == 6);
    for (int i = 0; i < 3; ++i) {
      Int g;
      mpz_gcd(g.get_mpz_t(), x[i].get_mpz_t(), s.ell.get_mpz_t());
      CHECK(s.terms[i] == x[i] / g);
    }
    check_pairwise_coprime(s.terms);
  }
}

TEST_CASE("preperiodic rule: deeper pairwise coprimality sweep") {
  struct Row {
    const char* poly;
    int start;
  } rows[] = {{"x^2-x+1", 3},  {"x^2-2x+2", 4}, {"x^2-6x-1", 3},
              {"x^2-2", 3},    {"2x^2-1", 2},   {"1+x+x^2-x^3", 3},
              {"x^2-3x+3", 4}, {"x^2-4x-1", 7}};
  for (const Row& r : rows) {
    CAPTURE(r.poly);
    CoprimeSeq s =
        coprime_preperiodic(IntPoly::from_string(r.poly), r.start, 7);
    CHECK(s.terms.size() == 7);
    check_pairwise_coprime(s.terms);
  }
}

TEST_CASE("preperiodic rule: admissibility errors") {
  // Zero orbit wanders: the rule does not apply.
  CHECK(thrown_code([] {
          coprime_preperiodic(IntPoly::from_string("x^2+1"), 3, 4);
        }) == Errc::not_preperiodic);
  // Start on a cycle: 2 is fixed.
  CHECK(thrown_code([] {
          coprime_preperiodic(IntPoly::from_string("x^2-2x+2"), 2, 4);
        }) == Errc::not_wandering);
  // Periodic zero orbit is not strictly preperiodic.
  CHECK(thrown_code([] {
          coprime_preperiodic(IntPoly::from_string("x^2-1"), 3, 4);
        }) == Errc::not_preperiodic);
}

TEST_CASE("decompose_xr splits off the exact power of x") {
  auto [r, g] = decompose_xr(IntPoly::from_string("x^3-2x^2"));
  CHECK(r == 2);
  CHECK(g == IntPoly::from_string("x-2"));
  auto [r2, g2] = decompose_xr(IntPoly::from_string("x"));
  CHECK(r2 == 1);
  CHECK(g2 == IntPoly::from_string("1"));
  CHECK(thrown_code([] { decompose_xr(IntPoly::from_string("x^2+1")); }) ==
        Errc::nonzero_constant_term);
  CHECK_THROWS_AS(decompose_xr(IntPoly()), DomainError);
}

TEST_CASE("period-1 rule: pinned sequence and invariants") {
  // f = x^3-2x^2 = x^2 (x-2), start 3: orbit 3, 9, 567, ...
  // a_{n+1} = (x_n - 2)/gcd(x_n - 2, 2): a_1 = 1, a_2 = 7.
  IntPoly f = IntPoly::from_string("x^3-2x^2");
  CoprimeSeq s = coprime_period1(f, 3, 2);
  CHECK(s.rule == CoprimeRule::Period1);
  CHECK(s.start_index == 1);
  CHECK(s.r == 2);
  CHECK(s.cofactor == IntPoly::from_string("x-2"));
  CHECK(s.divisor == -2);  // g(0)
  CHECK(s.terms == std::vector<Int>{Int(1), Int(7)});
  CHECK(s.unit_indices == std::vector<std::size_t>{1});

  SUBCASE("deeper terms stay pairwise coprime") {
    CoprimeSeq deep = coprime_period1(f, 3, 6);
    CHECK(deep.terms.size() == 6);
    check_pairwise_coprime(deep.terms);
    // Cross-check each term against the defining quotient.
    Orbit orb(f, 3);
    auto x = orb.extend(5);
    IntPoly g = IntPoly::from_string("x-2");
    for (std::size_t n = 0; n < 6; ++n) {
      Int num = g.eval(x[n]);
      Int d;
      mpz_gcd_ui(d.get_mpz_t(), num.get_mpz_t(), 2);
      CHECK(deep.terms[n] == num / d);
    }
  }
}

TEST_CASE("period-1 rule: admissibility errors") {
  CHECK(thrown_code([] {
          coprime_period1(IntPoly::from_string("x^3-2x^2+1"), 3, 3);
        }) == Errc::nonzero_constant_term);
  // Pure power of x: cofactor is the constant 1.
  CHECK(thrown_code([] {
          coprime_period1(IntPoly::from_string("x^3"), 2, 3);
        }) == Errc::constant_cofactor);
  // Fixed start: 0 itself.
  CHECK(thrown_code([] {
          coprime_period1(IntPoly::from_string("x^3-2x^2"), 0, 3);
        }) == Errc::not_wandering);
}

TEST_CASE("period-2 rule: pinned sequence and invariants") {
  // f = 1-x^2: f^2 = x^2 (2-x^2), G = 2-x^2, G(0) f(0) = 2.
  // Start 3: orbit 3, -8, -63, ...; a_{n+2} = G(x_n)/gcd(G(x_n), 2):
  // a_2 = (2-9)/1 = -7, a_3 = (2-64)/2 = -31.
  IntPoly f = IntPoly::from_string("1-x^2");
  CoprimeSeq s = coprime_period2(f, 3, 2);
  CHECK(s.rule == CoprimeRule::Period2);
  CHECK(s.start_index == 2);
  CHECK(s.r == 2);
  CHECK(s.cofactor == IntPoly::from_string("2-x^2"));
  CHECK(s.divisor == 2);
  CHECK(s.terms == std::vector<Int>{Int(-7), Int(-31)});

  SUBCASE("deeper terms stay pairwise coprime") {
    CoprimeSeq deep = coprime_period2(f, 3, 6);
    CHECK(deep.terms.size() == 6);
    check_pairwise_coprime(deep.terms);
  }
}

TEST_CASE("period-2 rule: admissibility errors") {
  // The involution a - x swaps 0 and a forever; excluded by fiat.
  CHECK(thrown_code([] {
          coprime_period2(IntPoly::from_string("5-x"), 2, 3);
        }) == Errc::involution_excluded);
  // Zero not on a 2-cycle: fixed at 1 after one step.
  CHECK(thrown_code([] {
          coprime_period2(IntPoly::from_string("x^2-x+1"), 3, 3);
        }) == Errc::not_period2);
  // f(0) = 0 is period 1, not 2.
  CHECK(thrown_code([] {
          coprime_period2(IntPoly::from_string("x^3-2x^2"), 3, 3);
        }) == Errc::not_period2);
  // Degree >= 2 with a genuine 2-cycle but a periodic start.
  CHECK(thrown_code([] {
          coprime_period2(IntPoly::from_string("1-x^2"), 0, 3);
        }) == Errc::not_wandering);
}

TEST_CASE("exceptional orbit search finds exactly the known survivors") {
  auto rows = search_exceptional_orbits(10, 50);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == ExceptionalOrbit{2, 1, 3, -1});
  CHECK(rows[1] == ExceptionalOrbit{3, 2, 1, -3});
  CHECK(rows[2] == ExceptionalOrbit{3, 2, 1, -1});

  SUBCASE("results satisfy the defining divisibility constraints") {
    for (const auto& e : rows) {
      CHECK(e.a >= 1);
      CHECK(e.x0 != 0);
      CHECK(e.x1 != 0);
      CHECK(e.d != 0);
      CHECK(e.a % e.d == 0);
      CHECK((e.x1 - e.a) % (e.x0 * (e.a - e.x0)) == 0);
      CHECK((e.a - e.d) % (e.x1 * (e.a - e.x1)) == 0);
      CHECK((e.x1 - e.d) % (e.x0 - e.x1) == 0);
    }
  }
  SUBCASE("search is monotone in its bounds") {
    auto small = search_exceptional_orbits(5, 20);
    for (const auto& e : small) {
      bool found = false;
      for (const auto& big : rows) found = found || big == e;
      CHECK(found);
    }
  }
}
