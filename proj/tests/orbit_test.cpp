#include <doctest.h>

#include <optional>
#include <vector>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/intpoly.hpp"
#include "orbitprimes/orbit.hpp"

using namespace orbitprimes;

namespace {

// Independent repeat detector, no shared code with detect_cycle. Let
// S = sum |c_i|. For degree >= 2 and |x| >= S + 2,
// |f(x)| >= |x|^{d-1}(|a||x| - (S - |a|)) >= 3|x|: absolute values
// strictly grow from a point above every earlier term, so the orbit
// never repeats and the scan can stop. Degree 1 (ax + b): |a| >= 2
// escapes the same way once |x| > |b|, a = 1 with b != 0 drifts
// monotonically, and the remaining cases (a = -1, or a = 1, b = 0)
// repeat by step 2. Orbits that never trigger an escape stay inside
// [-(S+1), S+1], at most 2S + 3 values, so 2S + 8 steps of full
// history scanning always decide.
struct OracleCycle {
  std::size_t preperiod, period;
};

std::optional<OracleCycle> oracle_detect(const IntPoly& f, const Int& start) {
  Int s = 0;
  for (const Int& c : f.coeffs()) s += abs(c);
  const int d = f.degree();
  const Int& a = f.leading();
  const Int& b = f.coeff(0);
  std::size_t limit = 2 * mpz_get_ui(s.get_mpz_t()) + 8;
  std::vector<Int> seen{start};
  Int x = start;
  for (std::size_t i = 0; i < limit; ++i) {
    if (d >= 2 && abs(x) >= s + 2) return std::nullopt;
    if (d == 1 && abs(a) >= 2 && abs(x) > abs(b)) return std::nullopt;
    if (d == 1 && a == 1 && b != 0) return std::nullopt;
    x = f.eval(x);
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (seen[j] == x) return OracleCycle{j, seen.size() - j};
    }
    seen.push_back(x);
  }
  // Bounded orbits repeat within the scan; unreachable by the argument above.
  return std::nullopt;
}

}  // namespace

TEST_CASE("orbit terms come from pointwise evaluation") {
  IntPoly f = IntPoly::from_string("x^2-x+1");
  Orbit orb(f, 2);
  auto view = orb.extend(4);
  std::vector<Int> expect;
  Int x = 2;
  for (int i = 0; i <= 4; ++i) {
    expect.push_back(x);
    x = f.eval(x);
  }
  REQUIRE(view.size() == 5);
  for (int i = 0; i <= 4; ++i) CHECK(view[i] == expect[i]);
  // Known values for this orbit.
  CHECK(view[0] == 2);
  CHECK(view[1] == 3);
  CHECK(view[2] == 7);
  CHECK(view[3] == 43);
  CHECK(view[4] == 1807);
}

TEST_CASE("extend is idempotent and term gives random access") {
  IntPoly f = IntPoly::from_string("x^2-2x+2");
  Orbit orb(f, 3);
  CHECK(orb.term(4) == 65537);
  CHECK(orb.term(2) == 17);  // already cached, no recompute drama
  CHECK(orb.terms().size() == 5);
  orb.extend(4);
  CHECK(orb.terms().size() == 5);
  orb.extend(5);
  CHECK(orb.term(5) == Int("4294967297"));
}

TEST_CASE("bit cap stops runaway orbits and names the offending index") {
  IntPoly f = IntPoly::from_string("x^2");
  // Orbit of 2: term n is 2^(2^n), sizeinbase 2^n + 1 bits; cap 1000
  // admits term 9 (513 bits) and rejects term 10 (1025 bits).
  Orbit orb(f, 2, 1000);
  CHECK_NOTHROW(orb.extend(9));
  try {
    orb.extend(10);
    FAIL("cap should have tripped");
  } catch (const DomainError& e) {
    CHECK(e.code() == Errc::cap_exceeded);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 10);
  }
  // Terms up to the cap remain usable.
  CHECK(orb.term(9) == orb.terms()[9]);
}

TEST_CASE("is_zero_strictly_preperiodic on pinned maps") {
  // 0 -> 1 -> 1: strictly preperiodic.
  CHECK(is_zero_strictly_preperiodic(IntPoly::from_string("x^2-x+1")));
  // 0 -> -2 -> 2 -> 2: strictly preperiodic.
  CHECK(is_zero_strictly_preperiodic(IntPoly::from_string("x^2-2")));
  // 0 -> -1 -> 6 -> -1: two-cycle entered after one step.
  CHECK(is_zero_strictly_preperiodic(IntPoly::from_string("x^2-6x-1")));
  // 0 fixed: on the cycle, not strictly preperiodic.
  CHECK_FALSE(is_zero_strictly_preperiodic(IntPoly::from_string("x^2")));
  // 0 -> -1 -> 0: genuine 2-cycle through 0.
  CHECK_FALSE(is_zero_strictly_preperiodic(IntPoly::from_string("x^2-1")));
  // 0 -> 1 -> 2 -> 5 -> 26: wandering.
  CHECK_FALSE(is_zero_strictly_preperiodic(IntPoly::from_string("x^2+1")));
}

TEST_CASE("is_wandering: degree 1 closed forms") {
  // x + b wanders iff b != 0.
  CHECK(is_wandering(IntPoly::from_string("x+3"), 0));
  CHECK_FALSE(is_wandering(IntPoly::from_string("x"), 5));
  // a - x is an involution: never wanders.
  CHECK_FALSE(is_wandering(IntPoly::from_string("5-x"), 2));
  CHECK_FALSE(is_wandering(IntPoly::from_string("-x"), 7));
  // |a| >= 2 wanders unless start sits at the fixed point.
  CHECK(is_wandering(IntPoly::from_string("2x+1"), 1));
  CHECK_FALSE(is_wandering(IntPoly::from_string("2x+1"), -1));  // -1 fixed
  CHECK(is_wandering(IntPoly::from_string("-3x+4"), 0));
  CHECK_FALSE(is_wandering(IntPoly::from_string("-3x+4"), 1));  // 1 fixed
  CHECK_THROWS_AS(is_wandering(IntPoly::from_string("7"), 0), DomainError);
}

TEST_CASE("is_wandering agrees with the oracle over a grid") {
  // Degree 1..3, small coefficients, small starts.
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          IntPoly f(std::vector<Int>{Int(a), Int(b), Int(c), Int(d)});
          if (f.degree() < 1) continue;
          for (int s = -4; s <= 4; ++s) {
            CAPTURE(f.to_string());
            CAPTURE(s);
            bool oracle_wanders = !oracle_detect(f, Int(s)).has_value();
            CHECK(is_wandering(f, Int(s)) == oracle_wanders);
          }
        }
}

TEST_CASE("detect_cycle on pinned orbits") {
  // 0 -> -1 -> 0: pure 2-cycle.
  auto c = detect_cycle(IntPoly::from_string("x^2-1"), 0);
  REQUIRE(c.has_value());
  CHECK(c->preperiod == 0);
  CHECK(c->period == 2);
  CHECK(c->cycle == std::vector<Int>{Int(0), Int(-1)});

  // 1 fixed under x^2.
  c = detect_cycle(IntPoly::from_string("x^2"), 1);
  REQUIRE(c.has_value());
  CHECK(c->preperiod == 0);
  CHECK(c->period == 1);

  // 0 -> -2 -> 2 -> 2: preperiod 2, fixed point 2.
  c = detect_cycle(IntPoly::from_string("x^2-2"), 0);
  REQUIRE(c.has_value());
  CHECK(c->preperiod == 2);
  CHECK(c->period == 1);
  CHECK(c->cycle == std::vector<Int>{Int(2)});

  // 0 -> 1 -> 2 -> -1 -> 2: preperiod 2, 2-cycle {2, -1}.
  c = detect_cycle(IntPoly::from_string("1+x+x^2-x^3"), 0);
  REQUIRE(c.has_value());
  CHECK(c->preperiod == 2);
  CHECK(c->period == 2);
  CHECK(c->cycle == std::vector<Int>{Int(2), Int(-1)});

  // Wandering orbit reports nullopt.
  CHECK_FALSE(detect_cycle(IntPoly::from_string("x^2+1"), 3).has_value());
  CHECK_FALSE(detect_cycle(IntPoly::from_string("2x+1"), 0).has_value());
}

TEST_CASE("detect_cycle agrees with the escape-bound oracle on a grid") {
  // Every repeat must match the oracle exactly; every wander must too.
  // This also exercises the preperiod <= 2, period <= 2 law the scan
  // depth relies on.
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        IntPoly f(std::vector<Int>{Int(a), Int(b), Int(c)});
        if (f.degree() < 1) continue;
        for (int s = -6; s <= 6; ++s) {
          CAPTURE(f.to_string());
          CAPTURE(s);
          auto got = detect_cycle(f, Int(s));
          auto want = oracle_detect(f, Int(s));
          REQUIRE(got.has_value() == want.has_value());
          if (got) {
            CHECK(got->preperiod == want->preperiod);
            CHECK(got->period == want->period);
            // The cycle law for integer polynomial orbits.
            CHECK(got->period <= 2);
            CHECK(got->preperiod <= 2);
          }
        }
      }
}

TEST_CASE("detect_cycle cycle content matches the orbit") {
  IntPoly f = IntPoly::from_string("x^2-6x-1");
  auto c = detect_cycle(f, 7);  // 7 -> 6 -> -1 -> 6
  REQUIRE(c.has_value());
  CHECK(c->preperiod == 1);
  CHECK(c->period == 2);
  Orbit orb(f, 7);
  auto t = orb.extend(c->preperiod + c->period - 1);
  for (std::size_t i = 0; i < c->period; ++i) {
    CHECK(c->cycle[i] == t[c->preperiod + i]);
  }
}
