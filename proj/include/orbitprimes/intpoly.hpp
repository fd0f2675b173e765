#ifndef ORBITPRIMES_INTPOLY_HPP
#define ORBITPRIMES_INTPOLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orbitprimes {

using Int = mpz_class;
using Rat = mpq_class;

// Composition cap: iterate() refuses to build a polynomial with more
// coefficients than this. f^n has degree d^n, so the cap trips quickly
// for d >= 2 and keeps accidental self-composition chains from
// exhausting memory.
inline constexpr std::size_t kDefaultMaxCoeffs = 65536;

/**
 * Dense univariate polynomial over Z.
 *
 * Coefficients are stored ascending by exponent and kept normalized:
 * no trailing zero above the leading term, the zero polynomial is the
 * empty vector. degree() is -1 for the zero polynomial.
 */
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);

  // Accepts either the human form ("x^2-6x-1", "2x^3+x", "-4") or an
  // ascending comma-separated coefficient list ("-1,-6,1").
  // Throws DomainError(ParseError) on malformed input.
  static IntPoly from_string(std::string_view text);

  static IntPoly identity();              // x
  static IntPoly constant(const Int& c);  // c

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient of x^i; zero beyond the stored range.
  const Int& coeff(std::size_t i) const;
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& leading() const;  // requires !is_zero()

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;

  // p(q(x)). max_coeffs bounds the size of the result.
  IntPoly compose(const IntPoly& inner,
                  std::size_t max_coeffs = kDefaultMaxCoeffs) const;

  // n-fold self-composition; iterate(0) is x. Use Orbit for pointwise
  // iteration: this materializes a degree d^n polynomial.
  IntPoly iterate(unsigned n, std::size_t max_coeffs = kDefaultMaxCoeffs) const;

  // -p(-x): conjugation by the sign flip. An involution on maps that
  // sends the orbit of s under p to the negated orbit of -s.
  IntPoly sign_conjugate() const;

  // p(x+t)-t: conjugation by translation. Shifts orbits by -t.
  IntPoly shift_conjugate(const Int& t) const;

  std::string to_string() const;      // "x^2-6x-1"
  std::string to_coeff_list() const;  // "-1,-6,1"

  bool operator==(const IntPoly&) const = default;

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& rhs) const;
  IntPoly operator-(const IntPoly& rhs) const;
  IntPoly operator*(const IntPoly& rhs) const;
  IntPoly operator*(const Int& c) const;

 private:
  void normalize();

  std::vector<Int> coeffs_;
};

IntPoly operator*(const Int& c, const IntPoly& p);

}  // namespace orbitprimes

#endif
