#include "orbitprimes/intpoly.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

namespace {

const Int kZero = 0;

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw DomainError(Errc::parse_error,
                    "cannot parse polynomial \"" + std::string(text) + "\": " + why);
}

struct TermParser {
  std::string_view text;  // original, for error messages
  std::string_view rest;  // unparsed tail, whitespace stripped on demand

  void skip_ws() {
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front())))
      rest.remove_prefix(1);
  }

  bool done() {
    skip_ws();
    return rest.empty();
  }

  // digits -> Int; empty digits is an error
  Int number() {
    skip_ws();
    std::size_t len = 0;
    while (len < rest.size() && std::isdigit(static_cast<unsigned char>(rest[len]))) ++len;
    if (len == 0) parse_fail(text, "expected a number");
    Int value(std::string(rest.substr(0, len)), 10);
    rest.remove_prefix(len);
    return value;
  }

  // one term after the sign: NUMBER ['*']? ['x' ['^' NUMBER]]  |  'x' ['^' NUMBER]
  // returns (coefficient, exponent)
  std::pair<Int, unsigned long> term() {
    skip_ws();
    if (rest.empty()) parse_fail(text, "dangling sign");
    Int coeff = 1;
    bool saw_number = false;
    if (std::isdigit(static_cast<unsigned char>(rest.front()))) {
      coeff = number();
      saw_number = true;
      skip_ws();
      if (!rest.empty() && rest.front() == '*') {
        rest.remove_prefix(1);
        skip_ws();
        if (rest.empty() || rest.front() != 'x') parse_fail(text, "'*' not followed by x");
      }
    }
    unsigned long exponent = 0;
    skip_ws();
    if (!rest.empty() && rest.front() == 'x') {
      rest.remove_prefix(1);
      exponent = 1;
      skip_ws();
      if (!rest.empty() && rest.front() == '^') {
        rest.remove_prefix(1);
        Int e = number();
        if (!e.fits_ulong_p()) parse_fail(text, "exponent too large");
        exponent = e.get_ui();
      }
    } else if (!saw_number) {
      parse_fail(text, "expected a term");
    }
    return {coeff, exponent};
  }
};

IntPoly parse_human(std::string_view text) {
  TermParser p{text, text};
  std::vector<Int> coeffs;
  bool first = true;
  while (!p.done()) {
    int sign = 1;
    p.skip_ws();
    if (p.rest.front() == '+' || p.rest.front() == '-') {
      sign = p.rest.front() == '-' ? -1 : 1;
      p.rest.remove_prefix(1);
    } else if (!first) {
      parse_fail(text, "missing sign between terms");
    }
    auto [coeff, exponent] = p.term();
    if (exponent >= coeffs.size()) coeffs.resize(exponent + 1, kZero);
    coeffs[exponent] += sign * coeff;
    first = false;
  }
  if (first) parse_fail(text, "empty input");
  return IntPoly(std::move(coeffs));
}

IntPoly parse_coeff_list(std::string_view text) {
  std::vector<Int> coeffs;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string token(text.substr(pos, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - pos));
    // trim
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos) parse_fail(text, "empty coefficient");
    token = token.substr(b, e - b + 1);
    try {
      coeffs.emplace_back(token, 10);
    } catch (const std::invalid_argument&) {
      parse_fail(text, "bad coefficient \"" + token + "\"");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::from_string(std::string_view text) {
  if (text.find(',') != std::string_view::npos) return parse_coeff_list(text);
  return parse_human(text);
}

IntPoly IntPoly::identity() { return IntPoly({0, 1}); }

IntPoly IntPoly::constant(const Int& c) { return IntPoly({c}); }

const Int& IntPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Int& IntPoly::leading() const { return coeffs_.back(); }

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += Rat(coeffs_[i]);
  }
  return acc;
}

IntPoly IntPoly::compose(const IntPoly& inner, std::size_t max_coeffs) const {
  if (is_zero()) return IntPoly();
  std::size_t inner_deg = inner.is_zero() ? 0 : static_cast<std::size_t>(inner.degree());
  std::size_t result_coeffs = static_cast<std::size_t>(degree()) * inner_deg + 1;
  if (result_coeffs > max_coeffs)
    throw DomainError(Errc::cap_exceeded,
                      "composition would need " + std::to_string(result_coeffs) +
                          " coefficients (cap " + std::to_string(max_coeffs) + ")");
  IntPoly acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * inner + constant(coeffs_[i]);
  }
  return acc;
}

IntPoly IntPoly::iterate(unsigned n, std::size_t max_coeffs) const {
  IntPoly acc = identity();
  for (unsigned k = 0; k < n; ++k) acc = compose(acc, max_coeffs);
  return acc;
}

IntPoly IntPoly::sign_conjugate() const {
  std::vector<Int> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[i] = (i % 2 == 0) ? Int(-coeffs_[i]) : coeffs_[i];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::shift_conjugate(const Int& t) const {
  IntPoly shifted = compose(IntPoly({t, 1}));
  std::vector<Int> out = shifted.coeffs_;
  if (out.empty()) out.push_back(0);
  out[0] -= t;
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Int& c = coeffs_[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? '-' : '+');
    }
    if (i == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str();
      out << 'x';
      if (i > 1) out << '^' << i;
    }
  }
  return out.str();
}

std::string IntPoly::to_coeff_list() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ',';
    out << coeffs_[i].get_str();
  }
  return out.str();
}

IntPoly IntPoly::operator-() const {
  std::vector<Int> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = -coeffs_[i];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
  std::vector<Int> out(std::max(coeffs_.size(), rhs.coeffs_.size()), kZero);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] += rhs.coeffs_[i];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const { return *this + (-rhs); }

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return IntPoly();
  std::vector<Int> out(coeffs_.size() + rhs.coeffs_.size() - 1, kZero);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const Int& c) const {
  std::vector<Int> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] * c;
  return IntPoly(std::move(out));
}

IntPoly operator*(const Int& c, const IntPoly& p) { return p * c; }

}  // namespace orbitprimes
