#include "orbitprimes/growth.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "orbitprimes/errors.hpp"
#include "orbitprimes/factorint.hpp"
#include "orbitprimes/interval.hpp"
#include "orbitprimes/orbit.hpp"

namespace orbitprimes {

namespace {

Rat rat_pow(const Rat& v, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), v.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), v.get_den().get_mpz_t(), e);
  return out;  // canonical: num/den already coprime
}

Int rat_floor(const Rat& v) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return out;
}

Int int_pow(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

unsigned long to_ulong_or_throw(const Int& v, const char* what) {
  if (!v.fits_ulong_p())
    throw DomainError(Errc::inadmissible_parameters,
                      std::string(what) + " exceeds the machine-word range");
  return v.get_ui();
}

// alpha^{-1}(f(x) - beta) - (alpha^{-1}(x - beta))^d must drop to degree
// <= d-2; checkable in exact rational arithmetic whenever alpha is
// rational. A failure would mean the normalization algebra is wrong.
void check_degree_drop(const IntPoly& poly, const Rat& alpha, const Rat& beta) {
  unsigned d = static_cast<unsigned>(poly.degree());
  Rat inv_alpha = 1 / alpha;
  std::vector<Rat> q(d + 1, Rat(0));
  for (unsigned i = 0; i <= d; ++i) q[i] = inv_alpha * Rat(poly.coeff(i));
  q[0] -= inv_alpha * beta;
  Rat inv_alpha_d = rat_pow(inv_alpha, d);
  for (unsigned i = 0; i <= d; ++i) {
    Int binom;
    mpz_bin_uiui(binom.get_mpz_t(), d, i);
    q[i] -= inv_alpha_d * Rat(binom) * rat_pow(-beta, d - i);
  }
  if (q[d] != 0 || q[d - 1] != 0)
    throw std::logic_error("affine normalization failed the degree-drop identity");
}

// ---------------------------------------------------------------------
// Laurent series solver for P(T^d) = f(P(T)), templated over the
// coefficient ring: exact rationals when alpha is rational, certified
// intervals otherwise. Laurent polynomials here have a handful of
// terms, so a map keyed by exponent is plenty.

struct RatOps {
  using Value = Rat;
  Rat from_int(const Int& v) const { return Rat(v); }
  Rat from_rat(const Rat& v) const { return v; }
  bool prune(const Rat& v) const { return v == 0; }
};

struct IntervalOps {
  using Value = Interval;
  mpfr_prec_t prec;
  Interval from_int(const Int& v) const { return Interval::from_int(v, prec); }
  Interval from_rat(const Rat& v) const { return Interval::from_rat(v, prec); }
  bool prune(const Interval&) const { return false; }
};

template <class Ops>
using Laurent = std::map<long, typename Ops::Value>;

template <class Ops>
void laurent_add_term(Laurent<Ops>& dst, long e, const typename Ops::Value& c,
                      const Ops& ops) {
  auto it = dst.find(e);
  if (it == dst.end()) {
    dst.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (ops.prune(it->second)) dst.erase(it);
  }
}

template <class Ops>
Laurent<Ops> laurent_mul(const Laurent<Ops>& a, const Laurent<Ops>& b,
                         const Ops& ops) {
  Laurent<Ops> out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) laurent_add_term<Ops>(out, ea + eb, ca * cb, ops);
  return out;
}

// f(P) by Horner over the integer coefficients of f.
template <class Ops>
Laurent<Ops> laurent_apply_poly(const IntPoly& f, const Laurent<Ops>& p,
                                const Ops& ops) {
  Laurent<Ops> acc;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = laurent_mul<Ops>(acc, p, ops);
    if (!(f.coeff(i) == 0)) laurent_add_term<Ops>(acc, 0, ops.from_int(f.coeff(i)), ops);
  }
  return acc;
}

// P(T^d) - P(T) with exponents scaled: just rescale the keys.
template <class Ops>
Laurent<Ops> laurent_stretch(const Laurent<Ops>& p, long d) {
  Laurent<Ops> out;
  for (const auto& [e, c] : p) out.emplace(e * d, c);
  return out;
}

Rat pow_value(const Rat& v, long e, const RatOps&) {
  return rat_pow(v, static_cast<unsigned long>(e));
}
Interval pow_value(const Interval& v, long e, const IntervalOps&) {
  return v.pow(Int(e));
}

Rat divide_checked(const Rat& num, const Rat& den, unsigned j, const RatOps&) {
  if (den == 0)
    throw DomainError(Errc::degenerate_linear_solve,
                      "linear coefficient vanished at j = " + std::to_string(j),
                      static_cast<long long>(j));
  return num / den;
}
Interval divide_checked(const Interval& num, const Interval& den, unsigned j,
                        const IntervalOps&) {
  if (den.contains_zero())
    throw DomainError(Errc::degenerate_linear_solve,
                      "linear coefficient not certified nonzero at j = " + std::to_string(j),
                      static_cast<long long>(j));
  return num / den;
}

bool certainly_zero(const Rat& v, const RatOps&) { return v == 0; }
bool certainly_zero(const Interval& v, const IntervalOps&) {
  return v.contains_zero();  // best an interval can certify
}

template <class Ops>
struct SolveResult {
  Laurent<Ops> p;
  bool identity_exact = false;
};

// Matching the coefficient of T^{d-1-j} determines c_{-j}: it enters
// f(P) linearly through the top term with coefficient kappa = d a c1^{d-1}
// (= d in exact mode), and enters the left side only at exponents that
// are multiples of d.
template <class Ops>
SolveResult<Ops> solve_series(const IntPoly& f, unsigned k,
                              const typename Ops::Value& c1, const Rat& beta,
                              const Ops& ops) {
  long d = f.degree();
  Laurent<Ops> p;
  p.emplace(1, c1);
  if (!ops.prune(ops.from_rat(beta))) p.emplace(0, ops.from_rat(beta));

  typename Ops::Value kappa =
      ops.from_int(Int(d) * f.leading()) * pow_value(c1, d - 1, ops);

  for (unsigned j = 1; j + 1 <= k; ++j) {
    Laurent<Ops> rhs = laurent_apply_poly<Ops>(f, p, ops);
    long e = d - 1 - static_cast<long>(j);
    typename Ops::Value lambda = ops.from_int(0);
    if (e == 0) {
      auto it = p.find(0);
      if (it != p.end()) lambda = it->second;
    } else if (e < 0 && e % d == 0) {
      auto it = p.find(e / d);
      if (it != p.end()) lambda = it->second;
    }
    typename Ops::Value rhs_e = ops.from_int(0);
    if (auto it = rhs.find(e); it != rhs.end()) rhs_e = it->second;
    typename Ops::Value c = divide_checked(lambda - rhs_e, kappa, j, ops);
    if (!ops.prune(c)) p.emplace(-static_cast<long>(j), c);  // c_{-j} sits at T^{-j}
  }

  // Every order from T^d down to T^{d-k} must now match; anything left
  // there means the solve itself is broken.
  Laurent<Ops> discrepancy = laurent_apply_poly<Ops>(f, p, ops);
  Laurent<Ops> lhs = laurent_stretch<Ops>(p, d);
  for (const auto& [e, c] : lhs) {
    typename Ops::Value neg = ops.from_int(0) - c;
    laurent_add_term<Ops>(discrepancy, e, neg, ops);
  }
  bool identity = true;
  for (const auto& [e, c] : discrepancy) {
    if (e >= d - static_cast<long>(k)) {
      if (!certainly_zero(c, ops))
        throw std::logic_error("series solve left a discrepancy at order " +
                               std::to_string(e));
    }
    if (!certainly_zero(c, ops)) identity = false;
  }
  return {std::move(p), identity};
}

}  // namespace

AffineNorm normalize_affine(const IntPoly& poly, unsigned precision_bits) {
  int d = poly.degree();
  if (d < 2)
    throw DomainError(Errc::degree_too_small, "affine normalization needs degree >= 2");
  const Int& a = poly.leading();
  if (a < 0)
    throw DomainError(Errc::negative_leading,
                      "leading coefficient is negative; sign-conjugate first");

  AffineNorm out;
  out.degree = static_cast<unsigned>(d);
  out.lead = a;
  out.beta = Rat(-poly.coeff(static_cast<std::size_t>(d) - 1)) / Rat(Int(d) * a);

  Int root;
  if (mpz_root(root.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(d) - 1) != 0) {
    out.alpha_exact = true;
    out.alpha_lo = out.alpha_hi = Rat(1) / Rat(root);
    check_degree_drop(poly, out.alpha_lo, out.beta);
  } else {
    out.alpha_exact = false;
    Interval ar = Interval::from_int(a, precision_bits)
                      .root(static_cast<unsigned long>(d) - 1);
    Interval alpha = Interval::from_int(1, precision_bits) / ar;
    out.alpha_lo = alpha.lo();
    out.alpha_hi = alpha.hi();
  }
  return out;
}

TauEstimate estimate_tau(const IntPoly& poly, const Int& start,
                         std::size_t n_max, unsigned precision_bits) {
  AffineNorm norm = normalize_affine(poly, precision_bits);
  if (!is_wandering(poly, start))
    throw DomainError(Errc::not_wandering,
                      "orbit of " + start.get_str() + " is not wandering");
  if (n_max < 1)
    throw DomainError(Errc::inadmissible_parameters, "n_max must be >= 1");

  unsigned d = norm.degree;
  const Int& a = norm.lead;
  const Rat& beta = norm.beta;
  std::size_t n_used = n_max + 1;

  Orbit orb(poly, start);
  std::span<const Int> x = orb.extend(n_used);

  Rat half(1, 2);
  std::vector<Rat> s(n_used + 1), t(n_used + 1);
  for (std::size_t i = 0; i <= n_used; ++i) {
    Rat centered = Rat(x[i]) - beta;
    s[i] = centered - half;
    t[i] = centered + half;
  }

  // sandwich_ok[k]: a s_k^d < s_{k+1} and t_{k+1} < a t_k^d, exactly.
  std::vector<bool> sandwich_ok(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k)
    sandwich_ok[k] = Rat(a) * rat_pow(s[k], d) < s[k + 1] &&
                     t[k + 1] < Rat(a) * rat_pow(t[k], d);

  std::vector<bool> suffix_ok(n_max + 2, true);
  for (std::size_t k = n_max + 1; k-- > 0;)
    suffix_ok[k] = sandwich_ok[k] && suffix_ok[k + 1];

  // Entry condition y_n = alpha^{-1}(x_n - beta) > 1, as an exact check:
  // x_n - beta > 0 and a (x_n - beta)^{d-1} > 1.
  std::optional<std::size_t> chain_start;
  for (std::size_t n = 0; n <= n_max; ++n) {
    Rat centered = Rat(x[n]) - beta;
    if (centered > 0 && Rat(a) * rat_pow(centered, d - 1) > 1 && suffix_ok[n]) {
      chain_start = n;
      break;
    }
  }
  if (!chain_start)
    throw DomainError(Errc::no_bracketing_index,
                      "no index within n_max enters the certified sandwich");

  // The bracket needs s > 0; once s_m > 0 inside the chain it stays
  // positive (s_{k+1} > a s_k^d > 0).
  std::size_t m0 = *chain_start;
  while (m0 <= n_used && s[m0] <= 0) ++m0;
  if (m0 > n_used || s[n_used] <= 0)
    throw DomainError(Errc::no_bracketing_index,
                      "bracketing quantity never turns positive within n_max");

  TauEstimate est;
  est.poly = poly;
  est.start = start;
  est.degree = d;
  est.lead = a;
  est.alpha_exact = norm.alpha_exact;
  est.alpha_lo = norm.alpha_lo;
  est.alpha_hi = norm.alpha_hi;
  est.beta = beta;
  est.chain_start = m0;
  est.n_used = n_used;
  est.precision_bits = precision_bits;

  // tau^{d^n} is bracketed by s_n/alpha and t_n/alpha, so tau itself by
  // (a s_n^{d-1})^{1/M} and (a t_n^{d-1})^{1/M} with M = (d-1) d^n.
  Int m_exp = Int(d - 1) * int_pow(Int(d), n_used);
  unsigned long m_ul = to_ulong_or_throw(m_exp, "root index (d-1) d^n_used");
  est.lo = Interval::from_rat(Rat(a) * rat_pow(s[n_used], d - 1), precision_bits)
               .root(m_ul)
               .lo();
  est.hi = Interval::from_rat(Rat(a) * rat_pow(t[n_used], d - 1), precision_bits)
               .root(m_ul)
               .hi();
  if (est.lo < 1)
    throw DomainError(Errc::no_bracketing_index,
                      "bracket dips below 1 at n_used; increase n_max");

  // From here on the nearest integer is x_n; it equals |x_n| once the
  // terms are positive, which they stay after first turning positive.
  std::size_t horizon = n_used + 1;
  for (std::size_t n = n_used + 1; n-- > m0;) {
    if (x[n] >= 1)
      horizon = n;
    else
      break;
  }
  est.horizon = horizon;
  return est;
}

Int reconstruct(const IntPoly& poly, const TauEstimate& est, std::size_t n) {
  if (!(poly == est.poly))
    throw DomainError(Errc::inadmissible_parameters,
                      "estimate was computed for a different map");
  if (n < est.horizon)
    throw DomainError(Errc::horizon_violation,
                      "reconstruction certified only from index " +
                          std::to_string(est.horizon),
                      static_cast<long long>(n));

  Int e = int_pow(Int(est.degree), n);
  mpfr_prec_t prec = est.precision_bits;
  Interval alpha = Interval::from_endpoints(est.alpha_lo, est.alpha_hi, prec);
  Interval tau = Interval::from_endpoints(est.lo, est.hi, prec);
  Interval value = alpha * tau.pow(e) + Interval::from_rat(est.beta, prec);

  Rat half(1, 2);
  Int r_lo = rat_floor(value.lo() + half);
  Int r_hi = rat_floor(value.hi() + half);
  if (r_lo != r_hi)
    throw DomainError(Errc::interval_too_wide,
                      "interval ends round differently at n = " + std::to_string(n),
                      static_cast<long long>(n));
  return r_lo;
}

SeriesTruncation series_coefficients(const IntPoly& poly, unsigned k,
                                     unsigned precision_bits) {
  if (k < 1)
    throw DomainError(Errc::inadmissible_parameters, "truncation length must be >= 1");
  AffineNorm norm = normalize_affine(poly, precision_bits);

  SeriesTruncation out;
  out.k = k;
  out.degree = norm.degree;
  out.exact = norm.alpha_exact;
  out.coeff_lo.resize(k + 1, Rat(0));
  out.coeff_hi.resize(k + 1, Rat(0));

  if (norm.alpha_exact) {
    SolveResult<RatOps> solved =
        solve_series<RatOps>(poly, k, norm.alpha_lo, norm.beta, RatOps{});
    out.identity_exact = solved.identity_exact;
    for (unsigned j = 0; j <= k; ++j) {
      auto it = solved.p.find(1 - static_cast<long>(j));
      Rat c = it == solved.p.end() ? Rat(0) : it->second;
      out.coeff_lo[j] = c;
      out.coeff_hi[j] = c;
    }
  } else {
    IntervalOps ops{static_cast<mpfr_prec_t>(precision_bits)};
    Interval c1 = Interval::from_endpoints(norm.alpha_lo, norm.alpha_hi,
                                           ops.prec);
    SolveResult<IntervalOps> solved =
        solve_series<IntervalOps>(poly, k, c1, norm.beta, ops);
    out.identity_exact = false;
    for (unsigned j = 0; j <= k; ++j) {
      auto it = solved.p.find(1 - static_cast<long>(j));
      if (it == solved.p.end()) continue;
      out.coeff_lo[j] = it->second.lo();
      out.coeff_hi[j] = it->second.hi();
    }
  }
  return out;
}

std::vector<std::pair<long, Rat>> series_discrepancy(const IntPoly& poly,
                                                     const SeriesTruncation& trunc) {
  if (!trunc.exact)
    throw DomainError(Errc::inadmissible_parameters,
                      "discrepancy listing requires exact coefficients");
  RatOps ops;
  Laurent<RatOps> p;
  for (unsigned j = 0; j <= trunc.k; ++j)
    if (trunc.coeff_lo[j] != 0)
      p.emplace(1 - static_cast<long>(j), trunc.coeff_lo[j]);
  Laurent<RatOps> disc = laurent_apply_poly<RatOps>(poly, p, ops);
  Laurent<RatOps> lhs = laurent_stretch<RatOps>(p, poly.degree());
  for (const auto& [e, c] : lhs) laurent_add_term<RatOps>(disc, e, -c, ops);
  std::vector<std::pair<long, Rat>> out(disc.begin(), disc.end());
  std::reverse(out.begin(), out.end());
  return out;
}

ResidualReport series_residual_check(const IntPoly& poly, const TauEstimate& est,
                                     SeriesTruncation& trunc, std::size_t n_lo,
                                     std::size_t n_hi) {
  if (n_lo > n_hi)
    throw DomainError(Errc::inadmissible_parameters, "empty residual range");
  if (!(poly == est.poly))
    throw DomainError(Errc::inadmissible_parameters,
                      "estimate was computed for a different map");

  mpfr_prec_t prec = est.precision_bits;
  Interval tau = Interval::from_endpoints(est.lo, est.hi, prec);
  Orbit orb(poly, est.start);
  std::span<const Int> x = orb.extend(n_hi);

  ResidualReport report;
  report.identically_zero = trunc.identity_exact;
  report.fitted_c = Rat(0);
  report.decay_certified = true;

  std::optional<ResidualRow> prev;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    Int e = int_pow(Int(est.degree), n);
    Interval tp = tau.pow(e);
    Interval sum(prec);
    for (unsigned j = 0; j <= trunc.k; ++j) {
      Interval c = Interval::from_endpoints(trunc.coeff_lo[j], trunc.coeff_hi[j], prec);
      long exp = 1 - static_cast<long>(j);
      sum = sum + c * tp.pow(Int(exp));
    }
    Interval res = (Interval::from_int(x[n], prec) - sum).abs();
    Interval scaled = res * tp.pow(Int(trunc.k));

    ResidualRow row;
    row.n = n;
    row.res_lo = res.lo();
    row.res_hi = res.hi();
    row.scaled_lo = scaled.lo();
    row.scaled_hi = scaled.hi();
    if (row.scaled_hi > report.fitted_c) report.fitted_c = row.scaled_hi;

    if (prev) {
      row.decrease_certified = row.res_hi < prev->res_lo;
      if (!report.identically_zero) {
        if (row.scaled_hi <= prev->scaled_lo) {
          // certified non-increase
        } else if (row.scaled_lo > prev->scaled_hi) {
          report.decay_certified = false;  // certified increase: honest data
        } else {
          throw DomainError(Errc::interval_too_wide,
                            "residual intervals overlap at n = " + std::to_string(n) +
                                "; re-estimate tau more deeply",
                            static_cast<long long>(n));
        }
      }
    }
    report.rows.push_back(row);
    prev = row;
  }

  if (report.identically_zero) report.fitted_c = Rat(0);
  trunc.fitted_c = report.fitted_c;
  return report;
}

MillsResult mills_sequence(const Int& p0, std::size_t count,
                           unsigned precision_bits, const MillsPicker& picker) {
  if (count < 1)
    throw DomainError(Errc::inadmissible_parameters, "count must be >= 1");
  if (p0 < 2 || !is_probable_prime(p0))
    throw DomainError(Errc::not_prime, p0.get_str() + " is not prime");

  MillsResult out;
  out.primes.push_back(p0);
  for (std::size_t i = 1; i < count; ++i) {
    const Int& p = out.primes.back();
    Int lo = p * p * p;
    Int hi = (p + 1) * (p + 1) * (p + 1);
    std::optional<Int> next;
    if (picker) {
      next = picker(lo, hi);
      if (next && (*next <= lo || *next >= hi || !is_probable_prime(*next)))
        throw DomainError(Errc::inadmissible_parameters,
                          "picker returned a value that is out of range or composite");
    } else {
      for (Int q = lo + 1; q < hi; ++q) {
        if (is_probable_prime(q)) {
          next = q;
          break;
        }
      }
    }
    if (!next)
      throw DomainError(Errc::empty_interval,
                        "no prime found in (" + lo.get_str() + ", " + hi.get_str() + ")",
                        static_cast<long long>(i));
    out.primes.push_back(*next);
  }

  std::size_t last = count - 1;
  Int three_last = int_pow(Int(3), last);
  unsigned long three_last_ul = to_ulong_or_throw(three_last, "3^count");
  const Int& p_last = out.primes[last];
  // enough precision to hold p_last exactly, so count == 1 yields [p0, p0 + 1]
  mpfr_prec_t prec = std::max<mpfr_prec_t>(
      precision_bits, mpz_sizeinbase(p_last.get_mpz_t(), 2) + 2);
  out.tau_lo = Interval::from_int(p_last, prec).root(three_last_ul).lo();
  out.tau_hi = Interval::from_int(p_last + 1, prec).root(three_last_ul).hi();

  // floor(t^{3^n}) = p_n for every t in [p_last^{3^-last}, (p_last+1)^{3^-last})
  // reduces to exact integer comparisons at both interval ends.
  out.floor_verified = true;
  for (std::size_t n = 0; n <= last; ++n) {
    unsigned long e = to_ulong_or_throw(int_pow(Int(3), last - n), "3^(last-n)");
    if (!(int_pow(out.primes[n], e) <= p_last &&
          p_last + 1 <= int_pow(out.primes[n] + 1, e))) {
      out.floor_verified = false;
      break;
    }
  }
  return out;
}

}  // namespace orbitprimes
