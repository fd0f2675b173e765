#include "orbitprimes/factorint.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "orbitprimes/errors.hpp"

namespace orbitprimes {

namespace {

// Shared prime table, grown on demand. Budgets rarely exceed the
// default bound, so the usual case is one sieve for the process.
const std::vector<unsigned long>& primes_upto(unsigned long bound) {
  static std::mutex mu;
  static std::vector<unsigned long> primes;
  static unsigned long sieved = 1;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved) {
    unsigned long limit = std::max(bound, 1000000ul);
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (unsigned long p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      primes.push_back(p);
      for (unsigned long q = p * p; q <= limit; q += p) composite[q] = true;
    }
    sieved = limit;
  }
  return primes;
}

bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, unsigned s) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // base witnesses compositeness
}

// Strong Lucas probable prime test, Selfridge parameter choice:
// first D in 5, -7, 9, -11, ... with jacobi(D, n) = -1; P = 1,
// Q = (1 - D) / 4.
bool strong_lucas_probable_prime(const Int& n) {
  // Perfect squares never yield jacobi(D, n) = -1; rule them out first.
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  Int d_param = 5;
  while (true) {
    int j = mpz_jacobi(d_param.get_mpz_t(), n.get_mpz_t());
    if (j == 0) return false;  // gcd(D, n) > 1 exposes a factor; n >> |D| here
    if (j == -1) break;
    d_param = d_param > 0 ? Int(-(d_param + 2)) : Int(-(d_param - 2));
  }
  Int q_param = (1 - d_param) / 4;

  // n + 1 = d * 2^s with d odd
  Int d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  auto half_mod = [&n](Int v) {
    v %= n;
    if (v < 0) v += n;
    if (v % 2 != 0) v += n;  // n is odd, so one of v, v+n is even
    v >>= 1;
    return v;
  };

  // Binary chain for U_d, V_d (P = 1): double then conditionally add 1.
  Int u = 1, v = 1;                   // U_1, V_1
  Int qk = q_param % n;               // Q^k for current k
  if (qk < 0) qk += n;
  std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    // (U, V)_k -> (U, V)_{2k}
    u = u * v % n;
    v = (v * v - 2 * qk) % n;
    qk = qk * qk % n;
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      // (U, V)_{2k} -> (U, V)_{2k+1}
      Int u_next = half_mod(u + v);
      Int v_next = half_mod(d_param * u + v);
      u = u_next;
      v = v_next;
      qk = qk * q_param % n;
    }
    if (u < 0) u += n;
    if (v < 0) v += n;
    if (qk < 0) qk += n;
  }

  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = (v * v - 2 * qk) % n;
    if (v < 0) v += n;
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

// Brent's cycle-finding variant of Pollard rho. Deterministic: the
// polynomial offset starts at 1 and increments on failure. Returns a
// nontrivial factor or nullopt when the iteration budget is exhausted.
std::optional<Int> brent_rho(const Int& n, unsigned long& iterations_left) {
  constexpr unsigned long kBatch = 128;
  for (Int c = 1; iterations_left > 0; ++c) {
    if (c == n - 2) break;
    Int y = 2, q = 1, g = 1, x, ys;
    unsigned long r = 1;
    while (g == 1 && iterations_left > 0) {
      x = y;
      for (unsigned long i = 0; i < r && iterations_left > 0; ++i) {
        y = (y * y + c) % n;
        --iterations_left;
      }
      unsigned long k = 0;
      while (k < r && g == 1 && iterations_left > 0) {
        ys = y;
        unsigned long steps = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < steps && iterations_left > 0; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
          --iterations_left;
        }
        g = gcd(q, n);
        k += steps;
      }
      r *= 2;
    }
    if (g == n) {
      // Batch overshot: replay one step at a time from the saved point.
      // The collapsing step lies within the last batch, so kBatch steps
      // suffice; if none splits, fall through to the next offset.
      g = 1;
      for (unsigned long i = 0; i < kBatch && g == 1; ++i) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g > 1 && g < n) return g;
    // g == n: cycle collapsed for this c; try the next offset.
  }
  return std::nullopt;
}

}  // namespace

Int Factorization::reassemble() const {
  Int out = unit;
  for (const auto& [p, e] : prime_powers) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    out *= pe;
  }
  if (cofactor) out *= *cofactor;
  return out;
}

bool is_probable_prime(const Int& n) {
  Int m = abs(n);
  if (m < 2) return false;
  static const unsigned long kSmall[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47};
  for (unsigned long p : kSmall) {
    if (m == p) return true;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
  }

  Int d = m - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  if (m.fits_ulong_p() || mpz_sizeinbase(m.get_mpz_t(), 2) <= 64) {
    // Deterministic witness set for the word-sized range.
    static const unsigned long kWitnesses[] = {2,  3,  5,  7,  11, 13,
                                               17, 19, 23, 29, 31, 37};
    for (unsigned long w : kWitnesses)
      if (miller_rabin_witness(m, Int(w), d, static_cast<unsigned>(s))) return false;
    return true;
  }

  if (miller_rabin_witness(m, Int(2), d, static_cast<unsigned>(s))) return false;
  return strong_lucas_probable_prime(m);
}

Factorization factor(const Int& n, const EffortBudget& budget) {
  if (n == 0)
    throw DomainError(Errc::inadmissible_parameters, "factor(0) is undefined");

  Factorization out;
  out.n = n;
  out.unit = n < 0 ? -1 : 1;

  std::map<Int, unsigned> powers;
  Int m = abs(n);

  for (unsigned long p : primes_upto(budget.trial_bound)) {
    if (p > budget.trial_bound) break;
    if (m == 1) break;
    // Once p^2 > m the remainder is prime (all smaller primes removed).
    if (Int(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++powers[Int(p)];
    }
  }

  std::vector<Int> pending;
  if (m > 1) pending.push_back(m);
  unsigned long iterations_left = budget.rho_iterations;
  std::vector<Int> stuck;

  while (!pending.empty()) {
    Int v = pending.back();
    pending.pop_back();
    if (is_probable_prime(v)) {
      ++powers[v];
      continue;
    }
    // Perfect powers trip up rho; peel them directly.
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      std::size_t vbits = mpz_sizeinbase(v.get_mpz_t(), 2);
      bool split = false;
      for (unsigned long e = 2; e <= vbits; ++e) {
        Int root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), e) != 0) {
          for (unsigned long i = 0; i < e; ++i) pending.push_back(root);
          split = true;
          break;
        }
      }
      if (split) continue;
    }
    std::optional<Int> divisor = brent_rho(v, iterations_left);
    if (!divisor) {
      stuck.push_back(v);
      continue;
    }
    pending.push_back(*divisor);
    pending.push_back(v / *divisor);
  }

  out.prime_powers.assign(powers.begin(), powers.end());
  if (!stuck.empty()) {
    Int c = 1;
    for (const Int& v : stuck) c *= v;
    out.cofactor = c;
  }
  return out;
}

std::vector<PrivatePrime> private_primes(const CoprimeSeq& seq,
                                         const EffortBudget& budget) {
  std::vector<PrivatePrime> out;
  out.reserve(seq.terms.size());
  for (std::size_t i = 0; i < seq.terms.size(); ++i) {
    PrivatePrime row;
    row.index = seq.start_index + i;
    row.term = seq.terms[i];
    if (abs(row.term) <= 1) {
      row.skipped = true;
    } else {
      Factorization f = factor(row.term, budget);
      if (!f.prime_powers.empty()) row.prime = f.prime_powers.front().first;
      // Trial division finds the globally smallest factor first; a rho
      // prime with a smaller one hiding in the cofactor is possible but
      // the returned prime is still a genuine private prime.
    }
    out.push_back(std::move(row));
  }
  return out;
}

PrimitivePrimes primitive_primes(const std::vector<Int>& terms, std::size_t upto,
                                 const EffortBudget& budget) {
  if (upto < 1 || upto >= terms.size())
    throw DomainError(Errc::inadmissible_parameters,
                      "need 1 <= upto < terms.size()");
  for (std::size_t m = 1; m <= upto; ++m)
    if (terms[m] == 0)
      throw DomainError(Errc::inadmissible_parameters,
                        "term " + std::to_string(m) + " is zero");

  PrimitivePrimes out;
  out.upto = upto;
  Factorization f = factor(terms[upto], budget);
  out.complete = f.complete();
  for (const auto& [p, e] : f.prime_powers) {
    bool fresh = true;
    for (std::size_t m = 1; m < upto && fresh; ++m)
      if (mpz_divisible_p(terms[m].get_mpz_t(), p.get_mpz_t())) fresh = false;
    if (fresh) out.primes.push_back(p);
  }
  return out;
}

}  // namespace orbitprimes
