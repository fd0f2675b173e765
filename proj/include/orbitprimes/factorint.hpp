#ifndef ORBITPRIMES_FACTORINT_HPP
#define ORBITPRIMES_FACTORINT_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "orbitprimes/coprime.hpp"
#include "orbitprimes/intpoly.hpp"

namespace orbitprimes {

// Bounded work: trial division by primes <= trial_bound, then Brent-rho
// with at most rho_iterations map steps in total across all splits.
// When the budget runs out the unsplit part is returned as a composite
// cofactor instead of spinning forever.
struct EffortBudget {
  unsigned long trial_bound = 1000000;
  unsigned long rho_iterations = 10000000;
};

struct Factorization {
  Int n = 0;
  int unit = 1;  // sign of n
  std::vector<std::pair<Int, unsigned>> prime_powers;  // ascending primes
  std::optional<Int> cofactor;  // composite remainder the budget couldn't split

  bool complete() const { return !cofactor.has_value(); }
  Int reassemble() const;  // unit * product(p^e) * cofactor
};

// Deterministic Miller-Rabin for |n| < 2^64 (a fixed witness set proven
// sufficient there). Above that, base-2 strong probable prime plus a
// strong Lucas test with Selfridge parameters; no composite passing
// both is known, and none exists below 2^64. Treat the answer as
// certain below 2^64 and as overwhelmingly probable above.
bool is_probable_prime(const Int& n);

// Requires n != 0. factor(1) and factor(-1) have empty prime_powers.
Factorization factor(const Int& n, const EffortBudget& budget = {});

struct PrivatePrime {
  std::size_t index = 0;            // absolute index in the sequence
  Int term = 0;                     // a_index
  std::optional<Int> prime;         // smallest prime factor found
  bool skipped = false;             // |a_index| <= 1: nothing to extract
};

// Smallest found prime factor of each |a_n|; the pairwise coprimality
// of the input sequence makes these pairwise distinct. prime is empty
// with skipped = false when the budget found no prime at all (the whole
// term survived as a composite cofactor).
std::vector<PrivatePrime> private_primes(const CoprimeSeq& seq,
                                         const EffortBudget& budget = {});

struct PrimitivePrimes {
  std::size_t upto = 0;
  std::vector<Int> primes;  // prime factors of x_upto dividing no earlier x_m
  bool complete = false;    // factorization of x_upto was complete
};

// terms[0..] is any integer sequence with terms[m] != 0 for 1 <= m <= upto;
// terms[0] is ignored (index 0 is conventionally the seed). Reports the
// certified prime factors of terms[upto] that divide none of
// terms[1..upto-1]. With an incomplete factorization the answer is a
// certified subset, flagged by complete = false.
PrimitivePrimes primitive_primes(const std::vector<Int>& terms, std::size_t upto,
                                 const EffortBudget& budget = {});

}  // namespace orbitprimes

#endif
