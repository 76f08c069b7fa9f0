#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ultralevels/errors.hpp"

namespace ultralevels {

using LevelIndex = std::uint32_t;

/// Prime factorization of n >= 1 as (prime, exponent) pairs with primes
/// ascending. n == 1 iff factors is empty.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
};

/// Exponent multiset of a factorization, weakly descending: 12 -> (2,1).
/// Defined for n >= 2 only; the empty signature is not a value.
using PrimeSignature = std::vector<std::uint32_t>;

/// Factor n by trial division. Throws domain_error for n == 0.
Factorization factorize(std::uint64_t n);

/// Number of prime factors counted with multiplicity. omega(1) == 0.
LevelIndex omega(std::uint64_t n);

/// omega for every value in [lo, hi], lo >= 1, via a segmented sieve.
/// Result[k] == omega(lo + k). segment_size and jobs tune the computation
/// only; output is identical for any setting.
std::vector<std::uint8_t> omega_sieve(std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t segment_size = (1u << 20),
                                      unsigned jobs = 1);

/// Signature of n >= 2 (throws domain_error for n < 2): 8 -> (3).
PrimeSignature signature(std::uint64_t n);

/// All signature classes of level i >= 1, i.e. the integer partitions of i,
/// in descending lexicographic order: 3 -> [(3), (2,1), (1,1,1)].
/// Throws domain_error for i == 0.
std::vector<PrimeSignature> signature_classes(LevelIndex i);

/// Level of the quotient set L_i / m: L_{i - omega(m)} when omega(m) <= i,
/// empty otherwise. m >= 1.
std::optional<LevelIndex> quotient_level(LevelIndex i, std::uint64_t m);

/// True iff n is prime.
bool is_prime(std::uint64_t n);

/// The k-th prime, 1-indexed: nth_prime(1) == 2.
std::uint64_t nth_prime(std::uint64_t k);

/// Number of primes <= n.
std::uint64_t prime_count_upto(std::uint64_t n);

/// a * b, or nullopt on uint64 overflow. Set values live in [1, 2^64); an
/// overflowing product is treated as outside every descriptor's universe.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);

/// a^e with overflow check.
std::optional<std::uint64_t> checked_pow(std::uint64_t a, std::uint32_t e);

/// Exact integer k-th root if n is a perfect k-th power.
std::optional<std::uint64_t> exact_root(std::uint64_t n, std::uint32_t k);

}  // namespace ultralevels
