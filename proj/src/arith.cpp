#include "ultralevels/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace ultralevels {

namespace {

// Growable shared prime table. ensure_primes(limit) extends it to cover
// [2, limit]; callers take a snapshot reference under the lock.
std::mutex g_prime_mutex;
std::vector<std::uint64_t> g_primes;
std::uint64_t g_sieved_to = 1;

void extend_primes_locked(std::uint64_t limit) {
  if (limit <= g_sieved_to) return;
  std::uint64_t hi = std::max<std::uint64_t>(limit, g_sieved_to * 2);
  hi = std::max<std::uint64_t>(hi, 1 << 10);
  std::vector<bool> composite(hi + 1, false);
  g_primes.clear();
  for (std::uint64_t p = 2; p <= hi; ++p) {
    if (composite[p]) continue;
    g_primes.push_back(p);
    for (std::uint64_t m = p * p; m <= hi; m += p) composite[m] = true;
  }
  g_sieved_to = hi;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
  std::lock_guard<std::mutex> lock(g_prime_mutex);
  extend_primes_locked(limit);
  auto it = std::upper_bound(g_primes.begin(), g_primes.end(), limit);
  return std::vector<std::uint64_t>(g_primes.begin(), it);
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void descending_partitions(std::uint32_t remaining, std::uint32_t max_part,
                           PrimeSignature& acc,
                           std::vector<PrimeSignature>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
    acc.push_back(part);
    descending_partitions(remaining - part, part, acc, out);
    acc.pop_back();
  }
}

}  // namespace

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw domain_error("factorize: 0 is outside the domain");
  Factorization fact;
  fact.n = n;
  std::uint64_t rest = n;
  auto base = primes_upto(isqrt(n));
  for (std::uint64_t p : base) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    fact.factors.emplace_back(p, e);
  }
  if (rest > 1) fact.factors.emplace_back(rest, 1);
  return fact;
}

LevelIndex omega(std::uint64_t n) {
  LevelIndex total = 0;
  for (const auto& [p, e] : factorize(n).factors) total += e;
  return total;
}

std::vector<std::uint8_t> omega_sieve(std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t segment_size,
                                      unsigned jobs) {
  if (lo == 0) throw domain_error("omega_sieve: range must start at 1 or above");
  if (hi < lo) return {};
  if (segment_size == 0) segment_size = 1 << 20;
  auto base = primes_upto(isqrt(hi));
  std::vector<std::uint8_t> out(hi - lo + 1, 0);

  auto do_segment = [&](std::uint64_t seg_lo, std::uint64_t seg_hi) {
    std::size_t len = seg_hi - seg_lo + 1;
    std::vector<std::uint64_t> rem(len);
    for (std::size_t i = 0; i < len; ++i) rem[i] = seg_lo + i;
    for (std::uint64_t p : base) {
      if (p > seg_hi) break;
      std::uint64_t first = ((seg_lo + p - 1) / p) * p;
      for (std::uint64_t m = first; m <= seg_hi; m += p) {
        std::size_t i = m - seg_lo;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++out[m - lo];
        }
      }
    }
    for (std::size_t i = 0; i < len; ++i)
      if (rem[i] > 1) ++out[seg_lo + i - lo];
  };

  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
  for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
    std::uint64_t seg_hi = std::min(hi, seg_lo + segment_size - 1);
    segments.emplace_back(seg_lo, seg_hi);
    seg_lo = seg_hi + 1;
  }

  if (jobs <= 1 || segments.size() <= 1) {
    for (auto [a, b] : segments) do_segment(a, b);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= segments.size()) return;
        do_segment(segments[i].first, segments[i].second);
      }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(jobs, segments.size());
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

PrimeSignature signature(std::uint64_t n) {
  if (n < 2)
    throw domain_error("signature: defined for n >= 2 only");
  PrimeSignature sig;
  for (const auto& [p, e] : factorize(n).factors) sig.push_back(e);
  std::sort(sig.begin(), sig.end(), std::greater<>());
  return sig;
}

std::vector<PrimeSignature> signature_classes(LevelIndex i) {
  if (i == 0)
    throw domain_error("signature_classes: level 0 has no signature classes");
  std::vector<PrimeSignature> out;
  PrimeSignature acc;
  descending_partitions(i, i, acc, out);
  return out;
}

std::optional<LevelIndex> quotient_level(LevelIndex i, std::uint64_t m) {
  LevelIndex om = omega(m);
  if (om > i) return std::nullopt;
  return i - om;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  auto base = primes_upto(isqrt(n));
  for (std::uint64_t p : base) {
    if (p * p > n) break;
    if (n % p == 0) return false;
  }
  return true;
}

std::uint64_t nth_prime(std::uint64_t k) {
  if (k == 0) throw domain_error("nth_prime: index is 1-based");
  std::lock_guard<std::mutex> lock(g_prime_mutex);
  while (g_primes.size() < k) extend_primes_locked(g_sieved_to * 2);
  return g_primes[k - 1];
}

std::uint64_t prime_count_upto(std::uint64_t n) {
  auto p = primes_upto(n);
  return p.size();
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return a * b;
  if (a > UINT64_MAX / b) return std::nullopt;
  return a * b;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t a, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    auto m = checked_mul(r, a);
    if (!m) return std::nullopt;
    r = *m;
  }
  return r;
}

std::optional<std::uint64_t> exact_root(std::uint64_t n, std::uint32_t k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return n;
  if (n == 0) return std::nullopt;
  auto guess = static_cast<std::uint64_t>(
      std::round(std::pow(static_cast<double>(n), 1.0 / k)));
  for (std::uint64_t r = guess > 2 ? guess - 2 : 1; r <= guess + 2; ++r) {
    auto p = checked_pow(r, k);
    if (p && *p == n) return r;
  }
  return std::nullopt;
}

}  // namespace ultralevels
