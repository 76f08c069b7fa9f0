#include "ultralevels/checker.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ultralevels/errors.hpp"
#include "ultralevels/filter.hpp"
#include "ultralevels/setlang.hpp"
#include "ultralevels/witnesses.hpp"

namespace ultralevels {

namespace {

// --- independent oracles (trial division only; no library calls) ---

LevelIndex brute_omega(std::uint64_t n) {
  LevelIndex c = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++c;
    }
  if (n > 1) ++c;
  return c;
}

// prime factors with multiplicity, ascending: 60 -> {2, 2, 3, 5}
std::vector<std::uint64_t> prime_factor_list(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      out.push_back(p);
    }
  if (n > 1) out.push_back(n);
  return out;
}

// smallest multiple of n with exactly k prime factors, by ascending scan
std::optional<std::uint64_t> brute_smallest_multiple(std::uint64_t n,
                                                     LevelIndex k) {
  for (std::uint64_t t = 1;; ++t) {
    auto m = checked_mul(n, t);
    if (!m) return std::nullopt;
    if (brute_omega(*m) == k) return *m;
    if (t > 1'000'000) return std::nullopt;
  }
}

// smallest divisor of n with exactly k prime factors, over all divisors
std::optional<std::uint64_t> brute_smallest_factor(std::uint64_t n,
                                                   LevelIndex k) {
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      divs.push_back(d);
      divs.push_back(n / d);
    }
  std::sort(divs.begin(), divs.end());
  for (auto d : divs)
    if (brute_omega(d) == k) return d;
  return std::nullopt;
}

SetDesc levels_upto(LevelIndex n) {
  SetDesc u = SetDesc::level(0);
  for (LevelIndex i = 1; i <= n; ++i)
    u = SetDesc::union_of(std::move(u), SetDesc::level(i));
  return u;
}

// The stock of bases whose members avoid every finite level: tails of each
// registered diagonal plus tails of {3*2^j}.
std::vector<FilterBase> not_on_level_catalog() {
  std::vector<FilterBase> out;
  for (const auto& sel : selector_names())
    out.push_back(tails_base(SetDesc::diagonal(sel)));
  out.push_back(tails_base(SetDesc::geom_times(3, 2)));
  return out;
}

// --- case accounting ---

constexpr std::size_t kFailureCap = 20;

struct Tally {
  SuiteResult r;
  std::uint64_t suppressed = 0;

  void pass() {
    ++r.cases_run;
    ++r.proven;
  }
  void open() {
    ++r.cases_run;
    ++r.consistent;
  }
  void fail(const std::string& line) {
    ++r.cases_run;
    ++r.refuted;
    if (r.failures.size() < kFailureCap)
      r.failures.push_back(line);
    else
      ++suppressed;
  }
  // a case that must hold outright
  void check(bool ok, const std::string& line) {
    if (ok)
      pass();
    else
      fail(line);
  }
  // a case whose claim is "not refuted"; open verdicts stay visible
  void verdict(const Verdict& v, const std::string& what) {
    if (v.is_proven())
      pass();
    else if (v.is_refuted())
      fail(what + " -> " + v.str());
    else
      open();
  }
  void finalize() {
    if (suppressed > 0)
      r.failures.push_back("... " + std::to_string(suppressed) +
                           " more failures suppressed");
  }
};

std::string u64s(std::uint64_t v) { return std::to_string(v); }

// deterministic cross-platform draw in [lo, hi]
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

Alpha random_alpha(std::mt19937_64& rng, std::uint64_t sigma_cap) {
  static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
  for (;;) {
    Alpha a;
    std::size_t entries = static_cast<std::size_t>(draw(rng, 1, 3));
    for (std::size_t e = 0; e < entries; ++e) {
      AlphaEntry ent;
      ent.basic = primes[draw(rng, 0, 5)];
      ent.k = static_cast<std::uint32_t>(draw(rng, 1, 3));
      ent.mult = static_cast<std::uint32_t>(draw(rng, 1, 2));
      a.entries.push_back(std::move(ent));
    }
    if (sigma(a) >= 1 && sigma(a) <= sigma_cap) return a;
  }
}

// --- suites ---

void suite_level_partition(const SuiteParams& p, Tally& t) {
  const std::uint64_t B = p.bound;
  auto sieve = omega_sieve(1, B, 1u << 20, std::max(1u, p.jobs));
  LevelIndex top = 0;
  while ((1ull << (top + 1)) <= B) ++top;  // largest reachable level
  for (std::uint64_t n = 1; n <= B; ++n) {
    LevelIndex oracle = brute_omega(n);
    bool ok = omega(n) == oracle && sieve[n - 1] == oracle;
    unsigned memberships = 0;
    for (LevelIndex i = 0; i <= top; ++i)
      if (SetDesc::level(i).member(n)) ++memberships;
    ok = ok && memberships == 1 && SetDesc::level(oracle).member(n);
    t.check(ok, "n=" + u64s(n) + ": omega/level membership mismatch (omega=" +
                    u64s(omega(n)) + " sieve=" + u64s(sieve[n - 1]) +
                    " oracle=" + u64s(oracle) +
                    " memberships=" + u64s(memberships) + ")");
  }
}

void suite_signature_partition(const SuiteParams& p, Tally& t) {
  const std::uint64_t B = p.bound;
  std::vector<std::vector<PrimeSignature>> classes(9);
  for (LevelIndex i = 1; i <= 8; ++i) {
    classes[i] = signature_classes(i);
    // classes are strictly descending in lexicographic order
    bool desc = true;
    for (std::size_t j = 0; j + 1 < classes[i].size(); ++j)
      if (!(classes[i][j + 1] < classes[i][j])) desc = false;
    t.check(desc, "classes(" + u64s(i) + ") not in descending order");
  }
  for (std::uint64_t n = 2; n <= B; ++n) {
    LevelIndex om = brute_omega(n);
    if (om < 1 || om > 8) continue;
    PrimeSignature sig = signature(n);
    std::uint64_t total = 0;
    for (auto e : sig) total += e;
    std::size_t hits = 0;
    for (const auto& c : classes[om])
      if (c == sig) ++hits;
    t.check(total == om && hits == 1,
            "n=" + u64s(n) + ": signature does not match exactly one class " +
                "of its level (sum=" + u64s(total) + " level=" + u64s(om) +
                " hits=" + u64s(hits) + ")");
  }
  // the three sample elements of level 3, one per class
  t.check(signature(8) == PrimeSignature{3}, "signature(8) != (3)");
  t.check(signature(12) == (PrimeSignature{2, 1}), "signature(12) != (2,1)");
  t.check(signature(30) == (PrimeSignature{1, 1, 1}),
          "signature(30) != (1,1,1)");
}

void suite_omega_additivity(const SuiteParams& p, Tally& t) {
  const std::uint64_t M = std::min<std::uint64_t>(2000, p.bound);
  auto sieve = omega_sieve(1, M * M, 1u << 20, std::max(1u, p.jobs));
  for (std::uint64_t m = 1; m <= M; ++m)
    for (std::uint64_t n = 1; n <= M; ++n) {
      bool ok = sieve[m * n - 1] == sieve[m - 1] + sieve[n - 1];
      if (ok)
        t.pass();
      else
        t.fail("omega(" + u64s(m) + "*" + u64s(n) + ") != omega(" + u64s(m) +
               ")+omega(" + u64s(n) + ")");
    }
}

void suite_quotient_law(const SuiteParams& p, Tally& t) {
  const std::uint64_t R = p.bound;
  const std::uint64_t M = std::min<std::uint64_t>(1000, p.bound);
  auto sieve = omega_sieve(1, R * M, 1u << 20, std::max(1u, p.jobs));
  for (LevelIndex i = 0; i <= 8; ++i)
    for (std::uint64_t m = 1; m <= M; ++m) {
      auto ql = quotient_level(i, m);
      std::optional<std::uint64_t> bad;
      for (std::uint64_t r = 1; r <= R && !bad; ++r) {
        bool in_quotient = sieve[r * m - 1] == i;
        bool predicted = ql.has_value() && sieve[r - 1] == *ql;
        if (in_quotient != predicted) bad = r;
      }
      // the level descriptor normalizes quotients the same way
      SetDesc q = SetDesc::quotient(SetDesc::level(i), m);
      SetDesc want = ql ? SetDesc::level(*ql) : SetDesc::finite({});
      if (q != want)
        t.fail("quotient descriptor of level(" + u64s(i) + ")/" + u64s(m) +
               " is " + q.str() + ", want " + want.str());
      else if (bad)
        t.fail("quotient_level(" + u64s(i) + "," + u64s(m) +
               ") disagrees with brute force at r=" + u64s(*bad));
      else
        t.pass();
    }
}

void suite_finite_union(const SuiteParams& p, Tally& t) {
  const std::uint64_t M = std::min<std::uint64_t>(500, p.bound);
  std::vector<SetDesc> unions;
  for (LevelIndex n = 0; n <= 8; ++n) unions.push_back(levels_upto(n));
  for (std::uint64_t m = 1; m <= M; ++m) {
    LevelIndex om = brute_omega(m);
    FilterBase x = principal(m);
    for (LevelIndex n = 0; n <= 8; ++n) {
      bool expect_in = om <= n;
      // pointwise: membership in the union is membership in some level
      bool some_level = false;
      for (LevelIndex i = 0; i <= n; ++i)
        if (SetDesc::level(i).member(m)) some_level = true;
      if (unions[n].member(m) != some_level || some_level != expect_in) {
        t.fail("m=" + u64s(m) + " n=" + u64s(n) +
               ": union membership disagrees with per-level membership");
        continue;
      }
      Verdict v = contains(x, unions[n], p.bound);
      bool ok = expect_in ? v.is_proven()
                          : (v.is_refuted() && v.counterexample == m);
      t.check(ok, "principal:" + u64s(m) + " vs union of levels 0.." +
                      u64s(n) + " -> " + v.str());
    }
  }
}

void suite_falpha_level(const SuiteParams& p, Tally& t) {
  std::vector<Alpha> alphas;
  // worked examples: a square of primes, a product of two distinct primes,
  // and a mixed two-block product
  alphas.push_back(parse_alpha("[(2,^2,x1)]"));
  alphas.push_back(parse_alpha("[(2,^1,x2)]"));
  alphas.push_back(parse_alpha("[(2,^3,x2);(3,^2,x2)]"));
  std::mt19937_64 rng(p.seed);
  for (int i = 0; i < 100; ++i) alphas.push_back(random_alpha(rng, 10));
  for (const auto& a : alphas) {
    std::uint64_t sg = sigma(a);
    FilterBase fb;
    try {
      fb = f_alpha(a);
    } catch (const error& e) {
      t.fail("f_alpha(" + alpha_str(a) + ") failed: " + e.what());
      continue;
    }
    t.check(omega(fb.fip_witness) == sg,
            alpha_str(a) + ": witness " + u64s(fb.fip_witness) +
                " not on level " + u64s(sg));
    t.verdict(contains(fb, SetDesc::level(static_cast<LevelIndex>(sg)),
                       p.bound),
              alpha_str(a) + " on level " + u64s(sg));
    for (const auto& g : fb.gens)
      for (auto v : g.instance().enumerate(p.bound))
        t.check(omega(v) == sg, alpha_str(a) + ": element " + u64s(v) +
                                    " has omega " + u64s(omega(v)) +
                                    ", want " + u64s(sg));
  }
}

void suite_alpha_additivity(const SuiteParams& p, Tally& t) {
  std::vector<std::pair<Alpha, Alpha>> pairs;
  pairs.emplace_back(parse_alpha("[(2,^2,x1)]"), parse_alpha("[(3,^1,x2)]"));
  std::mt19937_64 rng(p.seed);
  for (int i = 0; i < 25; ++i)
    pairs.emplace_back(random_alpha(rng, 5), random_alpha(rng, 5));
  for (const auto& [a, b] : pairs) {
    const std::uint64_t sg = sigma(a) + sigma(b);
    Alpha c = add_alpha(a, b);
    t.check(sigma(c) == sg, "sigma(" + alpha_str(a) + " + " + alpha_str(b) +
                                ") = " + u64s(sigma(c)) + ", want " +
                                u64s(sg));
    t.check(alpha_str(parse_alpha(alpha_str(c))) == alpha_str(c),
            "sum alpha does not round-trip: " + alpha_str(c));
    FilterBase fa, fb, pr;
    try {
      fa = f_alpha(a);
      fb = f_alpha(b);
      pr = product(fa, fb);
    } catch (const error& e) {
      t.fail("product of " + alpha_str(a) + " and " + alpha_str(b) +
             " failed: " + e.what());
      continue;
    }
    t.check(omega(pr.fip_witness) == sg,
            "product witness " + u64s(pr.fip_witness) + " not on level " +
                u64s(sg));
    t.verdict(contains(pr, SetDesc::level(static_cast<LevelIndex>(sg)),
                       p.bound),
              pr.spec + " on level " + u64s(sg));
    // members of the product generator up to the bound, via its factors
    std::vector<std::uint64_t> ea =
        fa.gens[0].instance().enumerate(p.bound);
    std::vector<std::uint64_t> eb =
        fb.gens[0].instance().enumerate(p.bound);
    bool all_on_level = true;
    std::uint64_t offender = 0;
    for (auto x : ea) {
      for (auto y : eb) {
        auto prod = checked_mul(x, y);
        if (!prod || *prod > p.bound) break;
        if (omega(*prod) != sg) {
          all_on_level = false;
          offender = *prod;
        }
      }
      if (!all_on_level) break;
    }
    t.check(all_on_level, "product element " + u64s(offender) +
                              " of " + pr.spec + " is off level " + u64s(sg));
  }
}

void suite_principal_tilde(const SuiteParams& p, Tally& t) {
  const std::uint64_t A = std::min<std::uint64_t>(300, p.bound);
  for (std::uint64_t a = 1; a <= A; ++a)
    for (std::uint64_t b = 1; b <= A; ++b) {
      Verdict v = tilde_divides(principal(a), principal(b), p.bound);
      bool ok = (b % a == 0) ? v.is_proven()
                             : (v.is_refuted() && v.counterexample == b);
      t.check(ok, "divides(principal:" + u64s(a) + ", principal:" + u64s(b) +
                      ") -> " + v.str());
    }
}

void suite_tilde_prime(const SuiteParams& p, Tally& t) {
  const std::uint64_t N = std::min<std::uint64_t>(10'000, p.bound);
  for (std::uint64_t n = 1; n <= N; ++n) {
    // a principal point has exactly the divisors of n below it
    std::uint64_t divisor_count = 1;
    for (const auto& [prime, exp] : factorize(n).factors)
      divisor_count *= exp + 1;
    t.check((divisor_count == 2) == is_prime(n),
            "n=" + u64s(n) + ": divisor count " + u64s(divisor_count) +
                " vs is_prime=" + u64s(is_prime(n)));
  }
  // the same statement through the divisibility verdicts themselves
  const std::uint64_t S = std::min<std::uint64_t>(60, N);
  for (std::uint64_t n = 2; n <= S; ++n) {
    std::uint64_t proven_divisors = 0;
    bool sound = true;
    for (std::uint64_t d = 1; d <= n; ++d) {
      Verdict v = tilde_divides(principal(d), principal(n), p.bound);
      if (v.is_proven()) ++proven_divisors;
      if (v.is_proven() != (n % d == 0)) sound = false;
    }
    t.check(sound && (proven_divisors == 2) == is_prime(n),
            "n=" + u64s(n) + ": " + u64s(proven_divisors) +
                " proven divisors; prime=" + u64s(is_prime(n)));
  }
}

// shared by the decomposition and chain suites
bool principal_chain_ok(std::uint64_t n, const SuiteParams& p,
                        std::string& why) {
  std::vector<FilterBase> ch = chain(principal(n), p.chain_len, p.bound);
  LevelIndex om = brute_omega(n);
  std::size_t want = std::max<std::size_t>(om, 1);
  if (ch.size() != want) {
    why = "chain length " + u64s(ch.size()) + ", want " + u64s(want);
    return false;
  }
  auto fs = prime_factor_list(n);
  std::uint64_t prefix = 1;
  for (std::size_t k = 0; k < ch.size(); ++k) {
    if (n == 1)
      prefix = 1;
    else
      prefix *= fs[k];
    if (ch[k].fip_witness != prefix) {
      why = "element " + u64s(k) + " witness " + u64s(ch[k].fip_witness) +
            ", want " + u64s(prefix);
      return false;
    }
  }
  if (ch.back().fip_witness != n) {
    why = "last element witness " + u64s(ch.back().fip_witness) + ", want " +
          u64s(n);
    return false;
  }
  Verdict one = tilde_divides(principal(1), ch.front(), p.bound);
  if (!one.is_proven()) {
    why = "principal:1 does not provably divide the first element: " +
          one.str();
    return false;
  }
  for (std::size_t k = 0; k + 1 < ch.size(); ++k) {
    Verdict v = tilde_divides(ch[k], ch[k + 1], p.bound);
    if (!v.is_proven()) {
      why = "link " + u64s(k) + " -> " + u64s(k + 1) + ": " + v.str();
      return false;
    }
  }
  return true;
}

void suite_decomposition(const SuiteParams& p, Tally& t) {
  for (std::uint64_t n = 2; n <= p.bound; ++n) {
    Factorization f = factorize(n);
    std::uint64_t total = 0, rebuilt = 1;
    bool primes_ok = true;
    for (const auto& [prime, exp] : f.factors) {
      if (!is_prime(prime)) primes_ok = false;
      total += exp;
      for (std::uint32_t e = 0; e < exp; ++e) rebuilt *= prime;
    }
    t.check(primes_ok && total == omega(n) && total == brute_omega(n) &&
                rebuilt == n,
            "n=" + u64s(n) + ": factorization does not rebuild n from " +
                u64s(total) + " primes");
    std::string why;
    t.check(principal_chain_ok(n, p, why),
            "chain(principal:" + u64s(n) + "): " + why);
  }
}

void suite_pushforward_divides(const SuiteParams& p, Tally& t) {
  // closed forms against the honest scans, before anything relies on them
  const std::uint64_t N = std::min<std::uint64_t>(1000, p.bound);
  for (std::uint64_t n = 1; n <= N; ++n) {
    LevelIndex om = brute_omega(n);
    for (LevelIndex k = 0; k <= om; ++k) {
      std::uint64_t got = smallest_factor_in_level(n, k);
      auto want = brute_smallest_factor(n, k);
      t.check(want && got == *want,
              "smallest_factor_in_level(" + u64s(n) + "," + u64s(k) + ") = " +
                  u64s(got) + ", scan found " + (want ? u64s(*want) : "none"));
    }
    for (LevelIndex k = om; k <= om + 4; ++k) {
      std::uint64_t got = smallest_multiple_in_level(n, k);
      auto want = brute_smallest_multiple(n, k);
      t.check(want && got == *want,
              "smallest_multiple_in_level(" + u64s(n) + "," + u64s(k) +
                  ") = " + u64s(got) + ", scan found " +
                  (want ? u64s(*want) : "none"));
    }
  }

  std::vector<std::string> map_names;
  for (int k = 1; k <= 5; ++k) map_names.push_back("sf(" + u64s(k) + ")");
  for (int k = 1; k <= 7; ++k) map_names.push_back("sm(" + u64s(k) + ")");
  map_names.push_back("pow(2)");
  map_names.push_back("pow(3)");
  map_names.push_back("threetwomap");

  // pointwise contract of each map on a sample of its domain
  const std::uint64_t D = std::min<std::uint64_t>(500, p.bound);
  for (const auto& name : map_names) {
    const NamedMap& f = get_map(name);
    bool ok = true;
    std::string why;
    for (auto a : f.domain.enumerate(D)) {
      std::uint64_t y;
      try {
        y = f.apply(a);
      } catch (const error& e) {
        ok = false;
        why = "apply(" + u64s(a) + ") failed: " + e.what();
        break;
      }
      bool divides = f.kind == MapKind::Factor ? (a % y == 0) : (y % a == 0);
      if (!divides) {
        ok = false;
        why = "value " + u64s(y) + " at " + u64s(a) +
              " breaks the divisibility contract";
        break;
      }
      if (f.range_level && omega(y) != *f.range_level) {
        ok = false;
        why = "value " + u64s(y) + " at " + u64s(a) + " is off level " +
              u64s(*f.range_level);
        break;
      }
    }
    t.check(ok, name + ": " + why);
  }

  // filter-level: pushing a base along a factor map yields a divisor of the
  // base; along a multiple map, a multiple of it
  std::vector<FilterBase> bases = not_on_level_catalog();
  bases.push_back(principal(12));
  bases.push_back(principal(30));
  bases.push_back(principal(64));
  for (const auto& name : map_names) {
    const NamedMap& f = get_map(name);
    for (const auto& x : bases) {
      FilterBase y;
      try {
        y = pushforward(f, x);
      } catch (const domain_error&) {
        continue;  // no generator provably inside the map's domain
      }
      Verdict v = f.kind == MapKind::Factor
                      ? tilde_divides(y, x, p.bound)
                      : tilde_divides(x, y, p.bound);
      t.verdict(v, "push(" + name + ", " + x.spec + ")");
    }
  }
}

void suite_chain(const SuiteParams& p, Tally& t) {
  const std::uint64_t N = std::min<std::uint64_t>(2000, p.bound);
  for (std::uint64_t n = 1; n <= N; ++n) {
    std::string why;
    t.check(principal_chain_ok(n, p, why),
            "chain(principal:" + u64s(n) + "): " + why);
  }
  for (const auto& x : not_on_level_catalog()) {
    std::vector<FilterBase> ch;
    try {
      ch = chain(x, p.chain_len, p.bound);
    } catch (const error& e) {
      t.fail("chain(" + x.spec + ") failed: " + e.what());
      continue;
    }
    t.check(ch.size() == static_cast<std::size_t>(p.chain_len) + 1,
            "chain(" + x.spec + ") length " + u64s(ch.size()) + ", want " +
                u64s(p.chain_len + 1));
    for (std::size_t k = 0; k + 1 < ch.size(); ++k) {
      LevelEvidence ev = level_evidence(ch[k], p.max_level, p.bound);
      t.check(ev.kind == LevelEvidence::Kind::OnLevel &&
                  ev.level == static_cast<LevelIndex>(k + 1) &&
                  ev.verdict.is_proven(),
              "chain(" + x.spec + ") element " + u64s(k) + ": " + ev.str() +
                  ", want proven level " + u64s(k + 1));
    }
    LevelEvidence last = level_evidence(ch.back(), p.max_level, p.bound);
    t.check(last.kind == LevelEvidence::Kind::NotOnFiniteLevels,
            "chain(" + x.spec + ") last element: " + last.str());
    Verdict one = tilde_divides(principal(1), ch.front(), p.bound);
    t.check(one.is_proven(),
            "principal:1 vs chain(" + x.spec + ") head: " + one.str());
    for (std::size_t k = 0; k + 1 < ch.size(); ++k) {
      Verdict v = tilde_divides(ch[k], ch[k + 1], p.bound);
      t.check(v.is_proven(), "chain(" + x.spec + ") link " + u64s(k) +
                                 " -> " + u64s(k + 1) + ": " + v.str());
    }
  }
}

void suite_i_evidence(const SuiteParams& p, Tally& t) {
  for (const auto& x : not_on_level_catalog()) {
    LevelEvidence ev = level_evidence(x, p.max_level, p.bound);
    t.check(ev.kind == LevelEvidence::Kind::NotOnFiniteLevels &&
                ev.checked_up_to == p.max_level,
            x.spec + ": " + ev.str());
    if (ev.kind == LevelEvidence::Kind::NotOnFiniteLevels)
      for (LevelIndex i = 0; i < ev.per_level.size(); ++i)
        t.check(ev.per_level[i].is_proven(),
                x.spec + " vs complement of level " + u64s(i) + ": " +
                    ev.per_level[i].str());
    // off every finite level, yet the whole line is a member
    Verdict all = contains(x, SetDesc::multiples_of(1), p.bound);
    t.check(all.is_proven(), x.spec + " contains mult(1): " + all.str());
  }
}

void suite_i_tail(const SuiteParams& p, Tally& t) {
  const LevelIndex N = std::min<LevelIndex>(20, p.max_level);
  for (const auto& x : not_on_level_catalog())
    for (LevelIndex n = 1; n <= N; ++n) {
      Verdict v =
          contains(x, SetDesc::complement(levels_upto(n - 1)), p.bound);
      t.check(v.is_proven(), x.spec + " vs complement of levels below " +
                                 u64s(n) + ": " + v.str());
    }
}

void suite_i_product(const SuiteParams& p, Tally& t) {
  std::vector<FilterBase> cat = not_on_level_catalog();
  auto off_levels = [&](const FilterBase& z, const std::string& what) {
    LevelEvidence ev = level_evidence(z, p.max_level, p.bound);
    t.check(ev.kind == LevelEvidence::Kind::NotOnFiniteLevels,
            what + ": " + ev.str());
  };
  for (const auto& a : cat)
    for (const auto& b : cat) off_levels(product(a, b), a.spec + " * " + b.spec);
  const std::uint64_t N = std::min<std::uint64_t>(100, p.bound);
  for (const auto& a : cat)
    for (std::uint64_t n = 1; n <= N; ++n) {
      off_levels(product(principal(n), a),
                 "principal:" + u64s(n) + " * " + a.spec);
      off_levels(product(a, principal(n)),
                 a.spec + " * principal:" + u64s(n));
    }
}

void suite_three_two(const SuiteParams& p, Tally& t) {
  const NamedMap& f = get_map("threetwomap");
  FilterBase x = tails_base(SetDesc::geom_times(3, 2));
  FilterBase y;
  try {
    y = pushforward(f, x);
  } catch (const error& e) {
    t.fail(std::string("pushforward failed: ") + e.what());
    return;
  }
  // pointwise: the map halves the level and divides its argument
  for (auto a : f.domain.enumerate(p.bound)) {
    std::uint64_t v = f.apply(a);
    t.check(v * 3 == a && a % v == 0 && omega(v) + 1 == omega(a),
            "map value " + u64s(v) + " at " + u64s(a) + " is not a/3");
  }
  // the image of each source tail is exactly the tail of the image family
  for (std::uint64_t j = 0; j <= 10; ++j) {
    auto img = f.tail_image(SetDesc::geom_times(3, 2), j);
    std::vector<std::uint64_t> pointwise;
    for (auto a : SetDesc::tail(SetDesc::geom_times(3, 2), j)
                      .enumerate(3 * p.bound))
      pointwise.push_back(f.apply(a));
    t.check(img && img->enumerate(p.bound) == pointwise,
            "tail image at depth " + u64s(j) +
                " disagrees with the pointwise image");
  }
  Verdict v = tilde_divides(y, x, p.bound);
  t.verdict(v, y.spec + " divides " + x.spec);
  LevelEvidence ex = level_evidence(x, p.max_level, p.bound);
  t.check(ex.kind == LevelEvidence::Kind::NotOnFiniteLevels,
          x.spec + ": " + ex.str());
  LevelEvidence ey = level_evidence(y, p.max_level, p.bound);
  t.check(ey.kind == LevelEvidence::Kind::NotOnFiniteLevels,
          y.spec + ": " + ey.str());
}

struct SuiteDef {
  const char* name;
  void (*fn)(const SuiteParams&, Tally&);
};

const SuiteDef kSuites[] = {
    {"level-partition", suite_level_partition},
    {"signature-partition", suite_signature_partition},
    {"omega-additivity", suite_omega_additivity},
    {"quotient-law", suite_quotient_law},
    {"finite-union", suite_finite_union},
    {"falpha-level", suite_falpha_level},
    {"alpha-additivity", suite_alpha_additivity},
    {"principal-tilde-divisibility", suite_principal_tilde},
    {"tilde-prime", suite_tilde_prime},
    {"decomposition", suite_decomposition},
    {"pushforward-divides", suite_pushforward_divides},
    {"chain-suite", suite_chain},
    {"I-evidence", suite_i_evidence},
    {"I-tail", suite_i_tail},
    {"I-product", suite_i_product},
    {"three-two-pushforward", suite_three_two},
};

}  // namespace

std::string SuiteParams::str() const {
  return "bound=" + std::to_string(bound) +
         " max_level=" + std::to_string(max_level) +
         " chain_len=" + std::to_string(chain_len) +
         " seed=" + std::to_string(seed);
}

std::string SuiteResult::machine_line() const {
  std::string f;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (i) f += "; ";
    f += failures[i];
  }
  return "suite=" + suite + " params={" + params + "} cases=" +
         std::to_string(cases_run) + " proven=" + std::to_string(proven) +
         " consistent=" + std::to_string(consistent) +
         " refuted=" + std::to_string(refuted) + " failures=[" + f + "]";
}

std::string SuiteResult::markdown() const {
  std::string out = "## " + suite + "\n\n";
  out += "- params: " + params + "\n";
  out += "- cases: " + std::to_string(cases_run) + " (proven " +
         std::to_string(proven) + ", consistent " +
         std::to_string(consistent) + ", refuted " + std::to_string(refuted) +
         ")\n";
  if (failures.empty()) {
    out += "- failures: none\n";
  } else {
    out += "- failures:\n";
    for (const auto& f : failures) out += "  - " + f + "\n";
  }
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : kSuites) out.push_back(s.name);
  return out;
}

SuiteResult run_suite(const std::string& name, const SuiteParams& params) {
  const SuiteDef* def = nullptr;
  for (const auto& s : kSuites)
    if (name == s.name) def = &s;
  if (!def) throw unknown_suite("unknown suite: " + name);
  Tally t;
  t.r.suite = def->name;
  t.r.params = params.str();
  auto start = std::chrono::steady_clock::now();
  try {
    def->fn(params, t);
  } catch (const std::exception& e) {
    // a suite must report, not abort; an escaped exception is a failure
    t.fail(std::string("suite aborted: ") + e.what());
  }
  t.finalize();
  t.r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return t.r;
}

std::vector<SuiteResult> run_all(const SuiteParams& params) {
  const auto names = suite_names();
  std::vector<SuiteResult> results(names.size());
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(params.jobs,
                                      static_cast<unsigned>(names.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < names.size(); ++i)
      results[i] = run_suite(names[i], params);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= names.size()) return;
      results[i] = run_suite(names[i], params);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

std::string render_machine(const std::vector<SuiteResult>& results) {
  std::string out;
  for (const auto& r : results) out += r.machine_line() + "\n";
  return out;
}

std::string render_markdown(const std::vector<SuiteResult>& results) {
  std::string out = "# Property suite report\n\n";
  std::uint64_t cases = 0, refuted = 0;
  for (const auto& r : results) {
    cases += r.cases_run;
    refuted += r.refuted;
  }
  out += std::to_string(results.size()) + " suites, " +
         std::to_string(cases) + " cases, " + std::to_string(refuted) +
         " refuted.\n\n";
  for (const auto& r : results) out += r.markdown() + "\n";
  return out;
}

}  // namespace ultralevels
