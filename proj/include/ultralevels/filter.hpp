#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ultralevels/setlang.hpp"
#include "ultralevels/verdict.hpp"
#include "ultralevels/witnesses.hpp"

namespace ultralevels {

/// One generator scheme of a filter base. A Plain scheme is a single set;
/// a TailOf scheme stands for the whole chain {tail(src, j) : j >= 0};
/// ProductOf / RestrictOf / ImageOf compose schemes pointwise. Instances of
/// one scheme form a chain under inclusion, so the scheme approximates an
/// ultrafilter from below the way a single generator would.
struct GenScheme {
  enum class Kind { Plain, TailOf, ProductOf, RestrictOf, ImageOf };
  Kind kind = Kind::Plain;
  SetDesc set;  // Plain: the set; TailOf: the source; RestrictOf: restrictor
  std::vector<GenScheme> parts;  // ProductOf: 2; RestrictOf / ImageOf: 1
  std::string map_name;          // ImageOf

  /// Number of independent tail depths below this scheme.
  std::size_t slots() const;
  /// Materialize with the given depth per slot (missing depths read as 0).
  SetDesc instance(const std::vector<std::uint64_t>& depths) const;
  SetDesc instance() const { return instance({}); }
};

/// Finitely described approximation of an ultrafilter: the filter generated
/// by all instances of all schemes. fip_witness is a member of the
/// intersection of all depth-0 instances, proving the finite intersection
/// property on [1, fip_bound] (deeper instances refine along chains).
struct FilterBase {
  std::vector<GenScheme> gens;
  std::uint64_t fip_bound = 0;
  std::uint64_t fip_witness = 0;
  std::string spec;  // canonical filter-spec text; parse round-trips

  std::string str() const { return spec; }
};

/// Basic ultrafilter stand-in for one alpha entry: a concrete prime or a
/// filter base whose generators are sets of primes.
using BasicSpec = std::variant<std::uint64_t, FilterBase>;

struct AlphaEntry {
  BasicSpec basic;
  std::uint32_t k = 1;     // exponent of the basic ultrafilter
  std::uint32_t mult = 1;  // multiplicity in the product
};

/// Finite-support exponent map over basic ultrafilters.
struct Alpha {
  std::vector<AlphaEntry> entries;
};

/// sigma(alpha) = sum of k * mult over entries.
std::uint64_t sigma(const Alpha& a);

/// Pointwise sum: multiplicities of matching (basic, k) entries add.
Alpha add_alpha(const Alpha& a, const Alpha& b);

std::string alpha_str(const Alpha& a);
Alpha parse_alpha(const std::string& text);

/// Level evidence for a filter base.
struct LevelEvidence {
  enum class Kind { OnLevel, NotOnFiniteLevels, Unknown };
  Kind kind = Kind::Unknown;
  LevelIndex level = 0;           // OnLevel
  Verdict verdict;                // OnLevel
  LevelIndex checked_up_to = 0;   // NotOnFiniteLevels
  std::vector<Verdict> per_level; // NotOnFiniteLevels: complement verdicts
  std::string str() const;
};

/// Build a base from explicit generators. Verifies every finite intersection
/// of generators has a member <= fip_bound; throws fip_violation (carrying
/// the smallest offending subset) otherwise.
FilterBase mk_base(std::vector<SetDesc> gens, std::uint64_t fip_bound);

/// The principal ultrafilter at n.
FilterBase principal(std::uint64_t n);

/// Base generated by all tails of src (src must be provably infinite).
/// Only nonprincipal ultrafilters extend the generated filter.
FilterBase tails_base(const SetDesc& src);

/// Evidence that s belongs to every / no / some ultrafilter extending x:
/// Proven when some generator instance is provably contained in s, Refuted
/// (with a concrete witness) when some instance is provably contained in the
/// complement, ConsistentUpTo(bound) when neither certificate was found.
Verdict contains(const FilterBase& x, const SetDesc& s, std::uint64_t bound);

/// Product via generator products: schemes ProductOf(B, C) pairwise; a set
/// belongs to the product filter when it contains some union of slices
/// b * C_inst over b in B_inst. FIP witness is the product of witnesses.
FilterBase product(const FilterBase& x, const FilterBase& y);

/// scale(n, x) = product(principal(n), x).
FilterBase scale(std::uint64_t n, const FilterBase& x);

/// Restriction x|A: generators intersected with a (a is assumed to meet
/// every generator instance; the FIP witness is re-searched and
/// fip_violation is thrown if none is found).
FilterBase restrict(const FilterBase& x, const SetDesc& a);

/// Pushforward along a named map: schemes whose instances provably lie in
/// the map's domain are mapped to image schemes; the rest are dropped.
/// Throws domain_error when no scheme survives.
FilterBase pushforward(const NamedMap& f, const FilterBase& x);

/// x ~| y: every up-closure of a generator instance of x belongs to y.
/// Conjunction over schemes; tail chains are checked at sampled depths and
/// capped at ConsistentUpTo unless a depth-uniform rule proves them.
Verdict tilde_divides(const FilterBase& x, const FilterBase& y,
                      std::uint64_t bound);

/// OnLevel(i) when containment of Level(i) is Proven for some i;
/// NotOnFiniteLevels when the complement of every Level(i), i <= max_level,
/// is Proven to belong; OnLevel(i) when exactly one i is non-Refuted and its
/// complement is not Proven; Unknown otherwise.
LevelEvidence level_evidence(const FilterBase& x, LevelIndex max_level,
                             std::uint64_t bound);

/// Build the F_alpha filter base: one alpha-product generator over canonical
/// per-basic prime sets (augmented and made pairwise disjoint as needed).
/// Throws disjointness_unsatisfiable when the working range cannot supply
/// disjoint sets of the required sizes.
FilterBase f_alpha(const Alpha& a);

/// [x_1, ..., x_{n-1}, x]: x_k is the pushforward of x (restricted away from
/// the levels the chain walks through) along the smallest-factor-to-level-k
/// map. For a principal base at m with omega(m) = n the chain has length
/// max(n, 1); for bases with NotOnFiniteLevels evidence it has length
/// chain_len + 1.
std::vector<FilterBase> chain(const FilterBase& x, unsigned chain_len,
                              std::uint64_t bound);

/// Diagonal of smallest multiples over the ascending enumeration of L_n
/// (selector smul<n>): index j >= n maps to the (j-n+1)-th element of L_n
/// times 2^(j-n), strictly increasing and on level j; indices below n fall
/// back to 2^j. Registered for n in {1, 2}.
SetDesc smallest_multiple_diagonal(LevelIndex n);

/// Parse the filter-spec grammar: principal:30, tails:diag(pow2),
/// falpha:[(2,^1,x2)], prod(a,b), push(map,a), restrict(a,s), base:{s;s}.
FilterBase parse_filter(const std::string& text);

}  // namespace ultralevels
