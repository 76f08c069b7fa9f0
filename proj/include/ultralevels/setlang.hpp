#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ultralevels/arith.hpp"
#include "ultralevels/errors.hpp"
#include "ultralevels/verdict.hpp"

namespace ultralevels {

class SetDesc;

enum class SetKind {
  Finite,
  Primes,
  Level,
  Powers,
  DistinctProducts,
  Scale,
  Quotient,
  UpClosure,
  DownClosure,
  ProductUnion,
  GeomTimes,
  Diagonal,
  MultiplesOf,
  Tail,
  Union,
  Intersection,
  Complement,
  PrimeIndexMod,
  AlphaProduct,
  Image,
};

struct SetNode;

/// Immutable symbolic description of a subset of the positive integers.
/// Every constructor supports a terminating membership test and ascending,
/// duplicate-free enumeration up to a bound, and the two always agree.
/// Values are confined to uint64; products that overflow are treated as
/// lying outside every described set.
class SetDesc {
 public:
  SetDesc();  // empty finite set

  static SetDesc finite(std::vector<std::uint64_t> elems);
  static SetDesc primes();
  static SetDesc level(LevelIndex i);
  /// {a^k : a in s}, k >= 1.
  static SetDesc powers(SetDesc s, std::uint32_t k);
  /// Products of n pairwise distinct elements of s, n >= 1. For s a set of
  /// primes, distinctness coincides with mutual coprimality.
  static SetDesc distinct_products(SetDesc s, std::uint32_t n);
  /// {n*a : a in s}, n >= 1.
  static SetDesc scale(std::uint64_t n, SetDesc s);
  /// {m : m*n in s}, n >= 1. Quotients of Level(i) normalize to
  /// Level(i - omega(n)) (empty when omega(n) > i).
  static SetDesc quotient(SetDesc s, std::uint64_t n);
  /// {m : some a in s divides m}.
  static SetDesc up_closure(SetDesc s);
  /// {m : m divides some a in s}. Over provably finite s the test is exact;
  /// otherwise multiples of the query are searched up to an internal bound
  /// (down_search_bound) and results are relative to that bound.
  static SetDesc down_closure(SetDesc s);
  /// {b*c : b in lhs, c in rhs}.
  static SetDesc product_union(SetDesc lhs, SetDesc rhs);
  /// {c * r^j : j >= 1}; r == 1 normalizes to finite({c}). c, r >= 1.
  static SetDesc geom_times(std::uint64_t c, std::uint64_t r);
  /// {sel(0), sel(1), ...} with sel(i) on level i and strictly increasing;
  /// sel is a registered selector name (pow2, pow3, primorial, smul1, ...).
  static SetDesc diagonal(const std::string& selector);
  static SetDesc multiples_of(std::uint64_t n);
  /// s minus its k smallest elements.
  static SetDesc tail(SetDesc s, std::uint64_t k);
  static SetDesc union_of(SetDesc a, SetDesc b);
  static SetDesc intersection(SetDesc a, SetDesc b);
  static SetDesc complement(SetDesc s);
  /// {i-th prime : i = r (mod m)}, 1-indexed, 0 <= r < m.
  static SetDesc prime_index_mod(std::uint32_t m, std::uint32_t r);
  /// Alpha product generator: blocks (A_i, k_i, mult_i) denote all products
  /// prod_i prod_{j<mult_i} a_{i,j}^{k_i} with the a_{i,j} pairwise distinct
  /// across the whole product and a_{i,j} in A_i. Each A_i must denote a set
  /// of primes (checked symbolically).
  static SetDesc alpha_product(
      std::vector<std::tuple<SetDesc, std::uint32_t, std::uint32_t>> blocks);
  /// Image of src under the named map. When an exact rewrite is known it is
  /// attached as `resolved` and drives membership; otherwise membership
  /// searches src up to an internal bound.
  static SetDesc image(const std::string& map_name, SetDesc src,
                       std::optional<SetDesc> resolved);

  SetKind kind() const;
  const SetNode& node() const { return *node_; }

  bool member(std::uint64_t n) const;
  std::vector<std::uint64_t> enumerate(std::uint64_t bound) const;

  /// Canonical text form; parse_set(str()) reproduces the descriptor.
  std::string str() const;

  bool operator==(const SetDesc& other) const;
  bool operator!=(const SetDesc& other) const { return !(*this == other); }

 private:
  explicit SetDesc(std::shared_ptr<const SetNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SetNode> node_;
  friend struct SetNode;
  friend SetDesc make(SetNode&&);
};

struct SetNode {
  SetKind kind = SetKind::Finite;
  std::vector<SetDesc> kids;
  std::vector<std::uint64_t> values;  // finite elements (sorted) / numeric params
  std::uint32_t a = 0, b = 0;         // small params (k, n, m, r)
  std::string name;                   // selector / map name
  std::vector<std::tuple<SetDesc, std::uint32_t, std::uint32_t>> blocks;
  std::optional<SetDesc> resolved;    // Image only
};

/// Parse the set-spec grammar: finite(4,6), primes, level(3), pow(s,2),
/// dp(s,2), scale(2,s), quot(s,2), up(s), down(s), pu(a,b), geom(3,2),
/// diag(pow2), mult(6), tail(s,3), union(a,b), inter(a,b), comp(s),
/// primesidx(2,1), aprod((s,k,mult);...), img(map,s).
SetDesc parse_set(const std::string& text);

/// Search bound for membership in down-closures of sets not provably finite.
inline constexpr std::uint64_t down_search_bound = 1'000'000;
/// Search bound for membership in unresolved map images.
inline constexpr std::uint64_t image_search_bound = 1'000'000;

/// Proven for shapes upward closed by construction (up-closures, multiple
/// sets, and unions/intersections of such); Refuted with the smallest missing
/// multiple found by an ascending scan; ConsistentUpTo(bound) otherwise.
Verdict is_upward_closed(const SetDesc& s, std::uint64_t bound);

// --- structural analysis (used by filter evidence) ---

/// Rule name when a is provably a subset of b, nullopt when undecided.
std::optional<std::string> symbolic_subset(const SetDesc& a, const SetDesc& b);

/// Rule name when a and b are provably disjoint.
std::optional<std::string> symbolic_disjoint(const SetDesc& a,
                                             const SetDesc& b);

/// Full element list when the set is provably finite and evaluates to at
/// most cap elements.
std::optional<std::vector<std::uint64_t>> finite_eval(const SetDesc& s,
                                                      std::size_t cap = 4096);

/// Provable lower / upper bounds on omega over the set's members.
/// level_unbounded stands for "no finite upper bound derived".
inline constexpr LevelIndex level_unbounded = 0xFFFFFFFFu;
LevelIndex min_level_bound(const SetDesc& s);
LevelIndex max_level_bound(const SetDesc& s);
/// The common omega of all members when structurally forced.
std::optional<LevelIndex> exact_level(const SetDesc& s);

/// Conservative: true only when the set is infinite by construction.
bool provably_infinite(const SetDesc& s);

/// Smallest element, searched by doubling enumeration bounds up to cap.
std::optional<std::uint64_t> first_element(const SetDesc& s,
                                           std::uint64_t cap);

/// Strictly increasing indexed view of diagonal / geometric families
/// (through Tail wrappers), carrying what the tail rules need.
struct FamilyView {
  std::uint64_t first_index = 0;
  bool divisor_chain = false;  // value(i) divides value(j) for i <= j
  enum class Base { Diagonal, Geom } base = Base::Diagonal;
  std::string selector;        // Diagonal
  std::uint64_t c = 0, r = 0;  // Geom

  std::optional<std::uint64_t> value(std::uint64_t i) const;
  std::optional<LevelIndex> level_at(std::uint64_t i) const;
  /// Indices (>= 0, unshifted) whose value lies on the given level; nullopt
  /// when not structurally determined to be finite.
  std::optional<std::vector<std::uint64_t>> indices_on_level(
      LevelIndex lvl) const;
};
std::optional<FamilyView> family_view(const SetDesc& s);

/// Diagonal selectors. value(i) must lie on level i and be strictly
/// increasing; divisor_chain selectors additionally satisfy
/// value(i) | value(j) for i <= j.
struct DiagonalSelector {
  std::string name;
  bool divisor_chain = false;
  std::optional<std::uint64_t> (*value)(std::uint64_t) = nullptr;
};
const DiagonalSelector& get_selector(const std::string& name);
std::vector<std::string> selector_names();

}  // namespace ultralevels
