#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ultralevels/setlang.hpp"

namespace ultralevels {

/// Smallest divisor of n on level k, i.e. the product of the k smallest
/// prime factors of n counted with multiplicity. Throws no_such_witness when
/// omega(n) < k. smallest_factor_in_level(n, 0) == 1.
std::uint64_t smallest_factor_in_level(std::uint64_t n, LevelIndex k);

/// Smallest multiple of n on level k: n * 2^(k - omega(n)). Throws
/// no_such_witness when omega(n) > k or the value overflows.
std::uint64_t smallest_multiple_in_level(std::uint64_t n, LevelIndex k);

/// 3*2^j -> 2^j, defined exactly on {3*2^j : j >= 1}.
std::uint64_t three_two_map(std::uint64_t n);

enum class MapKind {
  Factor,    // f(a) divides a on the domain
  Multiple,  // a divides f(a) on the domain
  Other,
};

/// A named total computable function on a described domain. Registered maps
/// have their factor/multiple contract sampled on construction.
struct NamedMap {
  std::string name;
  SetDesc domain;
  MapKind kind = MapKind::Other;
  std::function<std::uint64_t(std::uint64_t)> fn;
  /// Exact image rewrite for a tail of a family source, when known:
  /// given src and tail depth j, the image of tail(src, j) as a descriptor.
  std::function<std::optional<SetDesc>(const SetDesc&, std::uint64_t)>
      tail_image;
  /// Set when every value of the map lies on one level (sf(k), sm(k) -> k).
  std::optional<LevelIndex> range_level;

  std::uint64_t apply(std::uint64_t a) const;  // domain-checked
};

/// Look up a map by registry spelling: sf(k), sm(k), pow(n), threetwomap.
/// Throws parse_error for unknown spellings, domain_error for bad params.
const NamedMap& get_map(const std::string& spec);

}  // namespace ultralevels
