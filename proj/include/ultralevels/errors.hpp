#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultralevels {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (0 passed to factorize, map applied
/// off its domain set, signature of 1, ...).
struct domain_error : error {
  using error::error;
};

/// A finite intersection of filter generators has no member on the checked
/// range. Carries the indices of the smallest offending generator subset.
struct fip_violation : error {
  std::vector<std::size_t> subset;
  std::uint64_t bound;
  fip_violation(std::vector<std::size_t> s, std::uint64_t b);
};

/// No witness exists (e.g. no divisor of n on level k when omega(n) < k).
struct no_such_witness : error {
  using error::error;
};

/// F_alpha construction could not make the per-prime generator sets disjoint
/// (or large enough for the requested multiplicities) on the working range.
struct disjointness_unsatisfiable : error {
  using error::error;
};

/// Suite name not present in the checker catalog.
struct unknown_suite : error {
  using error::error;
};

/// Malformed set-spec / filter-spec / alpha-spec text.
struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos);
};

}  // namespace ultralevels
