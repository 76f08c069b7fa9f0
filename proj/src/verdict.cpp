#include "ultralevels/verdict.hpp"

#include <algorithm>

#include "ultralevels/errors.hpp"

namespace ultralevels {

Verdict Verdict::proven(std::string rule_name) {
  Verdict v;
  v.kind = Kind::Proven;
  v.rule = std::move(rule_name);
  return v;
}

Verdict Verdict::consistent(std::uint64_t bound) {
  Verdict v;
  v.kind = Kind::ConsistentUpTo;
  v.bound = bound;
  return v;
}

Verdict Verdict::refuted(std::uint64_t counterexample) {
  Verdict v;
  v.kind = Kind::Refuted;
  v.counterexample = counterexample;
  return v;
}

std::string Verdict::str() const {
  switch (kind) {
    case Kind::Proven:
      return "Proven(" + rule + ")";
    case Kind::ConsistentUpTo:
      return "ConsistentUpTo(" + std::to_string(bound) + ")";
    case Kind::Refuted:
      return "Refuted(" + std::to_string(counterexample) + ")";
  }
  return "?";
}

Verdict merge_verdicts(const Verdict& a, const Verdict& b) {
  if (a.is_refuted()) return a;
  if (b.is_refuted()) return b;
  if (a.kind == Verdict::Kind::ConsistentUpTo ||
      b.kind == Verdict::Kind::ConsistentUpTo) {
    std::uint64_t bound;
    if (a.kind != Verdict::Kind::ConsistentUpTo)
      bound = b.bound;
    else if (b.kind != Verdict::Kind::ConsistentUpTo)
      bound = a.bound;
    else
      bound = std::min(a.bound, b.bound);
    return Verdict::consistent(bound);
  }
  return a;
}

fip_violation::fip_violation(std::vector<std::size_t> s, std::uint64_t b)
    : error([&] {
        std::string msg = "empty generator intersection on [1, " +
                          std::to_string(b) + "], subset {";
        for (std::size_t i = 0; i < s.size(); ++i)
          msg += (i ? "," : "") + std::to_string(s[i]);
        return msg + "}";
      }()),
      subset(std::move(s)),
      bound(b) {}

parse_error::parse_error(const std::string& what, std::size_t pos)
    : error(what + " (at offset " + std::to_string(pos) + ")"),
      position(pos) {}

}  // namespace ultralevels
