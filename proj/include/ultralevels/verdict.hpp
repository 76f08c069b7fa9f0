#pragma once

#include <cstdint>
#include <string>

namespace ultralevels {

/// Three-valued result of a check that may be decided symbolically, refuted
/// by a concrete counterexample, or left open up to a search bound.
struct Verdict {
  enum class Kind { Proven, ConsistentUpTo, Refuted };

  Kind kind;
  std::string rule;                  // Proven: name of the rule that fired
  std::uint64_t bound = 0;           // ConsistentUpTo: checked bound
  std::uint64_t counterexample = 0;  // Refuted: concrete witness

  static Verdict proven(std::string rule_name);
  static Verdict consistent(std::uint64_t bound);
  static Verdict refuted(std::uint64_t counterexample);

  bool is_proven() const { return kind == Kind::Proven; }
  bool is_refuted() const { return kind == Kind::Refuted; }
  bool non_refuted() const { return kind != Kind::Refuted; }

  /// "Proven(rule)" / "ConsistentUpTo(b)" / "Refuted(c)".
  std::string str() const;
};

/// Associative merge for conjunctions: Refuted dominates, then
/// ConsistentUpTo with the minimum bound, then Proven. The rule name of a
/// merged Proven verdict is the left operand's.
Verdict merge_verdicts(const Verdict& a, const Verdict& b);

}  // namespace ultralevels
