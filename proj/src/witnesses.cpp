#include "ultralevels/witnesses.hpp"

#include <map>
#include <mutex>

namespace ultralevels {

std::uint64_t smallest_factor_in_level(std::uint64_t n, LevelIndex k) {
  if (n == 0) throw domain_error("smallest_factor_in_level: n must be >= 1");
  if (k == 0) return 1;
  auto fac = factorize(n);
  std::uint64_t out = 1;
  LevelIndex taken = 0;
  for (auto [p, e] : fac.factors) {  // ascending primes
    for (std::uint32_t i = 0; i < e && taken < k; ++i, ++taken) out *= p;
    if (taken == k) return out;
  }
  throw no_such_witness("no divisor of " + std::to_string(n) + " on level " +
                        std::to_string(k));
}

std::uint64_t smallest_multiple_in_level(std::uint64_t n, LevelIndex k) {
  if (n == 0) throw domain_error("smallest_multiple_in_level: n must be >= 1");
  LevelIndex om = omega(n);
  if (om > k)
    throw no_such_witness("no multiple of " + std::to_string(n) +
                          " on level " + std::to_string(k));
  auto p2 = checked_pow(2, k - om);
  auto v = p2 ? checked_mul(n, *p2) : std::nullopt;
  if (!v)
    throw no_such_witness("smallest multiple of " + std::to_string(n) +
                          " on level " + std::to_string(k) +
                          " exceeds 64 bits");
  return *v;
}

std::uint64_t three_two_map(std::uint64_t n) {
  if (n % 3 == 0) {
    std::uint64_t q = n / 3;
    if (q >= 2 && (q & (q - 1)) == 0) return q;
  }
  throw domain_error("three_two_map: " + std::to_string(n) +
                     " is not 3 times a power of two");
}

std::uint64_t NamedMap::apply(std::uint64_t a) const {
  if (!domain.member(a))
    throw domain_error("map " + name + " applied outside its domain at " +
                       std::to_string(a));
  return fn(a);
}

namespace {

constexpr std::uint64_t kContractSampleBound = 5000;
constexpr std::size_t kContractSampleCount = 64;

void sample_contract(const NamedMap& m) {
  auto dom = m.domain.enumerate(kContractSampleBound);
  std::size_t n = std::min(dom.size(), kContractSampleCount);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t a = dom[i];
    std::uint64_t v;
    try {
      v = m.fn(a);
    } catch (const error&) {
      continue;  // value exceeds 64 bits: outside the working universe
    }
    if (m.kind == MapKind::Factor && (v == 0 || a % v != 0))
      throw error("map " + m.name + " breaks its factor contract at " +
                  std::to_string(a));
    if (m.kind == MapKind::Multiple && (a == 0 || v % a != 0))
      throw error("map " + m.name + " breaks its multiple contract at " +
                  std::to_string(a));
  }
}

SetDesc levels_upto(LevelIndex k) {
  SetDesc u = SetDesc::level(0);
  for (LevelIndex i = 1; i <= k; ++i)
    u = SetDesc::union_of(std::move(u), SetDesc::level(i));
  return u;
}

NamedMap build_map(const std::string& head, std::uint64_t arg, bool has_arg) {
  if (head == "threetwomap") {
    if (has_arg) throw parse_error("map threetwomap takes no parameter", 0);
  } else if (head == "sf" || head == "sm" || head == "pow") {
    if (!has_arg) throw parse_error("map " + head + " needs a parameter", 0);
  }
  if (head == "sf") {
    if (arg > 64) throw domain_error("sf: level index above 64");
    LevelIndex k = static_cast<LevelIndex>(arg);
    NamedMap m;
    m.name = "sf(" + std::to_string(k) + ")";
    m.domain = k == 0 ? SetDesc::multiples_of(1)
                      : SetDesc::complement(levels_upto(k - 1));
    m.kind = MapKind::Factor;
    m.fn = [k](std::uint64_t a) { return smallest_factor_in_level(a, k); };
    m.range_level = k;
    return m;
  }
  if (head == "sm") {
    if (arg > 64) throw domain_error("sm: level index above 64");
    LevelIndex k = static_cast<LevelIndex>(arg);
    NamedMap m;
    m.name = "sm(" + std::to_string(k) + ")";
    m.domain = levels_upto(k);
    m.kind = MapKind::Multiple;
    m.fn = [k](std::uint64_t a) { return smallest_multiple_in_level(a, k); };
    m.range_level = k;
    return m;
  }
  if (head == "pow") {
    if (arg == 0 || arg > 64) throw domain_error("pow: exponent out of range");
    std::uint32_t e = static_cast<std::uint32_t>(arg);
    NamedMap m;
    m.name = "pow(" + std::to_string(e) + ")";
    m.domain = SetDesc::multiples_of(1);
    m.kind = MapKind::Multiple;
    m.fn = [e](std::uint64_t a) {
      auto p = checked_pow(a, e);
      if (!p)
        throw domain_error("pow: " + std::to_string(a) + "^" +
                           std::to_string(e) + " exceeds 64 bits");
      return *p;
    };
    m.tail_image = [e](const SetDesc& src,
                       std::uint64_t j) -> std::optional<SetDesc> {
      // a -> a^e is strictly increasing, so it maps the j-tail of src onto
      // the j-tail of the image
      return SetDesc::tail(SetDesc::powers(src, e), j);
    };
    return m;
  }
  if (head == "threetwomap") {
    NamedMap m;
    m.name = "threetwomap";
    m.domain = SetDesc::geom_times(3, 2);
    m.kind = MapKind::Factor;
    m.fn = three_two_map;
    m.tail_image = [](const SetDesc& src,
                      std::uint64_t j) -> std::optional<SetDesc> {
      if (src == SetDesc::geom_times(3, 2))
        return SetDesc::tail(SetDesc::geom_times(1, 2), j);
      return std::nullopt;
    };
    return m;
  }
  throw parse_error("unknown map: " + head, 0);
}

}  // namespace

const NamedMap& get_map(const std::string& spec) {
  // spellings: name or name(k)
  std::string head = spec;
  std::uint64_t arg = 0;
  bool has_arg = false;
  auto lp = spec.find('(');
  if (lp != std::string::npos) {
    if (spec.back() != ')') throw parse_error("malformed map spec: " + spec, lp);
    head = spec.substr(0, lp);
    std::string inner = spec.substr(lp + 1, spec.size() - lp - 2);
    if (inner.empty() ||
        inner.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("malformed map parameter in: " + spec, lp + 1);
    arg = std::stoull(inner);
    has_arg = true;
  }
  static std::mutex mu;
  static std::map<std::string, NamedMap> registry;
  std::lock_guard<std::mutex> lock(mu);
  std::string key = has_arg ? head + "(" + std::to_string(arg) + ")" : head;
  auto it = registry.find(key);
  if (it == registry.end()) {
    NamedMap m = build_map(head, arg, has_arg);
    sample_contract(m);
    it = registry.emplace(key, std::move(m)).first;
  }
  return it->second;
}

}  // namespace ultralevels
