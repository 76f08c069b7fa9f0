#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "ultralevels/setlang.hpp"
#include "ultralevels/witnesses.hpp"

using namespace ultralevels;

namespace {

using V = std::vector<std::uint64_t>;

// independent oracle: collect 1..bound by membership only
V by_member(const SetDesc& s, std::uint64_t bound) {
  V out;
  for (std::uint64_t v = 1; v <= bound; ++v)
    if (s.member(v)) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("pinned enumerations") {
  CHECK(SetDesc::geom_times(3, 2).member(12));
  CHECK(SetDesc::geom_times(3, 2).member(6));
  CHECK(SetDesc::geom_times(3, 2).member(48));
  CHECK_FALSE(SetDesc::geom_times(3, 2).member(3));
  CHECK_FALSE(SetDesc::geom_times(3, 2).member(36));

  CHECK(SetDesc::quotient(SetDesc::level(3), 2).enumerate(20) ==
        V{4, 6, 9, 10, 14, 15});

  CHECK(SetDesc::distinct_products(SetDesc::finite({2, 3, 5}), 2)
            .enumerate(100) == V{6, 10, 15});

  CHECK(SetDesc::diagonal("pow2").enumerate(10) == V{1, 2, 4, 8});

  CHECK(SetDesc::down_closure(SetDesc::finite({12})).enumerate(100) ==
        V{1, 2, 3, 4, 6, 12});

  CHECK(SetDesc::up_closure(SetDesc::finite({6, 10})).enumerate(40) ==
        V{6, 10, 12, 18, 20, 24, 30, 36, 40});

  CHECK(SetDesc::scale(2, SetDesc::level(1)).enumerate(20) == V{4, 6, 10, 14});

  CHECK(SetDesc::powers(SetDesc::primes(), 2).enumerate(100) ==
        V{4, 9, 25, 49});

  CHECK(SetDesc::multiples_of(6).enumerate(30) == V{6, 12, 18, 24, 30});

  CHECK(SetDesc::tail(SetDesc::primes(), 3).enumerate(20) ==
        V{7, 11, 13, 17, 19});

  CHECK(SetDesc::prime_index_mod(2, 1).enumerate(31) == V{2, 5, 11, 17, 23, 31});

  CHECK(SetDesc::quotient(SetDesc::multiples_of(6), 2).enumerate(12) ==
        V{3, 6, 9, 12});

  // products of two primes coincide with the second level
  CHECK(SetDesc::product_union(SetDesc::level(1), SetDesc::level(1))
            .enumerate(200) == SetDesc::level(2).enumerate(200));
}

TEST_CASE("alpha product blocks") {
  auto two_distinct = SetDesc::alpha_product({{SetDesc::finite({2, 3, 5}), 1, 2}});
  CHECK(two_distinct.enumerate(100) == V{6, 10, 15});

  auto square_times = SetDesc::alpha_product(
      {{SetDesc::finite({2, 3}), 2, 1}, {SetDesc::finite({5, 7}), 1, 1}});
  CHECK(square_times.enumerate(100) == V{20, 28, 45, 63});
  CHECK(square_times.member(45));
  CHECK_FALSE(square_times.member(50));  // 2 * 5^2: exponents land wrong

  // shared pool: p^2 * q with p, q distinct from the same set
  auto shared = SetDesc::alpha_product(
      {{SetDesc::finite({2, 3, 5}), 2, 1}, {SetDesc::finite({2, 3, 5}), 1, 1}});
  CHECK(shared.enumerate(200) == V{12, 18, 20, 45, 50, 75});

  CHECK_THROWS_AS(SetDesc::alpha_product({{SetDesc::level(2), 1, 1}}),
                  domain_error);
  CHECK_THROWS_AS(SetDesc::alpha_product({}), domain_error);
}

TEST_CASE("image sets") {
  auto sq = SetDesc::image("pow(2)", SetDesc::finite({2, 3}), std::nullopt);
  CHECK(sq.member(4));
  CHECK(sq.member(9));
  CHECK_FALSE(sq.member(8));
  CHECK(sq.enumerate(10) == V{4, 9});

  auto resolved = SetDesc::image("pow(2)", SetDesc::primes(),
                                 SetDesc::powers(SetDesc::primes(), 2));
  CHECK(resolved.member(49));
  CHECK_FALSE(resolved.member(8));
  CHECK(resolved.enumerate(30) == V{4, 9, 25});

  // constant image through a factor map: sf(2) of 4p is always 4
  auto constant = SetDesc::image("sf(2)", SetDesc::scale(4, SetDesc::primes()),
                                 std::nullopt);
  CHECK(constant.member(4));
  CHECK(constant.enumerate(100) == V{4});
}

TEST_CASE("construction normalizations") {
  CHECK(SetDesc::scale(1, SetDesc::primes()) == SetDesc::primes());
  CHECK(SetDesc::quotient(SetDesc::primes(), 1) == SetDesc::primes());
  CHECK(SetDesc::powers(SetDesc::primes(), 1) == SetDesc::primes());
  CHECK(SetDesc::distinct_products(SetDesc::primes(), 1) == SetDesc::primes());
  CHECK(SetDesc::tail(SetDesc::primes(), 0) == SetDesc::primes());
  CHECK(SetDesc::geom_times(5, 1) == SetDesc::finite({5}));
  CHECK(SetDesc::quotient(SetDesc::level(3), 2) == SetDesc::level(2));
  CHECK(SetDesc::quotient(SetDesc::level(1), 4) == SetDesc::finite({}));
  CHECK(SetDesc::quotient(SetDesc::finite({12, 15, 18}), 3) ==
        SetDesc::finite({4, 5, 6}));
  CHECK(SetDesc::tail(SetDesc::tail(SetDesc::primes(), 2), 1) ==
        SetDesc::tail(SetDesc::primes(), 3));
  CHECK(SetDesc::finite({5, 3, 3, 2}) == SetDesc::finite({2, 3, 5}));
  CHECK_THROWS_AS(SetDesc::finite({0}), domain_error);
  CHECK_THROWS_AS(SetDesc::powers(SetDesc::primes(), 0), domain_error);
  CHECK_THROWS_AS(SetDesc::geom_times(3, 0), domain_error);
  CHECK_THROWS_AS(SetDesc::prime_index_mod(3, 3), domain_error);
  CHECK_THROWS_AS(SetDesc::diagonal("nope"), domain_error);
}

TEST_CASE("membership and enumeration agree") {
  std::vector<SetDesc> corpus = {
      SetDesc::finite({3, 7, 100}),
      SetDesc::primes(),
      SetDesc::level(0),
      SetDesc::level(2),
      SetDesc::level(3),
      SetDesc::powers(SetDesc::primes(), 3),
      SetDesc::distinct_products(SetDesc::primes(), 2),
      SetDesc::scale(6, SetDesc::primes()),
      SetDesc::quotient(SetDesc::multiples_of(4), 6),
      SetDesc::up_closure(SetDesc::finite({4, 6})),
      SetDesc::up_closure(SetDesc::powers(SetDesc::primes(), 2)),
      SetDesc::down_closure(SetDesc::finite({360, 840})),
      SetDesc::down_closure(SetDesc::geom_times(3, 2)),
      SetDesc::product_union(SetDesc::level(1), SetDesc::geom_times(1, 2)),
      SetDesc::geom_times(3, 2),
      SetDesc::diagonal("pow2"),
      SetDesc::diagonal("pow3"),
      SetDesc::diagonal("primorial"),
      SetDesc::diagonal("smul1"),
      SetDesc::diagonal("smul2"),
      SetDesc::multiples_of(7),
      SetDesc::tail(SetDesc::level(2), 4),
      SetDesc::union_of(SetDesc::primes(), SetDesc::powers(SetDesc::primes(), 2)),
      SetDesc::intersection(SetDesc::level(2), SetDesc::multiples_of(2)),
      SetDesc::complement(SetDesc::level(1)),
      SetDesc::prime_index_mod(3, 1),
      SetDesc::alpha_product({{SetDesc::primes(), 1, 2}}),
      SetDesc::alpha_product(
          {{SetDesc::primes(), 2, 1}, {SetDesc::finite({2, 3, 5}), 1, 1}}),
      SetDesc::image("pow(2)", SetDesc::primes(), std::nullopt),
      SetDesc::image("sf(2)", SetDesc::scale(4, SetDesc::primes()),
                     std::nullopt),
      SetDesc::intersection(SetDesc::complement(SetDesc::level(1)),
                            SetDesc::complement(SetDesc::level(2))),
  };
  for (const auto& s : corpus) {
    CAPTURE(s.str());
    auto enumerated = s.enumerate(600);
    CHECK(enumerated == by_member(s, 600));
    CHECK(std::is_sorted(enumerated.begin(), enumerated.end()));
    CHECK(std::adjacent_find(enumerated.begin(), enumerated.end()) ==
          enumerated.end());
  }
}

TEST_CASE("level bounds cover every enumerated member") {
  std::vector<SetDesc> corpus = {
      SetDesc::level(2),
      SetDesc::powers(SetDesc::primes(), 3),
      SetDesc::distinct_products(SetDesc::primes(), 2),
      SetDesc::scale(4, SetDesc::level(2)),
      SetDesc::product_union(SetDesc::level(2), SetDesc::level(3)),
      SetDesc::geom_times(3, 2),
      SetDesc::tail(SetDesc::diagonal("pow2"), 3),
      SetDesc::union_of(SetDesc::level(1), SetDesc::level(4)),
      SetDesc::intersection(SetDesc::level(3), SetDesc::multiples_of(2)),
      SetDesc::down_closure(SetDesc::level(3)),
      SetDesc::alpha_product(
          {{SetDesc::primes(), 2, 2}, {SetDesc::primes(), 1, 1}}),
      SetDesc::multiples_of(12),
      SetDesc::quotient(SetDesc::multiples_of(8), 2),
  };
  for (const auto& s : corpus) {
    CAPTURE(s.str());
    LevelIndex lo = min_level_bound(s);
    LevelIndex hi = max_level_bound(s);
    for (auto v : s.enumerate(2000)) {
      LevelIndex om = omega(v);
      CHECK(om >= lo);
      if (hi != level_unbounded) CHECK(om <= hi);
    }
  }
  CHECK(exact_level(SetDesc::powers(SetDesc::primes(), 3)) == LevelIndex{3});
  CHECK(exact_level(SetDesc::alpha_product(
            {{SetDesc::primes(), 2, 2}, {SetDesc::primes(), 1, 1}})) ==
        LevelIndex{5});
  CHECK(exact_level(SetDesc::product_union(SetDesc::level(2),
                                           SetDesc::level(3))) ==
        LevelIndex{5});
  CHECK(exact_level(SetDesc::scale(4, SetDesc::level(2))) == LevelIndex{4});
  CHECK_FALSE(exact_level(SetDesc::geom_times(3, 2)).has_value());
  CHECK(min_level_bound(SetDesc::geom_times(3, 2)) == 2);
  CHECK(max_level_bound(SetDesc::down_closure(SetDesc::level(3))) == 3);
  CHECK(min_level_bound(SetDesc::finite({})) == level_unbounded);
}

TEST_CASE("subset rules") {
  auto L = [](LevelIndex i) { return SetDesc::level(i); };
  auto sub = [](const SetDesc& a, const SetDesc& b) {
    return symbolic_subset(a, b);
  };

  CHECK(sub(L(2), L(2)) == std::string("refl"));
  CHECK(sub(SetDesc::finite({4, 9}), L(2)) == std::string("finite-check"));
  CHECK(sub(SetDesc::finite({}), L(7)) == std::string("empty"));
  CHECK(sub(L(2), SetDesc::union_of(L(1), L(2))) == std::string("union-right"));
  CHECK(sub(SetDesc::union_of(L(2), SetDesc::powers(SetDesc::primes(), 2)),
            L(2)) == std::string("union-left"));
  CHECK(sub(SetDesc::powers(SetDesc::primes(), 2), L(2)) ==
        std::string("exact-level"));
  CHECK(sub(L(2), SetDesc::complement(L(3))) ==
        std::string("complement-intro"));
  // proved via disjointness of the left side from the inner set
  CHECK(sub(SetDesc::complement(L(2)),
            SetDesc::complement(SetDesc::powers(SetDesc::primes(), 2))) ==
        std::string("complement-intro"));
  CHECK(sub(L(2), SetDesc::intersection(L(2), SetDesc::complement(L(3)))) ==
        std::string("intersection-right"));
  CHECK(sub(SetDesc::intersection(SetDesc::primes(), SetDesc::multiples_of(2)),
            SetDesc::primes()) == std::string("intersection-left"));

  auto twoP = SetDesc::scale(2, SetDesc::primes());
  CHECK(sub(twoP, SetDesc::up_closure(twoP)) == std::string("up-intro"));
  // a singleton up-closure collapses to a multiples set first
  CHECK(sub(SetDesc::scale(6, L(2)), SetDesc::up_closure(SetDesc::finite({3}))) ==
        std::string("scale-multiple"));
  CHECK(sub(SetDesc::scale(6, L(2)),
            SetDesc::up_closure(SetDesc::finite({3, 7}))) ==
        std::string("scale-divisor"));
  CHECK(sub(SetDesc::image("pow(2)", L(2), std::nullopt),
            SetDesc::up_closure(L(2))) == std::string("pushforward-multiple"));
  CHECK(sub(SetDesc::geom_times(12, 2),
            SetDesc::up_closure(SetDesc::geom_times(3, 2))) ==
        std::string("family-aligned-divisor"));
  // a tail sits inside its own source, so plain up-introduction wins
  CHECK(sub(SetDesc::tail(SetDesc::diagonal("pow2"), 5),
            SetDesc::up_closure(SetDesc::diagonal("pow2"))) ==
        std::string("up-intro"));
  CHECK(sub(SetDesc::geom_times(8, 2),
            SetDesc::up_closure(SetDesc::finite({4, 9}))) ==
        std::string("chain-head-divisor"));
  CHECK(sub(SetDesc::geom_times(8, 2), SetDesc::multiples_of(8)) ==
        std::string("chain-head-divisor"));

  CHECK(sub(SetDesc::multiples_of(12), SetDesc::multiples_of(4)) ==
        std::string("multiples-nested"));
  CHECK(sub(SetDesc::scale(6, SetDesc::primes()), SetDesc::multiples_of(3)) ==
        std::string("scale-multiple"));
  CHECK(sub(SetDesc::prime_index_mod(3, 1), SetDesc::primes()) ==
        std::string("prime-index-subset"));
  CHECK(sub(SetDesc::geom_times(3, 2), SetDesc::multiples_of(1)) ==
        std::string("universe"));
  CHECK(sub(SetDesc::tail(SetDesc::geom_times(3, 2), 2),
            SetDesc::geom_times(3, 2)) == std::string("tail-subset"));
  CHECK(sub(SetDesc::tail(SetDesc::primes(), 5),
            SetDesc::tail(SetDesc::primes(), 2)) == std::string("tail-nested"));

  auto squares = SetDesc::powers(SetDesc::primes(), 2);
  CHECK(sub(SetDesc::image("pow(2)", SetDesc::primes(), squares), squares) ==
        std::string("image-resolved"));

  // unresolved images of the leveled factor / multiple maps
  auto W = SetDesc::tail(SetDesc::diagonal("pow2"), 5);
  auto sf2W = SetDesc::image("sf(2)", W, std::nullopt);
  auto sf3W = SetDesc::image("sf(3)", W, std::nullopt);
  CHECK(sub(sf3W, L(3)) == std::string("exact-level"));
  CHECK(min_level_bound(sf3W) == 3);
  CHECK(max_level_bound(sf3W) == 3);
  CHECK(sub(sf3W, SetDesc::up_closure(sf2W)) == std::string("factor-prefix"));
  CHECK(sub(SetDesc::tail(SetDesc::diagonal("pow2"), 7),
            SetDesc::up_closure(sf2W)) == std::string("pushforward-factor"));
  CHECK(sub(SetDesc::image("sm(3)", L(2), std::nullopt),
            SetDesc::up_closure(SetDesc::image("sm(2)", L(2), std::nullopt))) ==
        std::string("multiple-prefix"));
  // prefix rules need a shared source set
  CHECK_FALSE(sub(SetDesc::image("sf(3)", SetDesc::tail(W, 1), std::nullopt),
                  SetDesc::up_closure(sf2W)).has_value());

  // powers of a family are multiples of the family's aligned tails
  auto diag2 = SetDesc::diagonal("pow2");
  CHECK(sub(SetDesc::tail(SetDesc::powers(diag2, 2), 1),
            SetDesc::up_closure(SetDesc::tail(diag2, 1))) ==
        std::string("pushforward-multiple"));
  CHECK(sub(SetDesc::powers(SetDesc::geom_times(3, 2), 2),
            SetDesc::up_closure(SetDesc::geom_times(3, 2))) ==
        std::string("pushforward-multiple"));
  // the power tail must start at or past the core tail
  CHECK_FALSE(sub(SetDesc::powers(diag2, 2),
                  SetDesc::up_closure(SetDesc::tail(diag2, 1))).has_value());
  CHECK_FALSE(sub(SetDesc::powers(SetDesc::geom_times(3, 2), 2),
                  SetDesc::up_closure(
                      SetDesc::tail(SetDesc::geom_times(3, 2), 2))).has_value());
  // and the two sides must walk the same family
  CHECK_FALSE(sub(SetDesc::tail(SetDesc::powers(SetDesc::diagonal("pow3"), 2), 1),
                  SetDesc::up_closure(SetDesc::tail(diag2, 1))).has_value());

  CHECK_FALSE(sub(L(2), L(3)).has_value());
  CHECK_FALSE(sub(SetDesc::primes(), SetDesc::multiples_of(2)).has_value());
  CHECK_FALSE(sub(SetDesc::geom_times(3, 2),
                  SetDesc::up_closure(SetDesc::finite({5}))).has_value());
}

TEST_CASE("disjointness rules") {
  auto L = [](LevelIndex i) { return SetDesc::level(i); };
  auto dis = [](const SetDesc& a, const SetDesc& b) {
    return symbolic_disjoint(a, b);
  };

  CHECK(dis(SetDesc::finite({2, 3}), L(2)) == std::string("finite-disjoint"));
  CHECK(dis(L(2), SetDesc::finite({2, 3})) == std::string("finite-disjoint"));
  CHECK(dis(SetDesc::scale(8, L(1)), L(2)) == std::string("min-level"));
  CHECK(dis(SetDesc::down_closure(L(2)), L(3)) == std::string("max-level"));
  // a truncated diagonal starts above the level it once met
  CHECK(dis(SetDesc::tail(SetDesc::diagonal("pow2"), 3), L(2)) ==
        std::string("min-level"));
  CHECK(dis(SetDesc::geom_times(3, 4), L(4)) ==
        std::string("tail-avoids-level"));
  CHECK(dis(SetDesc::primes(), SetDesc::complement(SetDesc::primes())) ==
        std::string("complement-antitone"));
  CHECK(dis(SetDesc::intersection(L(2), SetDesc::multiples_of(4)), L(3)) ==
        std::string("max-level"));
  CHECK(dis(SetDesc::union_of(L(1), L(2)), L(4)) == std::string("max-level"));
  // cases the level bounds alone cannot settle
  CHECK(dis(SetDesc::intersection(SetDesc::complement(L(1)),
                                  SetDesc::geom_times(3, 4)),
            L(4)) == std::string("intersection-disjoint"));
  CHECK(dis(SetDesc::union_of(SetDesc::geom_times(3, 4),
                              SetDesc::geom_times(5, 4)),
            L(4)) == std::string("union-disjoint"));
  CHECK(dis(SetDesc::prime_index_mod(3, 0), SetDesc::prime_index_mod(3, 1)) ==
        std::string("prime-index-disjoint"));
  CHECK_FALSE(dis(SetDesc::prime_index_mod(3, 1),
                  SetDesc::prime_index_mod(3, 1)).has_value());

  CHECK_FALSE(dis(SetDesc::primes(), L(1)).has_value());
  CHECK_FALSE(dis(SetDesc::multiples_of(2), SetDesc::multiples_of(3)).has_value());
}

TEST_CASE("upward closure verdicts") {
  CHECK(is_upward_closed(SetDesc::up_closure(SetDesc::finite({4})), 100)
            .is_proven());
  CHECK(is_upward_closed(SetDesc::multiples_of(6), 100).rule ==
        "multiples-term");
  CHECK(is_upward_closed(SetDesc::intersection(SetDesc::multiples_of(2),
                                               SetDesc::multiples_of(3)),
                         100)
            .rule == "closed-composition");
  auto r1 = is_upward_closed(SetDesc::finite({2, 4}), 8);
  CHECK(r1.is_refuted());
  CHECK(r1.counterexample == 6);
  auto r2 = is_upward_closed(SetDesc::level(2), 100);
  CHECK(r2.is_refuted());
  CHECK(r2.counterexample == 8);
  auto r3 = is_upward_closed(SetDesc::complement(SetDesc::finite({})), 50);
  CHECK(r3.kind == Verdict::Kind::ConsistentUpTo);
  CHECK(r3.bound == 50);
}

TEST_CASE("finite evaluation") {
  auto fe = finite_eval(SetDesc::down_closure(SetDesc::finite({360})));
  REQUIRE(fe.has_value());
  CHECK(fe->size() == 24);
  CHECK(finite_eval(SetDesc::tail(SetDesc::finite({2, 3, 5, 7}), 2)) ==
        V{5, 7});
  CHECK(finite_eval(SetDesc::intersection(
            SetDesc::finite({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}),
            SetDesc::primes())) == V{2, 3, 5, 7});
  CHECK(finite_eval(SetDesc::scale(3, SetDesc::finite({1, 2}))) == V{3, 6});
  CHECK(finite_eval(SetDesc::product_union(SetDesc::finite({2, 3}),
                                           SetDesc::finite({5}))) ==
        V{10, 15});
  CHECK_FALSE(finite_eval(SetDesc::primes()).has_value());
  CHECK_FALSE(finite_eval(SetDesc::geom_times(3, 2)).has_value());
}

TEST_CASE("infinity and first elements") {
  CHECK(provably_infinite(SetDesc::primes()));
  CHECK(provably_infinite(SetDesc::geom_times(3, 2)));
  CHECK(provably_infinite(SetDesc::diagonal("smul2")));
  CHECK(provably_infinite(SetDesc::level(1)));
  CHECK_FALSE(provably_infinite(SetDesc::level(0)));
  CHECK_FALSE(provably_infinite(SetDesc::finite({1, 2, 3})));
  CHECK(provably_infinite(SetDesc::complement(SetDesc::finite({2}))));
  CHECK(provably_infinite(SetDesc::scale(7, SetDesc::primes())));
  CHECK(provably_infinite(SetDesc::product_union(SetDesc::primes(),
                                                 SetDesc::finite({2}))));
  CHECK(provably_infinite(SetDesc::tail(SetDesc::diagonal("pow2"), 100)));
  CHECK(provably_infinite(SetDesc::prime_index_mod(4, 2)));
  CHECK(provably_infinite(SetDesc::distinct_products(SetDesc::primes(), 3)));

  CHECK(first_element(SetDesc::geom_times(3, 2), 1000) == 6);
  CHECK(first_element(SetDesc::tail(SetDesc::primes(), 4), 1000) == 11);
  CHECK(first_element(SetDesc::alpha_product({{SetDesc::primes(), 1, 2}}),
                      1000) == 6);
  CHECK(first_element(SetDesc::alpha_product({{SetDesc::primes(), 2, 1},
                                              {SetDesc::primes(), 1, 1}}),
                      1000) == 12);
  CHECK_FALSE(first_element(SetDesc::finite({}), 1000).has_value());
}

TEST_CASE("diagonal selectors index their level") {
  for (const auto& name : selector_names()) {
    const auto& sel = get_selector(name);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i <= 14; ++i) {
      auto v = sel.value(i);
      REQUIRE(v.has_value());
      CAPTURE(name);
      CAPTURE(i);
      CHECK(omega(*v) == i);
      CHECK(*v > prev);
      if (sel.divisor_chain && i > 0) {
        auto p = sel.value(i - 1);
        CHECK(*v % *p == 0);
      }
      prev = *v;
    }
  }
  const auto& smul1 = get_selector("smul1");
  CHECK(smul1.value(0) == 1);
  CHECK(smul1.value(1) == 2);
  CHECK(smul1.value(2) == 6);
  CHECK(smul1.value(3) == 20);
  const auto& smul2 = get_selector("smul2");
  CHECK(smul2.value(2) == 4);
  CHECK(smul2.value(3) == 12);
  CHECK(smul2.value(4) == 36);
}

TEST_CASE("family views") {
  auto fv = family_view(SetDesc::geom_times(3, 2));
  REQUIRE(fv.has_value());
  CHECK(fv->first_index == 1);
  CHECK(fv->value(1) == 6);
  CHECK(fv->level_at(1) == LevelIndex{2});
  CHECK(fv->indices_on_level(4) == std::vector<std::uint64_t>{3});
  CHECK(fv->indices_on_level(0)->empty());

  auto tv = family_view(SetDesc::tail(SetDesc::diagonal("pow2"), 4));
  REQUIRE(tv.has_value());
  CHECK(tv->first_index == 4);
  CHECK(tv->value(4) == 16);
  CHECK(tv->indices_on_level(9) == std::vector<std::uint64_t>{9});

  CHECK_FALSE(family_view(SetDesc::primes()).has_value());
}
