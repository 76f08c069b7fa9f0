#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "ultralevels/witnesses.hpp"

using namespace ultralevels;

namespace {

// oracle: smallest divisor on a level, by full divisor scan
std::optional<std::uint64_t> brute_factor(std::uint64_t n, LevelIndex k) {
  std::optional<std::uint64_t> best;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    for (std::uint64_t e : {d, n / d})
      if (omega(e) == k && (!best || e < *best)) best = e;
  }
  return best;
}

// oracle: smallest multiple on a level, by ascending multiple scan
std::uint64_t brute_multiple(std::uint64_t n, LevelIndex k) {
  for (std::uint64_t m = n;; m += n)
    if (omega(m) == k) return m;
}

}  // namespace

TEST_CASE("smallest factor matches the divisor-scan oracle") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    LevelIndex om = omega(n);
    for (LevelIndex k = 0; k <= om; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      auto expect = brute_factor(n, k);
      REQUIRE(expect.has_value());
      CHECK(smallest_factor_in_level(n, k) == *expect);
    }
    CHECK_THROWS_AS(smallest_factor_in_level(n, om + 1), no_such_witness);
  }
}

TEST_CASE("smallest factors grow by division along levels") {
  for (std::uint64_t n = 2; n <= 3000; ++n) {
    LevelIndex om = omega(n);
    std::uint64_t prev = 1;
    for (LevelIndex k = 1; k <= om; ++k) {
      std::uint64_t cur = smallest_factor_in_level(n, k);
      CHECK(cur % prev == 0);
      CHECK(n % cur == 0);
      prev = cur;
    }
    CHECK(prev == n);  // the top witness is n itself
  }
}

TEST_CASE("smallest multiple matches the multiple-scan oracle") {
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    LevelIndex om = omega(n);
    for (LevelIndex k = om; k <= om + 5; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(smallest_multiple_in_level(n, k) == brute_multiple(n, k));
    }
    if (om > 0)
      CHECK_THROWS_AS(smallest_multiple_in_level(n, om - 1), no_such_witness);
  }
  CHECK_THROWS_AS(smallest_multiple_in_level(3, 64), no_such_witness);
}

TEST_CASE("pinned witness values") {
  CHECK(smallest_factor_in_level(12, 0) == 1);
  CHECK(smallest_factor_in_level(12, 1) == 2);
  CHECK(smallest_factor_in_level(12, 2) == 4);
  CHECK(smallest_factor_in_level(12, 3) == 12);
  CHECK(smallest_factor_in_level(45, 2) == 9);
  CHECK(smallest_factor_in_level(105, 2) == 15);
  CHECK(smallest_multiple_in_level(1, 3) == 8);
  CHECK(smallest_multiple_in_level(6, 2) == 6);
  CHECK(smallest_multiple_in_level(6, 4) == 24);
  CHECK(smallest_multiple_in_level(9, 3) == 18);
}

TEST_CASE("three-two map") {
  CHECK(three_two_map(6) == 2);
  CHECK(three_two_map(12) == 4);
  CHECK(three_two_map(96) == 32);
  CHECK_THROWS_AS(three_two_map(3), domain_error);
  CHECK_THROWS_AS(three_two_map(18), domain_error);
  CHECK_THROWS_AS(three_two_map(10), domain_error);
}

TEST_CASE("map registry") {
  const NamedMap& sf2 = get_map("sf(2)");
  CHECK(sf2.kind == MapKind::Factor);
  CHECK(sf2.apply(12) == 4);
  CHECK(sf2.apply(30) == 6);
  CHECK_THROWS_AS(sf2.apply(7), domain_error);   // level 1: off the domain
  CHECK_THROWS_AS(sf2.apply(1), domain_error);
  CHECK(sf2.domain.member(4));
  CHECK_FALSE(sf2.domain.member(5));

  const NamedMap& sm3 = get_map("sm(3)");
  CHECK(sm3.kind == MapKind::Multiple);
  CHECK(sm3.apply(6) == 12);
  CHECK(sm3.apply(1) == 8);
  CHECK_THROWS_AS(sm3.apply(16), domain_error);  // level 4: off the domain

  const NamedMap& sq = get_map("pow(2)");
  CHECK(sq.apply(9) == 81);
  REQUIRE(sq.tail_image);
  auto img = sq.tail_image(SetDesc::primes(), 2);
  REQUIRE(img.has_value());
  CHECK(img->enumerate(200) == std::vector<std::uint64_t>{25, 49, 121, 169});

  const NamedMap& ttm = get_map("threetwomap");
  CHECK(ttm.apply(24) == 8);
  CHECK_THROWS_AS(ttm.apply(9), domain_error);
  REQUIRE(ttm.tail_image);
  auto timg = ttm.tail_image(SetDesc::geom_times(3, 2), 1);
  REQUIRE(timg.has_value());
  CHECK(timg->enumerate(40) == std::vector<std::uint64_t>{4, 8, 16, 32});

  CHECK_THROWS_AS(get_map("nosuchmap"), parse_error);
  CHECK_THROWS_AS(get_map("sf"), parse_error);
  CHECK_THROWS_AS(get_map("threetwomap(2)"), parse_error);
  CHECK_THROWS_AS(get_map("sf(x)"), parse_error);
  CHECK_THROWS_AS(get_map("sf(999)"), domain_error);

  // registry hands back the same object per spelling
  CHECK(&get_map("sf(2)") == &sf2);
}

TEST_CASE("map domains describe exactly the defined inputs") {
  const NamedMap& sf3 = get_map("sf(3)");
  const NamedMap& sm2 = get_map("sm(2)");
  for (std::uint64_t n = 1; n <= 500; ++n) {
    CHECK(sf3.domain.member(n) == (omega(n) >= 3));
    CHECK(sm2.domain.member(n) == (omega(n) <= 2));
  }
}
