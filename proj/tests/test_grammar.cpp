#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "ultralevels/setlang.hpp"

using namespace ultralevels;

TEST_CASE("printer output reparses to an equal descriptor") {
  std::vector<std::string> corpus = {
      "finite()",
      "finite(4,6,9)",
      "primes",
      "level(0)",
      "level(3)",
      "pow(primes,2)",
      "dp(primes,3)",
      "scale(6,primes)",
      "quot(mult(6),2)",
      "up(finite(4,6))",
      "down(level(3))",
      "pu(level(1),level(2))",
      "geom(3,2)",
      "diag(pow2)",
      "diag(smul2)",
      "mult(12)",
      "tail(primes,5)",
      "union(level(1),comp(level(2)))",
      "inter(primes,mult(2))",
      "comp(union(level(0),level(1)))",
      "primesidx(3,1)",
      "aprod((primes,1,2))",
      "aprod((primes,2,1);(primesidx(2,0),1,3))",
      "img(sf(2),scale(4,primes))",
      "img(threetwomap,geom(3,2))",
      "img(pow(3),level(2))",
      "up(aprod((finite(2,3,5),1,2)))",
      "tail(diag(primorial),7)",
  };
  for (const auto& text : corpus) {
    CAPTURE(text);
    SetDesc once = parse_set(text);
    std::string printed = once.str();
    SetDesc twice = parse_set(printed);
    CHECK(once == twice);
    // printing is a fixpoint after one round
    CHECK(twice.str() == printed);
  }
}

TEST_CASE("normalizing constructors print their normal form") {
  CHECK(parse_set("quot(level(3),2)").str() == "level(2)");
  CHECK(parse_set("quot(level(1),4)").str() == "finite()");
  CHECK(parse_set("tail(tail(primes,2),1)").str() == "tail(primes,3)");
  CHECK(parse_set("scale(1,primes)").str() == "primes");
  CHECK(parse_set("quot(primes,1)").str() == "primes");
  CHECK(parse_set("pow(primes,1)").str() == "primes");
  CHECK(parse_set("dp(primes,1)").str() == "primes");
  CHECK(parse_set("tail(primes,0)").str() == "primes");
  CHECK(parse_set("geom(5,1)").str() == "finite(5)");
  CHECK(parse_set("finite(5,3,3,2)").str() == "finite(2,3,5)");
  CHECK(parse_set("quot(finite(12,15,18),3)").str() == "finite(4,5,6)");
  CHECK(parse_set("up(finite(6))").str() == "mult(6)");
  CHECK(parse_set("pu(finite(4),level(2))").str() == "scale(4,level(2))");
  CHECK(parse_set("pu(level(2),finite(4))").str() == "scale(4,level(2))");
  CHECK(parse_set("pu(finite(),level(2))").str() == "finite()");
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse_set(" union( level(1) ,\tcomp( level(2) ) ) ") ==
        parse_set("union(level(1),comp(level(2)))"));
  CHECK(parse_set("aprod( ( primes , 1 , 2 ) ; ( primes , 2 , 1 ) )") ==
        parse_set("aprod((primes,1,2);(primes,2,1))"));
}

TEST_CASE("parse errors carry positions") {
  auto pos_of = [](const std::string& text) -> std::size_t {
    try {
      parse_set(text);
    } catch (const parse_error& e) {
      return e.position;
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(pos_of("levle(3)") == 0);
  CHECK(pos_of("level(x)") == 6);
  CHECK(pos_of("level(3") == 7);
  CHECK(pos_of("level(3))") == 8);
  CHECK(pos_of("union(level(1)level(2))") == 14);
  CHECK(pos_of("finite(1,2,") == 11);
  CHECK(pos_of("level(99999999999999999999)") == 6);
  CHECK(pos_of("diag(unknownsel)") != static_cast<std::size_t>(-1));
  CHECK(pos_of("@") == 0);
  CHECK(pos_of("") == 0);
}

TEST_CASE("construction errors surface through parsing") {
  CHECK_THROWS_AS(parse_set("finite(0)"), domain_error);
  CHECK_THROWS_AS(parse_set("geom(3,0)"), domain_error);
  CHECK_THROWS_AS(parse_set("primesidx(2,2)"), domain_error);
  CHECK_THROWS_AS(parse_set("aprod((level(2),1,1))"), domain_error);
  CHECK_THROWS_AS(parse_set("scale(0,primes)"), domain_error);
}

TEST_CASE("parsed sets evaluate like their constructors") {
  CHECK(parse_set("quot(level(3),2)").enumerate(20) ==
        std::vector<std::uint64_t>{4, 6, 9, 10, 14, 15});
  CHECK(parse_set("dp(finite(2,3,5),2)").enumerate(100) ==
        std::vector<std::uint64_t>{6, 10, 15});
  CHECK(parse_set("img(threetwomap,geom(3,2))").enumerate(40) ==
        std::vector<std::uint64_t>{2, 4, 8, 16, 32});
  CHECK(parse_set("diag(pow2)").member(64));
  CHECK_FALSE(parse_set("diag(pow2)").member(63));
}
