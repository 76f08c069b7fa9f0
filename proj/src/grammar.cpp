#include <cctype>
#include <sstream>

#include "ultralevels/setlang.hpp"

namespace ultralevels {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind;
  std::string text;
  std::uint64_t number = 0;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      std::uint64_t v = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::uint64_t d = static_cast<std::uint64_t>(text[i] - '0');
        if (v > (UINT64_MAX - d) / 10)
          throw parse_error("integer literal does not fit in 64 bits", start);
        v = v * 10 + d;
        ++i;
      }
      out.push_back({Token::Number, text.substr(start, i - start), v, start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_'))
        ++i;
      out.push_back({Token::Ident, text.substr(start, i - start), 0, start});
      continue;
    }
    if (c == '(' || c == ')' || c == ',' || c == ';') {
      out.push_back({Token::Punct, std::string(1, c), 0, i});
      ++i;
      continue;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::End, "", 0, text.size()});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, peek().pos);
  }

  void expect_punct(char c) {
    if (peek().kind != Token::Punct || peek().text[0] != c)
      fail(std::string("expected '") + c + "'");
    ++at;
  }

  bool accept_punct(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      ++at;
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    if (peek().kind != Token::Number) fail("expected a number");
    return next().number;
  }

  std::string ident() {
    if (peek().kind != Token::Ident) fail("expected a name");
    return next().text;
  }

  std::string map_spec() {
    std::string name = ident();
    if (accept_punct('(')) {
      std::uint64_t arg = number();
      expect_punct(')');
      name += "(" + std::to_string(arg) + ")";
    }
    return name;
  }

  SetDesc set();

  SetDesc parenthesized_set() {
    expect_punct('(');
    SetDesc s = set();
    expect_punct(')');
    return s;
  }
};

SetDesc Parser::set() {
  std::size_t head_pos = peek().pos;
  std::string head = ident();
  if (head == "primes") return SetDesc::primes();
  if (head == "finite") {
    expect_punct('(');
    std::vector<std::uint64_t> vals;
    if (!accept_punct(')')) {
      vals.push_back(number());
      while (accept_punct(',')) vals.push_back(number());
      expect_punct(')');
    }
    return SetDesc::finite(std::move(vals));
  }
  if (head == "level") {
    expect_punct('(');
    std::uint64_t i = number();
    expect_punct(')');
    if (i > 0xFFFFFFFEull) fail("level index out of range");
    return SetDesc::level(static_cast<LevelIndex>(i));
  }
  if (head == "pow" || head == "dp" || head == "tail") {
    expect_punct('(');
    SetDesc s = set();
    expect_punct(',');
    std::uint64_t k = number();
    expect_punct(')');
    if (head == "tail") return SetDesc::tail(std::move(s), k);
    if (k > 0xFFFFFFFFull) fail("parameter out of range");
    if (head == "pow")
      return SetDesc::powers(std::move(s), static_cast<std::uint32_t>(k));
    return SetDesc::distinct_products(std::move(s),
                                      static_cast<std::uint32_t>(k));
  }
  if (head == "scale") {
    expect_punct('(');
    std::uint64_t n = number();
    expect_punct(',');
    SetDesc s = set();
    expect_punct(')');
    return SetDesc::scale(n, std::move(s));
  }
  if (head == "quot") {
    expect_punct('(');
    SetDesc s = set();
    expect_punct(',');
    std::uint64_t n = number();
    expect_punct(')');
    return SetDesc::quotient(std::move(s), n);
  }
  if (head == "up") return SetDesc::up_closure(parenthesized_set());
  if (head == "down") return SetDesc::down_closure(parenthesized_set());
  if (head == "comp") return SetDesc::complement(parenthesized_set());
  if (head == "pu" || head == "union" || head == "inter") {
    expect_punct('(');
    SetDesc a = set();
    expect_punct(',');
    SetDesc b = set();
    expect_punct(')');
    if (head == "pu") return SetDesc::product_union(std::move(a), std::move(b));
    if (head == "union") return SetDesc::union_of(std::move(a), std::move(b));
    return SetDesc::intersection(std::move(a), std::move(b));
  }
  if (head == "geom") {
    expect_punct('(');
    std::uint64_t c = number();
    expect_punct(',');
    std::uint64_t r = number();
    expect_punct(')');
    return SetDesc::geom_times(c, r);
  }
  if (head == "diag") {
    expect_punct('(');
    std::size_t sel_pos = peek().pos;
    std::string sel = ident();
    expect_punct(')');
    for (const auto& known : selector_names())
      if (known == sel) return SetDesc::diagonal(sel);
    throw parse_error("unknown diagonal selector: " + sel, sel_pos);
  }
  if (head == "mult") {
    expect_punct('(');
    std::uint64_t d = number();
    expect_punct(')');
    return SetDesc::multiples_of(d);
  }
  if (head == "primesidx") {
    expect_punct('(');
    std::uint64_t m = number();
    expect_punct(',');
    std::uint64_t r = number();
    expect_punct(')');
    if (m > 0xFFFFFFFFull || r > 0xFFFFFFFFull)
      fail("parameter out of range");
    return SetDesc::prime_index_mod(static_cast<std::uint32_t>(m),
                                    static_cast<std::uint32_t>(r));
  }
  if (head == "aprod") {
    expect_punct('(');
    std::vector<std::tuple<SetDesc, std::uint32_t, std::uint32_t>> blocks;
    do {
      expect_punct('(');
      SetDesc base = set();
      expect_punct(',');
      std::uint64_t k = number();
      expect_punct(',');
      std::uint64_t mult = number();
      expect_punct(')');
      if (k > 0xFFFFFFFFull || mult > 0xFFFFFFFFull)
        fail("parameter out of range");
      blocks.emplace_back(std::move(base), static_cast<std::uint32_t>(k),
                          static_cast<std::uint32_t>(mult));
    } while (accept_punct(';'));
    expect_punct(')');
    return SetDesc::alpha_product(std::move(blocks));
  }
  if (head == "img") {
    expect_punct('(');
    std::size_t map_pos = peek().pos;
    std::string map = map_spec();
    expect_punct(',');
    SetDesc src = set();
    expect_punct(')');
    try {
      return SetDesc::image(map, std::move(src), std::nullopt);
    } catch (const parse_error& e) {
      throw parse_error(e.what(), map_pos);
    }
  }
  throw parse_error("unknown set constructor: " + head, head_pos);
}

}  // namespace

SetDesc parse_set(const std::string& text) {
  Parser p{tokenize(text)};
  SetDesc s = p.set();
  if (p.peek().kind != Token::End) p.fail("trailing input after set spec");
  return s;
}

std::string SetDesc::str() const {
  const SetNode& n = *node_;
  std::ostringstream os;
  switch (n.kind) {
    case SetKind::Finite: {
      os << "finite(";
      for (std::size_t i = 0; i < n.values.size(); ++i) {
        if (i) os << ",";
        os << n.values[i];
      }
      os << ")";
      break;
    }
    case SetKind::Primes:
      os << "primes";
      break;
    case SetKind::Level:
      os << "level(" << n.a << ")";
      break;
    case SetKind::Powers:
      os << "pow(" << n.kids[0].str() << "," << n.a << ")";
      break;
    case SetKind::DistinctProducts:
      os << "dp(" << n.kids[0].str() << "," << n.a << ")";
      break;
    case SetKind::Scale:
      os << "scale(" << n.values[0] << "," << n.kids[0].str() << ")";
      break;
    case SetKind::Quotient:
      os << "quot(" << n.kids[0].str() << "," << n.values[0] << ")";
      break;
    case SetKind::UpClosure:
      os << "up(" << n.kids[0].str() << ")";
      break;
    case SetKind::DownClosure:
      os << "down(" << n.kids[0].str() << ")";
      break;
    case SetKind::ProductUnion:
      os << "pu(" << n.kids[0].str() << "," << n.kids[1].str() << ")";
      break;
    case SetKind::GeomTimes:
      os << "geom(" << n.values[0] << "," << n.values[1] << ")";
      break;
    case SetKind::Diagonal:
      os << "diag(" << n.name << ")";
      break;
    case SetKind::MultiplesOf:
      os << "mult(" << n.values[0] << ")";
      break;
    case SetKind::Tail:
      os << "tail(" << n.kids[0].str() << "," << n.values[0] << ")";
      break;
    case SetKind::Union:
      os << "union(" << n.kids[0].str() << "," << n.kids[1].str() << ")";
      break;
    case SetKind::Intersection:
      os << "inter(" << n.kids[0].str() << "," << n.kids[1].str() << ")";
      break;
    case SetKind::Complement:
      os << "comp(" << n.kids[0].str() << ")";
      break;
    case SetKind::PrimeIndexMod:
      os << "primesidx(" << n.a << "," << n.b << ")";
      break;
    case SetKind::AlphaProduct: {
      os << "aprod(";
      for (std::size_t i = 0; i < n.blocks.size(); ++i) {
        if (i) os << ";";
        os << "(" << std::get<0>(n.blocks[i]).str() << ","
           << std::get<1>(n.blocks[i]) << "," << std::get<2>(n.blocks[i])
           << ")";
      }
      os << ")";
      break;
    }
    case SetKind::Image:
      os << "img(" << n.name << "," << n.kids[0].str() << ")";
      break;
  }
  return os.str();
}

}  // namespace ultralevels
