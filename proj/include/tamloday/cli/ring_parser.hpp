#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tamloday/ringobj.hpp"

namespace tamloday::cli {

/// Syntax or semantic error in an input file, with its position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
  int line, column;
};

struct NamedRing {
  std::string name;
  RingObject ring;
  std::vector<std::string> generators;
};

namespace detail {

struct Token {
  enum Kind { Ident, Int, Punct, End } kind;
  std::string text;
  int line, column;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') ++line, col = 1;
    else ++col;
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    const int l = line, cc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) s += src[i], advance();
      out.push_back({Token::Ident, s, l, cc});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) s += src[i], advance();
      out.push_back({Token::Int, s, l, cc});
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      advance(), advance();
      out.push_back({Token::Punct, "->", l, cc});
    } else if (std::string("{};:,*=+-").find(c) != std::string::npos) {
      advance();
      out.push_back({Token::Punct, std::string(1, c), l, cc});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class RingParser {
 public:
  explicit RingParser(const std::string& src) : toks_(tokenize(src)) {}

  std::vector<NamedRing> file() {
    std::vector<NamedRing> out;
    do out.push_back(ring());
    while (peek().kind != Token::End);
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> gens_;
  std::size_t ngens_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  bool at(const std::string& punct) const { return peek().kind == Token::Punct && peek().text == punct; }
  bool at_word(const std::string& w) const { return peek().kind == Token::Ident && peek().text == w; }
  void expect(const std::string& punct) {
    if (!at(punct)) fail("expected '" + punct + "'" + (peek().kind == Token::End ? " before end of input" : ", found '" + peek().text + "'"));
    ++pos_;
  }
  void expect_section(const std::string& w) {
    if (!at_word(w)) {
      if (w == "unit") fail("unit required");
      fail("expected '" + w + ":'");
    }
    ++pos_;
    expect(":");
  }
  std::string ident() {
    if (peek().kind != Token::Ident) fail("expected a name");
    return toks_[pos_++].text;
  }
  std::size_t generator() {
    const Token& t = peek();
    auto it = gens_.find(t.text);
    if (t.kind != Token::Ident || it == gens_.end()) fail("unknown generator '" + t.text + "'");
    ++pos_;
    return it->second;
  }

  // lincomb ::= term (("+" | "-") term)* ; term ::= INT "*" id | id | INT
  Vec lincomb() {
    Vec v = zero_vec(ngens_);
    Integer sign = 1;
    if (at("-")) ++pos_, sign = -1;
    for (;;) {
      if (peek().kind == Token::Int) {
        Integer c(toks_[pos_++].text);
        if (at("*")) {
          ++pos_;
          v[generator()] += sign * c;
        } else {
          if (!unit_) fail("integer constant needs the unit declared first");
          v = v + Integer(sign * c) * *unit_;
        }
      } else {
        v[generator()] += sign;
      }
      if (at("+")) ++pos_, sign = 1;
      else if (at("-")) ++pos_, sign = -1;
      else break;
    }
    return v;
  }

  std::optional<Vec> unit_;

  NamedRing ring() {
    if (!at_word("ring")) fail("expected 'ring'");
    ++pos_;
    NamedRing out;
    out.name = ident();
    expect("{");
    gens_.clear();
    unit_.reset();
    expect_section("generators");
    for (;;) {
      const Token& t = peek();
      std::string g = ident();
      if (gens_.count(g)) throw ParseError("duplicate generator '" + g + "'", t.line, t.column);
      gens_[g] = out.generators.size();
      out.generators.push_back(g);
      if (!at(",")) break;
      ++pos_;
    }
    ngens_ = out.generators.size();
    expect(";");
    expect_section("relations");
    std::vector<Vec> rels;
    while (!at(";")) {
      rels.push_back(lincomb());
      if (at(",")) ++pos_;
      else break;
    }
    expect(";");
    const Token unit_tok = peek();
    expect_section("unit");
    unit_ = lincomb();
    expect(";");
    expect_section("mult");
    std::map<std::pair<std::size_t, std::size_t>, Vec> products;
    do {
      const Token t = peek();
      std::size_t a = generator();
      expect("*");
      std::size_t b = generator();
      expect("=");
      Vec v = lincomb();
      expect(";");
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      if (products.count(key)) throw ParseError("product given twice", t.line, t.column);
      products[key] = v;
    } while (peek().kind == Token::Ident && gens_.count(peek().text));
    std::optional<std::vector<Vec>> action;
    int order = 1;
    if (at_word("action")) {
      ++pos_;
      expect(":");
      std::vector<std::optional<Vec>> imgs(ngens_);
      do {
        std::size_t g = generator();
        expect("->");
        imgs[g] = lincomb();
        expect(";");
      } while (peek().kind == Token::Ident && gens_.count(peek().text));
      action.emplace();
      for (std::size_t g = 0; g < ngens_; ++g) action->push_back(imgs[g] ? *imgs[g] : unit_vec(ngens_, g));
    }
    const Token close = peek();
    expect("}");
    try {
      if (action) order = action_order(rels, *unit_, products, *action);
      out.ring = RingObject::from_presentation(ngens_, rels, *unit_, products, action, order);
    } catch (const AlgebraError& e) {
      throw ParseError(std::string("ring ") + out.name + ": " + e.what(), close.line, close.column);
    }
    Report rep = check_ring_axioms(out.ring);
    if (!rep.empty()) throw ParseError("ring " + out.name + " fails axioms: " + format_report(rep), close.line, close.column);
    return out;
  }

  // Order of the automorphism given on presentation generators.
  int action_order(const std::vector<Vec>& rels, const Vec& unit, const std::map<std::pair<std::size_t, std::size_t>, Vec>& products,
                   const std::vector<Vec>& action) const {
    RingObject r = RingObject::from_presentation(ngens_, rels, unit, products, action, 1);
    const GroupMap& a = r.automorphism();
    GroupMap pw = a;
    for (int k = 1; k <= 64; ++k, pw = compose(a, pw))
      if (pw.equals(GroupMap::identity(r.additive()))) return k;
    throw AlgebraError("action has no finite order up to 64");
  }
};

}  // namespace detail

inline std::vector<NamedRing> parse_ring_file(const std::string& text) { return detail::RingParser(text).file(); }

/// The single (or first) ring in a ring file.
inline RingObject parse_ring(const std::string& text) { return parse_ring_file(text).front().ring; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tamloday::cli
