#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "tamloday/cli/ring_parser.hpp"
#include "tamloday/gsimp.hpp"

namespace tamloday::cli {

/// Finds a cellwise inclusion z -> x: cells matched in order by dimension and orbit size,
/// first admissible choice of target cell and exponent in lexicographic order.
inline std::optional<CellInclusion> find_inclusion(const SimplicialGSet& z, const SimplicialGSet& x) {
  const std::size_t nz = z.cells().size();
  CellInclusion inc;
  std::vector<bool> used(x.cells().size(), false);
  // Faces of a cell must already be placed; cells are ordered so that faces come first only
  // when listed earlier, so the full check runs at the leaves.
  std::function<bool(std::size_t)> go = [&](std::size_t c) {
    if (c == nz) {
      try {
        check_inclusion(z, x, inc);
        return true;
      } catch (const AlgebraError&) {
        return false;
      }
    }
    for (std::size_t t = 0; t < x.cells().size(); ++t) {
      if (used[t] || x.cells()[t].dim != z.cells()[c].dim || x.orbit_size_of_cell(t) != z.orbit_size_of_cell(c)) continue;
      for (int e = 0; e < x.orbit_size_of_cell(t); ++e) {
        used[t] = true;
        inc.cells.push_back({t, e});
        if (go(c + 1)) return true;
        inc.cells.pop_back();
        used[t] = false;
      }
    }
    return false;
  };
  if (go(0)) return inc;
  return std::nullopt;
}

namespace detail {

class SpaceParser {
 public:
  SpaceParser(const std::string& src, int group_order) : src_(src), n_(group_order) {}

  SimplicialGSet parse() {
    SimplicialGSet x = expr();
    skip();
    if (i_ != src_.size()) fail("unexpected trailing input");
    return x;
  }

 private:
  const std::string& src_;
  int n_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, static_cast<int>(i_) + 1); }
  void skip() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < src_.size() && src_[i_] == c) return ++i_, true;
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::size_t s = i_;
    while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
    if (s == i_) fail("expected a space name");
    return src_.substr(s, i_ - s);
  }
  int integer() {
    skip();
    std::size_t s = i_;
    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
    if (s == i_) fail("expected an integer");
    return std::stoi(src_.substr(s, i_ - s));
  }
  void group_must_be(int n, const std::string& what) {
    if (n != n_) fail(what + " is a C" + std::to_string(n) + "-space but the group is C" + std::to_string(n_));
  }

  SimplicialGSet expr() {
    const std::size_t start = i_;
    const std::string w = word();
    auto args = [&](std::size_t k) {
      std::vector<SimplicialGSet> out;
      expect('(');
      for (std::size_t a = 0; a < k; ++a) {
        if (a) expect(',');
        out.push_back(expr());
      }
      expect(')');
      return out;
    };
    auto optional_parens = [&] {
      if (eat('(')) expect(')');
    };
    if (w == "point") return optional_parens(), point(n_);
    if (w == "free_orbit") return optional_parens(), free_orbit(n_);
    if (w == "rotation_circle" || w == "rotation_quotient_circle") {
      expect('(');
      int n = integer();
      expect(')');
      group_must_be(n, w);
      return w == "rotation_circle" ? rotation_circle(n) : rotation_quotient_circle(n);
    }
    if (w == "reflection_circle" || w == "interval_sigma") {
      expect('(');
      expect(')');
      group_must_be(2, w);
      return w == "reflection_circle" ? reflection_circle() : interval_sigma();
    }
    if (w == "cone") return cone(args(1)[0]);
    if (w == "suspension") return suspension(args(1)[0]);
    if (w == "sigma_suspension") {
      group_must_be(2, w);
      return sigma_suspension(args(1)[0]);
    }
    if (w == "product") {
      auto a = args(2);
      return product(a[0], a[1]);
    }
    if (w == "disjoint") {
      auto a = args(2);
      return disjoint_union(a[0], a[1]);
    }
    if (w == "pushout") {
      auto a = args(3);
      auto zx = find_inclusion(a[1], a[0]);
      auto zy = find_inclusion(a[1], a[2]);
      if (!zx || !zy) throw ParseError("pushout: no cellwise inclusion of the middle space", 1, static_cast<int>(start) + 1);
      return pushout(a[0], a[1], a[2], *zx, *zy);
    }
    i_ = start;
    fail("unknown space '" + w + "'");
  }
};

}  // namespace detail

/// Parses a space expression over the cyclic group of the given order.
inline SimplicialGSet parse_space(const std::string& text, int group_order) {
  return detail::SpaceParser(text, group_order).parse();
}

}  // namespace tamloday::cli
