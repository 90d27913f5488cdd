#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tamloday/cli/cache.hpp"
#include "tamloday/cli/report.hpp"
#include "tamloday/cli/ring_parser.hpp"
#include "tamloday/cli/space_parser.hpp"

namespace tamloday::cli {

/// Invalid invocation: bad option values, type errors in expressions.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct JobSpec {
  std::string command;       // pi, check, norm, box, compare, relative-pi
  std::string mode;          // compare: rotation-hc | subdivision | reflection-bar | suspension-bar | properties
  int group = 2;             // order of the cyclic group
  std::string space;         // space expression
  std::vector<std::string> coeffs;  // coefficient expressions
  std::string base;          // relative-pi base coefficient
  std::string ring;          // norm: ring file
  int n = 0;                 // compare: n
  bool flipped = false;      // compare suspension-bar
  int max_degree = 3;
  std::string format = "text";
  std::string cache_dir;
  std::string rings_dir;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
};

/// A parsed coefficient expression with its canonical serialization.
struct ParsedCoefficient {
  TambaraPtr t;
  std::optional<RingObject> ring;  // the underlying ring of constant:<ring>
  std::string canonical;
};

namespace detail {

inline std::string canonical_ring(const RingObject& r) {
  std::ostringstream o;
  o << "orders";
  for (auto& x : r.additive().orders()) o << " " << x;
  o << ";unit " << to_string(r.one()) << ";table";
  for (auto& row : r.table())
    for (auto& v : row) o << " " << to_string(v);
  if (r.has_automorphism()) {
    o << ";aut " << r.automorphism_order();
    for (std::size_t j = 0; j < r.dim(); ++j) o << " " << to_string(r.automorphism().image_of_gen(j));
  }
  return o.str();
}

inline std::string resolve_ring_path(const std::string& name, const std::string& rings_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  if (!rings_dir.empty() && fs::exists(fs::path(rings_dir) / name)) return (fs::path(rings_dir) / name).string();
  throw UsageError("ring file not found: " + name);
}

class CoefficientParser {
 public:
  CoefficientParser(const std::string& src, int p, std::string rings_dir) : src_(src), p_(p), dir_(std::move(rings_dir)) {}

  ParsedCoefficient parse() {
    ParsedCoefficient c = expr();
    if (i_ != src_.size()) fail("unexpected trailing input");
    return c;
  }

 private:
  const std::string& src_;
  int p_;
  std::string dir_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("coefficient: " + msg, 1, static_cast<int>(i_) + 1); }
  bool starts(const std::string& s) const { return src_.compare(i_, s.size(), s) == 0; }
  std::string until_delim() {
    std::size_t s = i_;
    int depth = 0;
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '(') ++depth;
      if ((c == ',' || c == ')') && depth-- == 0) break;
      ++i_;
    }
    if (s == i_) fail("expected a ring file name");
    return src_.substr(s, i_ - s);
  }
  RingObject ring_file(const std::string& name) {
    const std::string path = resolve_ring_path(name, dir_);
    return parse_ring(read_file(path));
  }

  ParsedCoefficient expr() {
    if (starts("burnside")) {
      i_ += 8;
      return {burnside_tambara(p_), std::nullopt, "burnside"};
    }
    if (starts("constant:")) {
      i_ += 9;
      const std::string name = until_delim();
      RingObject r = ring_file(name);
      std::string stem = std::filesystem::path(name).stem().string();
      return {constant_tambara(r, p_, stem), r, "constant{" + canonical_ring(r) + "}"};
    }
    if (starts("norm:")) {
      i_ += 5;
      RingObject r = ring_file(until_delim());
      return {norm_construction(r, p_).t, std::nullopt, "norm{" + canonical_ring(r) + "}"};
    }
    if (starts("box(")) {
      i_ += 4;
      ParsedCoefficient a = expr();
      if (i_ >= src_.size() || src_[i_] != ',') fail("expected ','");
      ++i_;
      ParsedCoefficient b = expr();
      if (i_ >= src_.size() || src_[i_] != ')') fail("expected ')'");
      ++i_;
      return {box_tambara(a.t, b.t).t, std::nullopt, "box(" + a.canonical + "," + b.canonical + ")"};
    }
    fail("expected burnside, constant:<ring>, norm:<ring> or box(C,C)");
  }
};

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline void require_prime_group(int n) {
  if (!is_prime(n)) throw UsageError("Tambara-level jobs need a prime group order, got C" + std::to_string(n));
}

inline void require_max_degree(int d) {
  if (d < 1) throw UsageError("--max-degree must be at least 1");
}

/// Ring map from a ring whose additive group is generated by its unit.
inline RingMap unit_ring_map(const RingObject& b, const RingObject& t) {
  if (b.dim() != 1) throw UsageError("relative base ring must be cyclic as an abelian group");
  const Integer order = b.additive().order(0);
  Integer u = b.one()[0], inv;
  if (order == 0) {
    if (u != 1 && u != -1) throw UsageError("relative base ring must be generated by its unit");
    inv = u;
  } else if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), order.get_mpz_t()) == 0) {
    throw UsageError("relative base ring must be generated by its unit");
  }
  RingMap f;
  try {
    f = {b, t, GroupMap::from_images(b.additive(), t.additive(), {t.additive().reduce(inv * t.one())})};
  } catch (const AlgebraError&) {
    throw UsageError("no unital ring map from the base ring: the unit's order does not divide");
  }
  Report rep = check_ring_map(f);
  if (!rep.empty()) throw UsageError("no unital ring map from the base ring: " + format_report(rep));
  return f;
}

}  // namespace detail

inline ParsedCoefficient parse_coefficient(const std::string& text, int p, const std::string& rings_dir) {
  return detail::CoefficientParser(detail::strip_spaces(text), p, rings_dir).parse();
}

/// Default location of the bundled ring files.
inline std::string default_rings_dir() {
  if (const char* e = std::getenv("TAMLODAY_RINGS_DIR")) return e;
#ifdef TAMLODAY_RINGS_DIR
  return TAMLODAY_RINGS_DIR;
#else
  return "rings";
#endif
}

namespace detail {

inline std::optional<Cache> job_cache(const JobSpec& job) {
  if (const char* e = std::getenv("TAMLODAY_CACHE_DIR"); e && *e) return Cache(e);
  if (!job.cache_dir.empty()) return Cache(job.cache_dir);
  return std::nullopt;
}

inline std::string pi_output(const JobSpec& job, const std::vector<PiRecord>& recs, const std::string& header) {
  if (job.format == "json") {
    Json j;
    j["command"] = job.command;
    j["group"] = job.group;
    j["space"] = strip_spaces(job.space);
    if (!job.base.empty()) j["base"] = strip_spaces(job.base);
    j["coeff"] = strip_spaces(job.coeffs.front());
    j["max_degree"] = job.max_degree;
    j["pi"] = Json::array();
    for (auto& r : recs) j["pi"].push_back(to_json(r));
    return j.dump(2) + "\n";
  }
  std::string out = header;
  for (auto& r : recs) out += text_report(r);
  return out;
}

template <class Build>
std::vector<PiRecord> cached_pi(const JobSpec& job, const std::string& canonical, Build&& build) {
  std::optional<Cache> cache = job_cache(job);
  const std::string key = Cache::key(job.command, canonical);
  if (cache)
    if (auto hit = cache->get(key)) {
      try {
        std::vector<PiRecord> recs;
        for (auto& r : Json::parse(*hit)) recs.push_back(record_from_json(r));
        return recs;
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  SimplicialTambara s = build();
  std::vector<PiRecord> recs;
  for (int n = 0; n < job.max_degree; ++n) recs.push_back(make_record(pi_n(s, n, key)));
  if (cache) {
    Json arr = Json::array();
    for (auto& r : recs) arr.push_back(to_json(r));
    cache->put(key, arr.dump());
  }
  return recs;
}

inline const std::string& single_coeff(const JobSpec& job) {
  if (job.coeffs.size() != 1) throw UsageError(job.command + " needs exactly one --coeff");
  return job.coeffs.front();
}

inline RunResult run_pi(const JobSpec& job) {
  require_prime_group(job.group);
  require_max_degree(job.max_degree);
  if (job.space.empty()) throw UsageError("pi needs --space");
  ParsedCoefficient c = parse_coefficient(single_coeff(job), job.group, job.rings_dir);
  SimplicialGSet x = parse_space(job.space, job.group);
  const std::string canonical = "C" + std::to_string(job.group) + "\n" + strip_spaces(job.space) + "\n" + c.canonical + "\n" +
                                std::to_string(job.max_degree);
  auto recs = cached_pi(job, canonical, [&] { return loday(x, c.t, job.max_degree); });
  std::string header = "pi of L_{" + strip_spaces(job.space) + "}(" + strip_spaces(job.coeffs.front()) + ") over C" +
                       std::to_string(job.group) + ", degrees < " + std::to_string(job.max_degree) + "\n";
  return {0, pi_output(job, recs, header)};
}

inline RunResult run_relative_pi(const JobSpec& job) {
  require_prime_group(job.group);
  require_max_degree(job.max_degree);
  if (job.space.empty() || job.base.empty()) throw UsageError("relative-pi needs --space and --base");
  ParsedCoefficient t = parse_coefficient(single_coeff(job), job.group, job.rings_dir);
  ParsedCoefficient b = parse_coefficient(job.base, job.group, job.rings_dir);
  TambaraMorphism f;
  if (b.canonical == "burnside") f = unit_map(b.t, t.t);
  else if (b.ring && t.ring) f = constant_morphism(b.t, t.t, unit_ring_map(*b.ring, *t.ring).map);
  else throw UsageError("relative-pi needs base burnside, or constant base and coefficient rings");
  SimplicialGSet x = parse_space(job.space, job.group);
  const std::string canonical = "C" + std::to_string(job.group) + "\n" + strip_spaces(job.space) + "\n" + b.canonical + "\n" +
                                t.canonical + "\n" + std::to_string(job.max_degree);
  auto recs = cached_pi(job, canonical, [&] { return relative_loday(f, x, job.max_degree).s; });
  std::string header = "pi of relative L_{" + strip_spaces(job.space) + "} of " + strip_spaces(job.coeffs.front()) + " over " +
                       strip_spaces(job.base) + ", C" + std::to_string(job.group) + ", degrees < " +
                       std::to_string(job.max_degree) + "\n";
  return {0, pi_output(job, recs, header)};
}

inline RunResult run_check(const JobSpec& job) {
  require_prime_group(job.group);
  ParsedCoefficient c = parse_coefficient(single_coeff(job), job.group, job.rings_dir);
  Report rep = check_tambara_axioms(*c.t);
  if (rep.empty() && !job.space.empty()) {
    require_max_degree(job.max_degree);
    SimplicialTambara s = loday(parse_space(job.space, job.group), c.t, job.max_degree, false);
    rep = check_simplicial_tambara(s);
  }
  if (!rep.empty()) return {2, "axiom violations:\n" + format_report(rep) + "\n"};
  return {0, "all axioms hold\n"};
}

inline RunResult run_norm(const JobSpec& job) {
  require_prime_group(job.group);
  if (job.ring.empty()) throw UsageError("norm needs --ring");
  RingObject r = parse_ring(read_file(resolve_ring_path(job.ring, job.rings_dir)));
  NormConstruction nc = norm_construction(r, job.group);
  Report rep = check_tambara_axioms(*nc.t);
  if (!rep.empty()) return {2, "axiom violations:\n" + format_report(rep) + "\n"};
  if (job.format == "json") return {0, tambara_json(*nc.t).dump(2) + "\n"};
  return {0, "N_e^{C" + std::to_string(job.group) + "}(" + job.ring + "): " + describe_tambara(*nc.t)};
}

inline RunResult run_box(const JobSpec& job) {
  require_prime_group(job.group);
  if (job.coeffs.size() < 2) throw UsageError("box needs at least two --coeff");
  std::vector<TambaraPtr> fs;
  for (auto& e : job.coeffs) fs.push_back(parse_coefficient(e, job.group, job.rings_dir).t);
  BoxTambara b = box_tambara(fs, job.group);
  Report rep = check_tambara_axioms(*b.t);
  if (!rep.empty()) return {2, "axiom violations:\n" + format_report(rep) + "\n"};
  if (job.format == "json") return {0, tambara_json(*b.t).dump(2) + "\n"};
  return {0, "box: " + describe_tambara(*b.t)};
}

inline RunResult run_compare(const JobSpec& job) {
  require_max_degree(job.max_degree);
  const int D = job.max_degree;
  std::ostringstream o;
  auto coeff = [&](int p) { return parse_coefficient(single_coeff(job), p, job.rings_dir); };
  auto ring_of = [&](const ParsedCoefficient& c) {
    if (!c.ring) throw UsageError("compare " + job.mode + " needs a constant:<ring> coefficient");
    return *c.ring;
  };
  if (job.mode == "rotation-hc") {
    if (job.n < 1) throw UsageError("rotation-hc needs --n");
    if (is_prime(job.n)) {
      ParsedCoefficient c = coeff(job.n);
      rotation_hc_iso(c.t, D);
      o << "rotation circle vs twisted cyclic nerve of the norm, C" << job.n << ", D=" << D << ": verified\n";
      rotation_quotient_hc_iso(c.t, D);
      o << "quotient rotation circle vs cyclic nerve, C" << job.n << ", D=" << D << ": verified\n";
    } else {
      rotation_hc_ring_iso(ring_of(coeff(2)), job.n, D);
      o << "ring-level rotation circle vs twisted cyclic nerve, C" << job.n << ", D=" << D << ": verified\n";
    }
  } else if (job.mode == "subdivision") {
    if (job.n < 1) throw UsageError("subdivision needs --n");
    subdivision_iso(ring_of(coeff(2)), job.n, D);
    o << "sd_" << job.n << " of the cyclic bar vs the rotation circle, D=" << D << ": verified\n";
  } else if (job.mode == "reflection-bar") {
    reflection_bar_iso(coeff(2).t, D);
    o << "reflection circle vs two-sided bar, D=" << D << ": verified\n";
  } else if (job.mode == "suspension-bar") {
    require_prime_group(job.group);
    if (job.space.empty()) throw UsageError("suspension-bar needs --space");
    suspension_bar_iso(parse_space(job.space, job.group), coeff(job.group).t, D, job.flipped);
    o << (job.flipped ? "sigma-" : "") << "suspension vs diagonal bar, D=" << D << ": verified\n";
  } else if (job.mode == "properties") {
    require_prime_group(job.group);
    ParsedCoefficient c = coeff(job.group);
    const int p = job.group;
    SimplicialGSet s0 = disjoint_union(point(p), point(p));
    SimplicialGSet x = p == 2 ? reflection_circle() : rotation_circle(p);
    disjoint_union_iso(x, rotation_circle(p), c.t, D);
    o << "disjoint union: verified\n";
    box_distributivity_iso(x, c.t, burnside_tambara(p), D);
    o << "box distributivity: verified\n";
    diagonal_product_iso(s0, s0, c.t, D);
    o << "diagonal of products: verified\n";
    if (p == 2) {
      SimplicialGSet i = interval_sigma(), z = free_orbit(2);
      auto zx = find_inclusion(z, i);
      if (!zx) throw VerificationError("no inclusion of the endpoints");
      CellInclusion zy = *zx;
      zy.cells[0].second = 1;
      pushout_iso(i, z, i, *zx, zy, c.t, D);
      o << "pushout: verified\n";
    }
  } else {
    throw UsageError("unknown comparison '" + job.mode + "'");
  }
  o << "verified\n";
  return {0, o.str()};
}

}  // namespace detail

/// Maps errors to exit codes: 2 for verification failures, 1 for usage or input errors.
template <class F>
RunResult guarded(F&& body) {
  try {
    return body();
  } catch (const VerificationError& e) {
    return {2, std::string("verification failed: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {1, std::string("parse error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {1, std::string("error: ") + e.what() + "\n"};
  }
}

/// Runs one job.
inline RunResult run(const JobSpec& job) {
  return guarded([&] {
    if (job.format != "text" && job.format != "json") throw UsageError("--format must be text or json");
    if (job.command == "pi") return detail::run_pi(job);
    if (job.command == "relative-pi") return detail::run_relative_pi(job);
    if (job.command == "check") return detail::run_check(job);
    if (job.command == "norm") return detail::run_norm(job);
    if (job.command == "box") return detail::run_box(job);
    if (job.command == "compare") return detail::run_compare(job);
    throw UsageError("unknown command '" + job.command + "'");
  });
}

/// Parses "C<n>" or "<n>".
inline int parse_group(const std::string& g) {
  std::string s = g;
  if (!s.empty() && (s[0] == 'C' || s[0] == 'c')) s = s.substr(1);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad group '" + g + "', expected C<n>");
  int n = std::stoi(s);
  if (n < 1) throw UsageError("group order must be positive");
  return n;
}

}  // namespace tamloday::cli
