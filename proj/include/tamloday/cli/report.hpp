#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tamloday/homotopy.hpp"

namespace tamloday::cli {

using Json = nlohmann::ordered_json;

/// Plain-data record of one homotopy Mackey functor, as reported and cached.
struct PiRecord {
  int degree = 0;
  std::vector<std::string> free_orders, fixed_orders;  // canonical orders, "0" for Z
  std::vector<std::vector<std::string>> res, tr, weyl;  // row-major, rows index the target
  std::vector<std::vector<std::string>> norm_on_generators;  // degree 0 only: N(free gen j)

  bool zero() const { return free_orders.empty() && fixed_orders.empty(); }
  bool operator==(const PiRecord&) const = default;
};

namespace detail {

inline std::vector<std::string> orders_of(const FgAbGroup& g) {
  std::vector<std::string> out;
  for (auto& o : g.orders()) out.push_back(o.get_str());
  return out;
}

inline std::vector<std::vector<std::string>> matrix_of(const GroupMap& f) {
  const Matrix& m = f.matrix();
  std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = Integer(m(i, j)).get_str();
  return out;
}

inline std::string describe_orders(const std::vector<std::string>& orders) {
  if (orders.empty()) return "0";
  std::string s;
  for (auto& o : orders) {
    if (!s.empty()) s += " + ";
    s += o == "0" ? std::string("Z") : "Z/" + o;
  }
  return s;
}

inline Json number(const std::string& s) {
  Integer v(s);
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(s);
}

inline Json json_matrix(const std::vector<std::vector<std::string>>& m) {
  Json a = Json::array();
  for (auto& row : m) {
    Json r = Json::array();
    for (auto& x : row) r.push_back(number(x));
    a.push_back(r);
  }
  return a;
}

inline std::vector<std::vector<std::string>> matrix_from_json(const Json& a) {
  std::vector<std::vector<std::string>> m;
  for (auto& row : a) {
    std::vector<std::string> r;
    for (auto& x : row) r.push_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
    m.push_back(r);
  }
  return m;
}

inline Json json_level(const std::vector<std::string>& orders) {
  Json f = Json::array();
  int rank = 0;
  for (auto& o : orders) {
    if (o == "0") ++rank;
    else f.push_back(number(o));
  }
  return Json{{"invariant_factors", f}, {"rank", rank}};
}

inline std::vector<std::string> level_from_json(const Json& j) {
  std::vector<std::string> out;
  for (auto& f : j.at("invariant_factors")) out.push_back(f.is_string() ? f.get<std::string>() : std::to_string(f.get<long>()));
  for (int r = 0; r < j.at("rank").get<int>(); ++r) out.push_back("0");
  return out;
}

inline std::string row_string(const std::vector<std::string>& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + row[i];
  return s + "]";
}

inline std::string matrix_string(const std::vector<std::vector<std::string>>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + row_string(m[i]);
  return s + "]";
}

}  // namespace detail

inline PiRecord make_record(const PiResult& r) {
  PiRecord out;
  out.degree = r.degree;
  out.free_orders = detail::orders_of(r.mackey.free);
  out.fixed_orders = detail::orders_of(r.mackey.fixed);
  out.res = detail::matrix_of(r.mackey.res);
  out.tr = detail::matrix_of(r.mackey.tr);
  out.weyl = detail::matrix_of(r.mackey.weyl);
  if (r.tambara) {
    // π_0 of the Tambara quotient and of the homology agree as groups; report the quotient's norm.
    const TambaraFunctor& t = *r.tambara;
    for (std::size_t j = 0; j < t.free().dim(); ++j) {
      std::vector<std::string> row;
      for (auto& x : t.norm(t.free().gen(j))) row.push_back(x.get_str());
      out.norm_on_generators.push_back(row);
    }
  }
  return out;
}

inline Json to_json(const PiRecord& r) {
  Json j;
  j["degree"] = r.degree;
  j["fixed"] = detail::json_level(r.fixed_orders);
  j["free"] = detail::json_level(r.free_orders);
  j["res"] = detail::json_matrix(r.res);
  j["tr"] = detail::json_matrix(r.tr);
  j["weyl"] = detail::json_matrix(r.weyl);
  j["norm_on_generators"] = detail::json_matrix(r.norm_on_generators);
  return j;
}

inline PiRecord record_from_json(const Json& j) {
  PiRecord r;
  r.degree = j.at("degree").get<int>();
  r.fixed_orders = detail::level_from_json(j.at("fixed"));
  r.free_orders = detail::level_from_json(j.at("free"));
  r.res = detail::matrix_from_json(j.at("res"));
  r.tr = detail::matrix_from_json(j.at("tr"));
  r.weyl = detail::matrix_from_json(j.at("weyl"));
  r.norm_on_generators = detail::matrix_from_json(j.at("norm_on_generators"));
  return r;
}

/// Human-readable lines for one π_n.
inline std::string text_report(const PiRecord& r) {
  std::ostringstream o;
  o << "pi[" << r.degree << "]: ";
  if (r.zero()) {
    o << "zero\n";
    return o.str();
  }
  o << "fixed " << detail::describe_orders(r.fixed_orders) << ", free " << detail::describe_orders(r.free_orders) << "\n";
  o << "  res: " << detail::matrix_string(r.res) << "\n";
  o << "  tr: " << detail::matrix_string(r.tr) << "\n";
  o << "  weyl: " << detail::matrix_string(r.weyl) << "\n";
  if (!r.norm_on_generators.empty()) o << "  norm on free generators: " << detail::matrix_string(r.norm_on_generators) << "\n";
  return o.str();
}

inline std::string describe_tambara(const TambaraFunctor& t) {
  std::ostringstream o;
  o << "fixed " << t.fixed().describe() << ", free " << t.free().describe() << "\n";
  o << "  res: " << detail::matrix_string(detail::matrix_of(t.mackey.res)) << "\n";
  o << "  tr: " << detail::matrix_string(detail::matrix_of(t.mackey.tr)) << "\n";
  o << "  weyl: " << detail::matrix_string(detail::matrix_of(t.mackey.weyl)) << "\n";
  std::vector<std::vector<std::string>> norms;
  for (std::size_t j = 0; j < t.free().dim(); ++j) {
    std::vector<std::string> row;
    for (auto& x : t.norm(t.free().gen(j))) row.push_back(x.get_str());
    norms.push_back(row);
  }
  o << "  norm on free generators: " << detail::matrix_string(norms) << "\n";
  return o.str();
}

inline Json tambara_json(const TambaraFunctor& t) {
  PiResult r;
  r.mackey = t.mackey;
  r.tambara = std::shared_ptr<const TambaraFunctor>(std::shared_ptr<const TambaraFunctor>{}, &t);
  Json j = to_json(make_record(r));
  j.erase("degree");
  return j;
}

}  // namespace tamloday::cli
