#pragma once

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bredon.hpp"
#include "burnside.hpp"
#include "group.hpp"
#include "mackey.hpp"
#include "reps.hpp"

namespace eqorient::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reading

/// Parses a file; any I/O or syntax failure is an input error.
inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline bool is_file(const std::string& spec) {
  std::error_code ec;
  return std::filesystem::is_regular_file(spec, ec);
}

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + ": " + e.what());
  }
}

inline Perm perm_from_json(const Json& j, std::size_t degree) {
  std::vector<std::uint32_t> images;
  for (const auto& x : j) {
    const auto v = x.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= degree) throw InvalidPermutation("image out of range");
    images.push_back(static_cast<std::uint32_t>(v));
  }
  if (images.size() != degree) throw InvalidPermutation("permutation has wrong length");
  return Perm(std::move(images));
}

/// An element given either by index or by its permutation images.
inline std::size_t element_from_json(const Json& j, const FiniteGroup& g) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw InvalidArgument("element index out of range");
    return static_cast<std::size_t>(v);
  }
  auto found = g.find(perm_from_json(j, g.degree()));
  if (!found) throw InvalidArgument("permutation is not an element of the group");
  return *found;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_array() || j.size() != 2) throw InvalidRepresentation("matrix entry must be [num, den]");
  const auto den = j[1].get<long long>();
  if (den == 0) throw InvalidRepresentation("zero denominator");
  return Rational(Integer(j[0].get<long long>()), Integer(den));
}

}  // namespace detail

/// {"degree": n, "generators": [[...], ...], "name": optional}
inline GroupPtr group_from_json(const Json& j) {
  return detail::guarded("group JSON", [&] {
    const auto degree = j.at("degree").get<long long>();
    if (degree <= 0) throw InvalidArgument("degree must be positive");
    std::vector<Perm> gens;
    for (const auto& p : j.at("generators")) gens.push_back(detail::perm_from_json(p, static_cast<std::size_t>(degree)));
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : "G";
    return close(static_cast<std::size_t>(degree), std::move(gens), kDefaultOrderCap, std::move(name));
  });
}

/// A built-in name or a path to group JSON.
inline GroupPtr load_group(const std::string& spec) {
  if (is_file(spec)) return group_from_json(read_json_file(spec));
  return named_group(spec);
}

/// Cells are numbered globally in dimension order; boundary entries refer to
/// those global numbers and must drop dimension by one.
inline GCWComplex complex_from_json(const Json& j, const GroupPtr& g, std::string name = "complex") {
  return detail::guarded("complex JSON", [&] {
    GCWComplex x;
    x.group = g;
    x.table = std::make_shared<const SubgroupTable>(subgroup_table(g));
    x.name = std::move(name);
    std::vector<std::pair<std::size_t, std::size_t>> where;  // global -> (dim, local)
    for (const auto& layer : j.at("cells")) {
      const std::size_t n = x.cells.size();
      x.cells.emplace_back();
      for (const auto& c : layer) {
        const auto cls = c.at("isotropyClass").get<long long>();
        if (cls < 0) throw InvalidComplex("negative isotropy class");
        where.emplace_back(n, x.cells[n].size());
        x.cells[n].push_back({static_cast<std::size_t>(cls)});
      }
    }
    x.boundary.resize(x.cells.size());
    if (j.contains("boundary"))
      for (const auto& e : j.at("boundary")) {
        const auto from = e.at("from").get<long long>();
        const auto to = e.at("to").get<long long>();
        if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= where.size() ||
            static_cast<std::size_t>(to) >= where.size())
          throw InvalidComplex("boundary refers to a missing cell");
        const auto [df, lf] = where[static_cast<std::size_t>(from)];
        const auto [dt, lt] = where[static_cast<std::size_t>(to)];
        if (df != dt + 1) throw InvalidComplex("boundary must go from dimension n to n-1");
        BoundaryEntry b{lf, lt, {}};
        for (const auto& t : e.at("terms")) {
          const auto conj = t.at("conjugator").get<long long>();
          if (conj < 0) throw InvalidComplex("negative conjugator");
          b.terms.push_back({Integer(t.at("coeff").get<long long>()), static_cast<std::size_t>(conj)});
        }
        x.boundary[df].push_back(std::move(b));
      }
    validate_complex(x);
    return x;
  });
}

inline GCWComplex load_complex(const std::string& spec, const GroupPtr& g) {
  if (spec == "point") return point(g);
  if (spec == "circle_trivial") return circle_trivial(g);
  if (spec == "free_orbit") return free_orbit(g);
  if (spec == "sigma_sphere") return sigma_sphere(g);
  if (spec == "s2sigma_circle") return s2sigma_circle(g);
  if (!is_file(spec)) throw InvalidArgument("unknown complex '" + spec + "'");
  return complex_from_json(read_json_file(spec), g, std::filesystem::path(spec).stem().string());
}

inline MackeyFunctor load_coefficients(const std::string& name, const GroupPtr& g) {
  if (name == "burnside") return burnside_mackey(g);
  if (name == "constZ") return constant_Z(g);
  if (name == "constF2") return constant_F2(g);
  if (name == "units") return units_mackey(g);
  if (name == "ghost") return ghost_kernel_mackey(g);
  throw InvalidArgument("unknown coefficients '" + name + "' (burnside|constZ|constF2|units|ghost)");
}

/// {"dim": d, "generators": [{"pi": elt, "g": elt, "matrix": [[[n, d], ...], ...]}]}
/// with elements of Π and G given by index or by permutation images.
inline RationalMatrixRep rep_from_json(const Json& j, const ProductGroup& pg) {
  return detail::guarded("representation JSON", [&] {
    const auto dim = j.at("dim").get<long long>();
    if (dim < 0) throw InvalidRepresentation("negative dimension");
    const auto d = static_cast<std::size_t>(dim);
    std::vector<std::size_t> elements;
    std::vector<RationalMatrix> mats;
    for (const auto& gen : j.at("generators")) {
      const auto p = detail::element_from_json(gen.at("pi"), *pg.pi);
      const auto x = detail::element_from_json(gen.at("g"), *pg.g);
      elements.push_back(pg.index(p, x));
      RationalMatrix m(d, d);
      const auto& rows = gen.at("matrix");
      if (rows.size() != d) throw InvalidRepresentation("matrix has wrong number of rows");
      for (std::size_t r = 0; r < d; ++r) {
        if (rows[r].size() != d) throw InvalidRepresentation("matrix row has wrong length");
        for (std::size_t c = 0; c < d; ++c) m(r, c) = detail::rational_from_json(rows[r][c]);
      }
      mats.push_back(std::move(m));
    }
    return rep_from_generators(pg.product, d, elements, mats);
  });
}

// ---------------------------------------------------------------------------
// Representation expressions
//
//   expr  := call | integer
//   call  := name "(" expr ("," expr)* ")"
//   regular(X) trivial(X) sign(X)   X = Pi | G (or the group's own name)
//   sum(a, b) tensor(a, b) scale(n, a) external(a_on_Pi, b_on_G)
// A representation of Π or G alone at top level is pulled back to Π×G.

class RepParser {
 public:
  RepParser(std::string text, const ProductGroup& pg) : s_(std::move(text)), pg_(pg) {}

  RationalMatrixRep parse() {
    auto v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    if (v.group == pg_.product) return v;
    if (v.group == pg_.pi) return external_product(pg_, v, trivial_rep(pg_.g));
    return external_product(pg_, trivial_rep(pg_.pi), v);
  }

 private:
  std::string s_;
  const ProductGroup& pg_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("rep expression: " + why + " at column " + std::to_string(pos_ + 1));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name or number");
    return s_.substr(start, pos_ - start);
  }
  std::size_t number() {
    auto w = word();
    if (w.find_first_not_of("0123456789") != std::string::npos || w.size() > 6) fail("expected a small count");
    return std::stoul(w);
  }
  GroupPtr factor() {
    auto w = word();
    if (w == "Pi" || w == pg_.pi->name()) return pg_.pi;
    if (w == "G" || w == pg_.g->name()) return pg_.g;
    fail("unknown group '" + w + "' (use Pi or G)");
  }
  RationalMatrixRep expr() {
    auto f = word();
    expect('(');
    RationalMatrixRep out;
    if (f == "regular") {
      out = regular_rep(factor());
    } else if (f == "trivial") {
      out = trivial_rep(factor());
    } else if (f == "sign") {
      auto g = factor();
      auto t = subgroup_table(g);
      auto idx2 = t.index_two_classes();
      if (idx2.empty()) throw NotIndexTwo(g->name() + " has no index-two subgroup");
      out = sign_rep_of_index2(t.rep(idx2.front()));
    } else if (f == "sum" || f == "tensor") {
      auto a = expr();
      expect(',');
      auto b = expr();
      if (a.group != b.group) fail(f + " of representations of different groups");
      out = f == "sum" ? direct_sum(a, b) : tensor(a, b);
    } else if (f == "scale") {
      auto n = number();
      expect(',');
      out = multiple(n, expr());
    } else if (f == "external") {
      auto a = expr();
      expect(',');
      auto b = expr();
      if (a.group != pg_.pi || b.group != pg_.g) fail("external(a, b) needs a on Pi and b on G");
      out = external_product(pg_, a, b);
    } else {
      fail("unknown function '" + f + "'");
    }
    expect(')');
    return out;
  }
};

inline RationalMatrixRep load_rep(const std::string& spec, const ProductGroup& pg) {
  if (is_file(spec)) return rep_from_json(read_json_file(spec), pg);
  return RepParser(spec, pg).parse();
}

/// Comma-separated integer coefficients in class order, e.g. "-1,1,1,1,-1".
inline BurnsideElement parse_element(const std::string& text, const RingPtr& ring) {
  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.erase(item.begin());
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
    const bool digits = !item.empty() && item.find_first_not_of("0123456789", item[0] == '-' ? 1 : 0) == std::string::npos &&
                        item != "-";
    if (!digits) throw InvalidArgument("element coefficients must be integers, got '" + item + "'");
    coeffs.emplace_back(item);
    start = end + 1;
  }
  if (coeffs.size() != ring->rank())
    throw InvalidArgument("expected " + std::to_string(ring->rank()) + " coefficients, got " +
                          std::to_string(coeffs.size()));
  return BurnsideElement(ring, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Writing

/// Machine integers as numbers, anything larger as a decimal string.
inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Json to_json(const Rational& x) {
  if (denominator(x) == 1) return to_json(Integer(numerator(x)));
  return Json::array({to_json(Integer(numerator(x))), to_json(Integer(denominator(x)))});
}

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// {"coeffs": {"classIndex": c}}, nonzero coefficients only.
inline Json to_json(const BurnsideElement& x) {
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < x.coeffs().size(); ++i)
    if (x.coeff(i) != 0) coeffs[std::to_string(i)] = to_json(x.coeff(i));
  return Json{{"coeffs", coeffs}, {"text", to_string(x)}};
}

inline Json to_json(const AbelianGroupPresentation& a) {
  Json torsion = Json::array();
  for (const auto& t : a.torsion) torsion.push_back(to_json(t));
  return Json{{"free_rank", a.free_rank}, {"torsion", torsion}, {"text", to_string(a)}};
}

inline Json to_json(const Character& c) {
  Json out = Json::array();
  for (const auto& v : c.values) out.push_back(to_json(v));
  return out;
}

inline Json perm_json(const Perm& p) {
  Json out = Json::array();
  for (std::size_t i = 0; i < p.degree(); ++i) out.push_back(p[i]);
  return out;
}

inline Json to_json(const MackeyFunctor& m) {
  Json levels = Json::array();
  for (std::size_t s = 0; s < m.subgroup_count(); ++s) {
    Json members = Json::array();
    for (auto x : m.table->all_subgroups[s].members()) members.push_back(x);
    levels.push_back(Json{{"subgroup", s},
                          {"class", m.table->class_of[s]},
                          {"members", members},
                          {"group", to_json(m.level[s])},
                          {"basis", m.basis_labels[s]}});
  }
  Json res = Json::array(), tr = Json::array();
  for (const auto& [kh, mat] : m.res) res.push_back(Json{{"from", kh.second}, {"to", kh.first}, {"matrix", to_json(mat)}});
  for (const auto& [kh, mat] : m.tr) tr.push_back(Json{{"from", kh.first}, {"to", kh.second}, {"matrix", to_json(mat)}});
  Json conj = Json::array();
  for (std::size_t g = 0; g < m.conj.size(); ++g)
    for (std::size_t s = 0; s < m.conj[g].size(); ++s)
      conj.push_back(Json{{"element", g}, {"from", s}, {"to", m.conj_index(g, s)}, {"matrix", to_json(m.conj[g][s])}});
  return Json{{"name", m.name}, {"modulus", to_json(m.modulus)}, {"levels", levels},
              {"res", res}, {"tr", tr}, {"conj", conj}};
}

}  // namespace eqorient::io
