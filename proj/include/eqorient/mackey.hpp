#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "burnside.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace eqorient {

/// Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk with d1 | d2 | ... | dk.
struct AbelianGroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  AbelianGroupPresentation() = default;
  AbelianGroupPresentation(std::size_t free, std::vector<Integer> tors)
      : free_rank(free), torsion(std::move(tors)) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2) throw InvalidArgument("torsion coefficient below 2");
      if (i && torsion[i] % torsion[i - 1] != 0)
        throw InvalidArgument("torsion coefficients must divide successively");
    }
  }
  static AbelianGroupPresentation free(std::size_t r) { return {r, {}}; }
  static AbelianGroupPresentation f2_space(std::size_t d) {
    return {0, std::vector<Integer>(d, Integer(2))};
  }

  /// Number of coordinates: one per cyclic summand.
  std::size_t generators() const noexcept { return free_rank + torsion.size(); }
  bool is_zero() const noexcept { return generators() == 0; }
  friend bool operator==(const AbelianGroupPresentation&, const AbelianGroupPresentation&) = default;
};

inline std::string to_string(const AbelianGroupPresentation& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (a.free_rank) {
    os << "Z";
    if (a.free_rank > 1) os << "^" << a.free_rank;
    first = false;
  }
  for (std::size_t i = 0; i < a.torsion.size();) {
    std::size_t j = i;
    while (j < a.torsion.size() && a.torsion[j] == a.torsion[i]) ++j;
    if (!first) os << " + ";
    os << "(Z/" << a.torsion[i] << ")";
    if (j - i > 1) os << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

/// A Mackey functor on a fixed group, stored on every subgroup (not only
/// class representatives). Maps act on coordinate column vectors; entries
/// are read modulo `modulus` (0 for Z-valued functors, 2 for F2-valued).
struct MackeyFunctor {
  using Key = std::pair<std::size_t, std::size_t>;  // (K, H) subgroup indices, K <= H

  std::string name;
  GroupPtr group;
  std::shared_ptr<const SubgroupTable> table;
  Integer modulus = 0;
  /// level[s] is the value at G/S for subgroup index s.
  std::vector<AbelianGroupPresentation> level;
  /// Human-readable name of each coordinate at each level.
  std::vector<std::vector<std::string>> basis_labels;
  std::map<Key, IntMatrix> res;  // M(H) -> M(K)
  std::map<Key, IntMatrix> tr;   // M(K) -> M(H)
  /// conj[g][s]: M(S) -> M(gSg^-1).
  std::vector<std::vector<IntMatrix>> conj;

  std::size_t subgroup_count() const { return table->all_subgroups.size(); }
  std::size_t dim(std::size_t s) const { return level[s].generators(); }

  const IntMatrix& res_map(std::size_t k, std::size_t h) const { return lookup(res, k, h); }
  const IntMatrix& tr_map(std::size_t k, std::size_t h) const { return lookup(tr, k, h); }
  const IntMatrix& conj_map(std::size_t g, std::size_t s) const { return conj.at(g).at(s); }

  std::size_t conj_index(std::size_t g, std::size_t s) const {
    return table->index_of(conjugate(table->all_subgroups[s], g));
  }

  /// Value at the class representative of class c.
  const AbelianGroupPresentation& class_level(std::size_t c) const {
    return level[table->class_reps[c]];
  }

  /// res from the representative of class h to that of class k, routed
  /// through the stored witness g with gKg^-1 <= H.
  IntMatrix class_res(std::size_t k, std::size_t h) const {
    auto [g, kg] = witness(k, h);
    const std::size_t hs = table->class_reps[h];
    return reduce(conj_map(group->inv(g), kg) * res_map(kg, hs));
  }
  IntMatrix class_tr(std::size_t k, std::size_t h) const {
    auto [g, kg] = witness(k, h);
    const std::size_t ks = table->class_reps[k];
    const std::size_t hs = table->class_reps[h];
    return reduce(tr_map(kg, hs) * conj_map(g, ks));
  }

  IntMatrix reduce(IntMatrix m) const { return reduce_mod(std::move(m), modulus); }

 private:
  const IntMatrix& lookup(const std::map<Key, IntMatrix>& m, std::size_t k, std::size_t h) const {
    auto it = m.find({k, h});
    if (it == m.end()) throw InvalidArgument("no map between these subgroups (not an inclusion)");
    return it->second;
  }
  std::pair<std::size_t, std::size_t> witness(std::size_t k, std::size_t h) const {
    if (!table->subconjugacy.at(k).at(h))
      throw InvalidArgument("class is not subconjugate to the target class");
    const std::size_t g = table->witness[k][h];
    return {g, conj_index(g, table->class_reps[k])};
  }
};

namespace detail {

/// Every subgroup realized as its own group with its Burnside ring.
struct Lattice {
  GroupPtr group;
  std::shared_ptr<const SubgroupTable> table;
  std::vector<SubRing> sub;

  explicit Lattice(const GroupPtr& g)
      : group(g), table(std::make_shared<const SubgroupTable>(subgroup_table(g))) {
    for (const auto& s : table->all_subgroups) sub.push_back(sub_ring(s));
  }
  std::size_t size() const { return sub.size(); }
  Embedding inclusion(std::size_t k, std::size_t h) const {
    return nest(sub[h].embedding, sub[k].embedding);
  }
  /// Pairs (K, H) with K <= H.
  std::vector<std::pair<std::size_t, std::size_t>> inclusions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t h = 0; h < size(); ++h)
      for (std::size_t k = 0; k < size(); ++k)
        if (table->all_subgroups[k].is_subset_of(table->all_subgroups[h])) out.emplace_back(k, h);
    return out;
  }
  std::size_t conj_index(std::size_t g, std::size_t s) const {
    return table->index_of(conjugate(table->all_subgroups[s], g));
  }
  /// c_g: A_S -> A_{gSg^-1}, [S/J] -> [gSg^-1 / gJg^-1].
  BurnsideElement conj_element(const BurnsideElement& x, std::size_t g, std::size_t s) const {
    const SubRing& from = sub[s];
    const SubRing& to = sub[conj_index(g, s)];
    std::vector<Integer> c(to.ring->rank());
    for (std::size_t j = 0; j < from.ring->rank(); ++j) {
      if (x.coeff(j) == 0) continue;
      auto in_g = from.embedding.push_forward(from.ring->subgroups().rep(j));
      c[to.ring->class_of(to.embedding.pull_back(conjugate(in_g, g)))] += x.coeff(j);
    }
    return BurnsideElement(to.ring, std::move(c));
  }
};

inline IntMatrix column_matrix(std::size_t rows, const std::vector<std::vector<Integer>>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

inline std::vector<Integer> f2_column(const F2Vector& v) {
  return std::vector<Integer>(v.begin(), v.end());
}

template <class LevelFn, class ResFn, class TrFn, class ConjFn>
MackeyFunctor assemble(const Lattice& lat, std::string name, Integer modulus, LevelFn level_fn,
                       ResFn res_fn, TrFn tr_fn, ConjFn conj_fn) {
  MackeyFunctor m;
  m.name = std::move(name);
  m.group = lat.group;
  m.table = lat.table;
  m.modulus = modulus;
  for (std::size_t s = 0; s < lat.size(); ++s) {
    auto [pres, labels] = level_fn(s);
    m.level.push_back(pres);
    m.basis_labels.push_back(labels);
  }
  for (auto [k, h] : lat.inclusions()) {
    m.res[{k, h}] = reduce_mod(res_fn(k, h), modulus);
    m.tr[{k, h}] = reduce_mod(tr_fn(k, h), modulus);
  }
  m.conj.resize(lat.group->order());
  for (std::size_t g = 0; g < lat.group->order(); ++g)
    for (std::size_t s = 0; s < lat.size(); ++s)
      m.conj[g].push_back(reduce_mod(conj_fn(g, s), modulus));
  return m;
}

}  // namespace detail

/// A_H at every level; res, tr, conj from the Burnside ring operations.
inline MackeyFunctor burnside_mackey(const GroupPtr& g) {
  detail::Lattice lat(g);
  auto level = [&](std::size_t s) {
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < lat.sub[s].ring->rank(); ++c) labels.push_back("[S/H" + std::to_string(c) + "]");
    return std::make_pair(AbelianGroupPresentation::free(lat.sub[s].ring->rank()), labels);
  };
  auto res = [&](std::size_t k, std::size_t h) {
    const auto& hr = lat.sub[h].ring;
    const auto& kr = lat.sub[k].ring;
    auto inc = lat.inclusion(k, h);
    std::vector<std::vector<Integer>> cols;
    for (std::size_t j = 0; j < hr->rank(); ++j)
      cols.push_back(restrict(BurnsideElement::basis(hr, j), kr, inc).coeffs());
    return detail::column_matrix(kr->rank(), cols);
  };
  auto tr = [&](std::size_t k, std::size_t h) {
    const auto& hr = lat.sub[h].ring;
    const auto& kr = lat.sub[k].ring;
    auto inc = lat.inclusion(k, h);
    std::vector<std::vector<Integer>> cols;
    for (std::size_t j = 0; j < kr->rank(); ++j)
      cols.push_back(transfer(BurnsideElement::basis(kr, j), hr, inc).coeffs());
    return detail::column_matrix(hr->rank(), cols);
  };
  auto conj = [&](std::size_t x, std::size_t s) {
    const auto& sr = lat.sub[s].ring;
    const auto& tr_ring = lat.sub[lat.conj_index(x, s)].ring;
    std::vector<std::vector<Integer>> cols;
    for (std::size_t j = 0; j < sr->rank(); ++j)
      cols.push_back(lat.conj_element(BurnsideElement::basis(sr, j), x, s).coeffs());
    return detail::column_matrix(tr_ring->rank(), cols);
  };
  return detail::assemble(lat, "burnside", 0, level, res, tr, conj);
}

namespace detail {
inline MackeyFunctor constant_functor(const GroupPtr& g, Integer modulus, std::string name) {
  Lattice lat(g);
  auto pres = modulus == 0 ? AbelianGroupPresentation::free(1)
                           : AbelianGroupPresentation(0, {modulus});
  auto level = [&](std::size_t) { return std::make_pair(pres, std::vector<std::string>{"1"}); };
  auto res = [](std::size_t, std::size_t) { return IntMatrix::identity(1); };
  auto tr = [&](std::size_t k, std::size_t h) {
    return IntMatrix(1, 1, Integer(lat.table->all_subgroups[k].index_in(lat.table->all_subgroups[h])));
  };
  auto conj = [](std::size_t, std::size_t) { return IntMatrix::identity(1); };
  return assemble(lat, std::move(name), modulus, level, res, tr, conj);
}
}  // namespace detail

/// Constant Z: res = id, tr = multiplication by the index, conj = id.
inline MackeyFunctor constant_Z(const GroupPtr& g) { return detail::constant_functor(g, 0, "constant_Z"); }
/// Constant Z/2: the same maps reduced mod 2.
inline MackeyFunctor constant_F2(const GroupPtr& g) { return detail::constant_functor(g, 2, "constant_F2"); }

namespace detail {

inline std::vector<std::string> unit_labels(const UnitGroup& u) {
  std::vector<std::string> out{"-1"};
  for (std::size_t i = 0; i < u.index_two_classes.size(); ++i)
    out.push_back("[S/H" + std::to_string(u.index_two_classes[i]) + "]-1");
  for (std::size_t i = u.index_two_rank(); i < u.basis.size(); ++i) out.push_back(to_string(u.basis[i]));
  return out;
}

struct UnitLevels {
  Lattice lat;
  std::vector<UnitGroup> units;
  explicit UnitLevels(const GroupPtr& g) : lat(g) {
    for (const auto& s : lat.sub) units.push_back(eqorient::units(s.ring));
  }
  IntMatrix res(std::size_t k, std::size_t h) const {
    auto inc = lat.inclusion(k, h);
    std::vector<std::vector<Integer>> cols;
    for (const auto& b : units[h].basis)
      cols.push_back(f2_column(units[k].coordinates(unit_res(b, lat.sub[k].ring, inc))));
    return column_matrix(units[k].dimension(), cols);
  }
  IntMatrix tr(std::size_t k, std::size_t h) const {
    auto inc = lat.inclusion(k, h);
    std::vector<std::vector<Integer>> cols;
    for (const auto& b : units[k].basis)
      cols.push_back(f2_column(units[h].coordinates(unit_norm(b, lat.sub[h].ring, inc))));
    return column_matrix(units[h].dimension(), cols);
  }
  IntMatrix conj(std::size_t x, std::size_t s) const {
    const std::size_t t = lat.conj_index(x, s);
    std::vector<std::vector<Integer>> cols;
    for (const auto& b : units[s].basis)
      cols.push_back(f2_column(units[t].coordinates(lat.conj_element(b, x, s))));
    return column_matrix(units[t].dimension(), cols);
  }
};

/// Coordinates of v in the span of `basis` over F2; throws when outside.
inline std::vector<Integer> kernel_coordinates(const std::vector<F2Vector>& basis, const F2Vector& v) {
  F2Vector sol;
  if (!f2_solve(basis, v, sol)) throw FormulaMismatch("augmentation kernel is not preserved");
  return f2_column(sol);
}

inline F2Vector apply_f2(const IntMatrix& m, const F2Vector& v) {
  F2Vector out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j]) s += m(i, j);
    out[i] = static_cast<std::uint8_t>(static_cast<int>(s % 2));
  }
  return out;
}

}  // namespace detail

/// A^x: unit groups as F2-spaces, res = unit restriction, tr = norm.
inline MackeyFunctor units_mackey(const GroupPtr& g) {
  detail::UnitLevels u(g);
  auto level = [&](std::size_t s) {
    return std::make_pair(AbelianGroupPresentation::f2_space(u.units[s].dimension()),
                          detail::unit_labels(u.units[s]));
  };
  return detail::assemble(
      u.lat, "units", 2, level, [&](std::size_t k, std::size_t h) { return u.res(k, h); },
      [&](std::size_t k, std::size_t h) { return u.tr(k, h); },
      [&](std::size_t x, std::size_t s) { return u.conj(x, s); });
}

/// A^∘ = ker(augmentation): the levelwise kernel of ι^x with induced maps.
/// Throws FormulaMismatch if a structure map leaves the kernel.
inline MackeyFunctor ghost_kernel_mackey(const GroupPtr& g) {
  detail::UnitLevels u(g);
  std::vector<std::vector<F2Vector>> kernel;
  for (const auto& ug : u.units) kernel.push_back(f2_kernel_basis(augmentation_functional(ug)));

  auto induced = [&](const IntMatrix& unit_map, std::size_t from, std::size_t to) {
    std::vector<std::vector<Integer>> cols;
    for (const auto& v : kernel[from])
      cols.push_back(detail::kernel_coordinates(kernel[to], detail::apply_f2(unit_map, v)));
    return detail::column_matrix(kernel[to].size(), cols);
  };
  auto level = [&](std::size_t s) {
    std::vector<std::string> labels;
    for (const auto& v : kernel[s]) labels.push_back(to_string(u.units[s].element(v)));
    return std::make_pair(AbelianGroupPresentation::f2_space(kernel[s].size()), labels);
  };
  return detail::assemble(
      u.lat, "ghost_kernel", 2, level,
      [&](std::size_t k, std::size_t h) { return induced(u.res(k, h), h, k); },
      [&](std::size_t k, std::size_t h) { return induced(u.tr(k, h), k, h); },
      [&](std::size_t x, std::size_t s) { return induced(u.conj(x, s), s, u.lat.conj_index(x, s)); });
}

// ---------------------------------------------------------------------------
// Axiom verification

namespace detail {

/// Representatives of K\H/L for K, L <= H, each the minimal element of its
/// double coset.
inline std::vector<std::size_t> double_coset_reps(const FiniteGroup& g, const Subgroup& h,
                                                  const Subgroup& k, const Subgroup& l) {
  std::vector<bool> seen(g.order(), false);
  std::vector<std::size_t> reps;
  for (auto x : h.members()) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (auto a : k.members())
      for (auto b : l.members()) seen[g.mul(g.mul(a, x), b)] = true;
  }
  return reps;
}

}  // namespace detail

/// Every violated identity, one line each. Empty iff `m` is a Mackey functor.
inline std::vector<std::string> verify_mackey_axiom(const MackeyFunctor& m) {
  std::vector<std::string> report;
  const auto& t = *m.table;
  const auto& g = *m.group;
  const std::size_t n = t.all_subgroups.size();
  auto sg = [&](std::size_t s) -> const Subgroup& { return t.all_subgroups[s]; };
  auto le = [&](std::size_t a, std::size_t b) { return sg(a).is_subset_of(sg(b)); };
  auto eq = [&](const IntMatrix& a, const IntMatrix& b) { return m.reduce(a) == m.reduce(b); };
  auto name = [](std::size_t s) { return "S" + std::to_string(s); };

  // shapes
  for (const auto& [key, mat] : m.res)
    if (mat.rows() != m.dim(key.first) || mat.cols() != m.dim(key.second))
      report.push_back("shape: res " + name(key.first) + " <= " + name(key.second));
  for (const auto& [key, mat] : m.tr)
    if (mat.rows() != m.dim(key.second) || mat.cols() != m.dim(key.first))
      report.push_back("shape: tr " + name(key.first) + " <= " + name(key.second));
  if (!report.empty()) return report;

  for (std::size_t h = 0; h < n; ++h) {
    const IntMatrix id = IntMatrix::identity(m.dim(h));
    if (!eq(m.res_map(h, h), id)) report.push_back("identity: res " + name(h));
    if (!eq(m.tr_map(h, h), id)) report.push_back("identity: tr " + name(h));
    for (auto x : sg(h).members())
      if (!eq(m.conj_map(x, h), id))
        report.push_back("inner conjugation: g=" + std::to_string(x) + " on " + name(h));
  }

  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) {
      if (!le(l, k)) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (!le(k, h)) continue;
        const std::string triple = " (" + name(l) + ", " + name(k) + ", " + name(h) + ")";
        if (!eq(m.res_map(l, k) * m.res_map(k, h), m.res_map(l, h)))
          report.push_back("transitivity: res" + triple);
        if (!eq(m.tr_map(k, h) * m.tr_map(l, k), m.tr_map(l, h)))
          report.push_back("transitivity: tr" + triple);
      }
    }

  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t ys = m.conj_index(y, s);
        if (!eq(m.conj_map(x, ys) * m.conj_map(y, s), m.conj_map(g.mul(x, y), s)))
          report.push_back("conjugation composition: g=" + std::to_string(x) +
                           " g'=" + std::to_string(y) + " on " + name(s));
      }

  for (std::size_t x = 0; x < g.order(); ++x)
    for (const auto& [key, mat] : m.res) {
      auto [k, h] = key;
      const std::size_t xk = m.conj_index(x, k), xh = m.conj_index(x, h);
      if (!eq(m.conj_map(x, k) * mat, m.res_map(xk, xh) * m.conj_map(x, h)))
        report.push_back("equivariance: res g=" + std::to_string(x) + " (" + name(k) + ", " + name(h) + ")");
      if (!eq(m.conj_map(x, h) * m.tr_map(k, h), m.tr_map(xk, xh) * m.conj_map(x, k)))
        report.push_back("equivariance: tr g=" + std::to_string(x) + " (" + name(k) + ", " + name(h) + ")");
    }

  // res_K^H tr_L^H = Σ_{KxL} tr_{K∩xLx^-1}^K c_x res_{x^-1Kx∩L}^L
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) {
      if (!le(k, h)) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!le(l, h)) continue;
        IntMatrix rhs(m.dim(k), m.dim(l));
        for (auto x : detail::double_coset_reps(g, sg(h), sg(k), sg(l))) {
          const std::size_t top = t.index_of(intersect(sg(k), conjugate(sg(l), x)));
          const std::size_t bottom = t.index_of(intersect(conjugate(sg(k), g.inv(x)), sg(l)));
          rhs += m.tr_map(top, k) * m.conj_map(x, bottom) * m.res_map(bottom, l);
        }
        if (!eq(m.res_map(k, h) * m.tr_map(l, h), rhs))
          report.push_back("double coset: H=" + name(h) + " K=" + name(k) + " L=" + name(l));
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Closed-form unit maps for elementary abelian 2-groups

struct TnEntry {
  std::size_t h = 0;  // subgroup indices in G, K of index 2 in H
  std::size_t k = 0;
  IntMatrix res;  // computed, in the a/b bases
  IntMatrix tr;
};

struct TnTable {
  std::size_t n = 0;
  MackeyFunctor units;
  /// a_S, b_S/T labels of the basis at each subgroup S.
  std::vector<std::vector<std::string>> labels;
  std::vector<TnEntry> entries;
  std::size_t top_dimension() const { return units.dim(units.subgroup_count() - 1); }
};

/// For G = C2^n, n <= 3: computes res and tr on A^x along every index-two
/// pair K < H and checks them against
///   res: a_H -> a_K, b_{H/K'} -> b_{K/(K∩K')} (K' != K), b_{H/K} -> 0;
///   tr:  a_K -> b_{H/K}, b_{K/L'} -> b_{H/K} + b_{H/K1} + b_{H/K2},
/// K1, K2 the other index-two subgroups of H with K ∩ Ki = L'.
inline TnTable tn_formulas(std::size_t n) {
  if (n > 3) throw InvalidArgument("tn_formulas supports n <= 3");
  auto g = elementary_abelian_2group(n);
  TnTable out;
  out.n = n;
  detail::UnitLevels u(g);
  out.units = units_mackey(g);
  const auto& t = *out.units.table;
  const std::size_t count = t.all_subgroups.size();
  auto sg = [&](std::size_t s) -> const Subgroup& { return t.all_subgroups[s]; };

  // position of b_{S/T} in the basis at level S, keyed by T's index in G
  std::vector<std::map<std::size_t, std::size_t>> b_pos(count);
  out.labels.resize(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto& ug = u.units[s];
    out.labels[s].assign(ug.dimension(), "a_S" + std::to_string(s));
    if (ug.dimension() != ug.index_two_rank()) throw MatsudaMismatch("abelian unit basis is not a/b");
    for (std::size_t i = 0; i < ug.index_two_classes.size(); ++i) {
      const auto& sub = u.lat.sub[s];
      auto in_g = sub.embedding.push_forward(sub.ring->subgroups().rep(ug.index_two_classes[i]));
      b_pos[s][t.index_of(in_g)] = i + 1;
      out.labels[s][i + 1] = "b_S" + std::to_string(s) + "/S" + std::to_string(t.index_of(in_g));
    }
  }

  for (std::size_t h = 0; h < count; ++h)
    for (std::size_t k = 0; k < count; ++k) {
      if (!sg(k).is_subset_of(sg(h)) || sg(h).order() != 2 * sg(k).order()) continue;
      TnEntry e{h, k, out.units.res_map(k, h), out.units.tr_map(k, h)};

      IntMatrix res_expected(out.units.dim(k), out.units.dim(h));
      res_expected(0, 0) = 1;
      for (auto [kp, pos] : b_pos[h])
        if (kp != k) res_expected(b_pos[k].at(t.index_of(intersect(sg(k), sg(kp)))), pos) = 1;

      IntMatrix tr_expected(out.units.dim(h), out.units.dim(k));
      const std::size_t b_hk = b_pos[h].at(k);
      tr_expected(b_hk, 0) = 1;
      for (auto [lp, pos] : b_pos[k]) {
        tr_expected(b_hk, pos) += 1;
        std::size_t found = 0;
        for (auto [ki, ipos] : b_pos[h])
          if (ki != k && t.index_of(intersect(sg(k), sg(ki))) == lp) {
            tr_expected(ipos, pos) += 1;
            ++found;
          }
        if (found != 2) throw FormulaMismatch("expected two further index-two subgroups over L'");
      }
      if (!(reduce_mod(res_expected, 2) == e.res))
        throw FormulaMismatch("restriction disagrees with the closed form at S" + std::to_string(k) +
                              " <= S" + std::to_string(h));
      if (!(reduce_mod(tr_expected, 2) == e.tr))
        throw FormulaMismatch("transfer disagrees with the closed form at S" + std::to_string(k) +
                              " <= S" + std::to_string(h));
      out.entries.push_back(std::move(e));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace detail {
inline std::string render_image(const IntMatrix& m, std::size_t col,
                                const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m(r, col) == 0) continue;
    if (!s.empty()) s += " + ";
    if (m(r, col) != 1) {
      std::ostringstream os;
      os << m(r, col) << "*";
      s += os.str();
    }
    s += labels[r];
  }
  return s.empty() ? "0" : s;
}
}  // namespace detail

/// Levels, then res and tr between class representatives, then the Weyl
/// action at each class.
inline std::string render_text(const MackeyFunctor& m) {
  const auto& t = *m.table;
  std::ostringstream os;
  os << "Mackey functor " << m.name << " on " << m.group->name() << " (order " << m.group->order()
     << ")\n";
  for (std::size_t c = 0; c < t.class_count(); ++c) {
    const std::size_t s = t.class_reps[c];
    os << "level H" << c << " (order " << t.rep(c).order() << "): " << to_string(m.level[s]);
    if (!m.basis_labels[s].empty()) {
      os << "  basis:";
      for (const auto& l : m.basis_labels[s]) os << " " << l << ";";
    }
    os << "\n";
  }
  for (std::size_t h = 0; h < t.class_count(); ++h)
    for (std::size_t k = 0; k < t.class_count(); ++k) {
      if (k == h || !t.subconjugacy[k][h]) continue;
      os << "res H" << h << " -> H" << k << ": " << m.class_res(k, h) << "\n";
      os << "tr  H" << k << " -> H" << h << ": " << m.class_tr(k, h) << "\n";
    }
  for (std::size_t c = 0; c < t.class_count(); ++c) {
    const std::size_t s = t.class_reps[c];
    const Subgroup& rep = t.rep(c);
    std::vector<bool> covered(m.group->order(), false);
    const Subgroup nrm = normalizer(rep);
    for (auto x : nrm.members()) {
      if (covered[x]) continue;
      for (auto y : rep.members()) covered[m.group->mul(x, y)] = true;
      if (rep.contains(x)) continue;
      os << "conj g" << x << " on H" << c << ": " << m.conj_map(x, s) << "\n";
    }
  }
  return os.str();
}

/// One line per entry: images of the a/b basis under res and tr.
inline std::string render_text(const TnTable& tn) {
  std::ostringstream os;
  os << "C2^" << tn.n << ": unit group at the top level has dimension " << tn.top_dimension() << "\n";
  for (const auto& e : tn.entries) {
    const auto& hl = tn.labels[e.h];
    const auto& kl = tn.labels[e.k];
    os << "res S" << e.h << " -> S" << e.k << ":";
    for (std::size_t j = 0; j < hl.size(); ++j) os << " " << hl[j] << " -> " << detail::render_image(e.res, j, kl) << ";";
    os << "\ntr  S" << e.k << " -> S" << e.h << ":";
    for (std::size_t j = 0; j < kl.size(); ++j) os << " " << kl[j] << " -> " << detail::render_image(e.tr, j, hl) << ";";
    os << "\n";
  }
  return os.str();
}

}  // namespace eqorient
