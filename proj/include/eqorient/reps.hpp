#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "homs.hpp"
#include "matrix.hpp"

namespace eqorient {

/// Π×G acting on the disjoint union of the two permutation domains. With
/// both factors in lexicographic order the product index is π·|G| + g.
struct ProductGroup {
  GroupPtr pi;
  GroupPtr g;
  GroupPtr product;

  std::size_t index(std::size_t p, std::size_t x) const { return p * g->order() + x; }
  std::size_t pi_part(std::size_t i) const { return i / g->order(); }
  std::size_t g_part(std::size_t i) const { return i % g->order(); }
};

inline ProductGroup product_group(const GroupPtr& pi, const GroupPtr& g) {
  const std::size_t dp = pi->degree(), dg = g->degree();
  std::vector<Perm> elements;
  elements.reserve(pi->order() * g->order());
  for (const auto& a : pi->elements())
    for (const auto& b : g->elements()) {
      std::vector<std::uint32_t> img(dp + dg);
      for (std::size_t i = 0; i < dp; ++i) img[i] = a[i];
      for (std::size_t i = 0; i < dg; ++i) img[dp + i] = static_cast<std::uint32_t>(dp + b[i]);
      elements.emplace_back(std::move(img));
    }
  auto prod = group_from_elements(dp + dg, std::move(elements), pi->name() + "x" + g->name());
  return {pi, g, prod};
}

/// A representation by exact rational matrices, one per group element.
struct RationalMatrixRep {
  GroupPtr group;
  std::size_t dim = 0;
  std::vector<RationalMatrix> matrix_of;

  const RationalMatrix& operator()(std::size_t g) const { return matrix_of[g]; }
};

/// Every V(s·x) = V(s)V(x) for generators s; together with V(e) = 1 this
/// forces V to be a homomorphism on all pairs.
inline void validate_rep(const RationalMatrixRep& v) {
  const auto& g = *v.group;
  if (v.matrix_of.size() != g.order()) throw InvalidRepresentation("one matrix per element required");
  for (const auto& m : v.matrix_of)
    if (m.rows() != v.dim || m.cols() != v.dim) throw InvalidRepresentation("matrix has wrong size");
  if (!(v.matrix_of[0] == RationalMatrix::identity(v.dim)))
    throw InvalidRepresentation("identity element must act trivially");
  for (auto s : g.generator_indices())
    for (std::size_t x = 0; x < g.order(); ++x)
      if (!(v.matrix_of[s] * v.matrix_of[x] == v.matrix_of[g.mul(s, x)]))
        throw InvalidRepresentation("matrices do not respect the group law");
}

/// Extends generator matrices along words. `gens[i]` is the image of the
/// group element `generators[i]`; the result is validated.
inline RationalMatrixRep rep_from_generators(const GroupPtr& g, std::size_t dim,
                                             const std::vector<std::size_t>& generators,
                                             const std::vector<RationalMatrix>& gens) {
  if (generators.size() != gens.size()) throw InvalidRepresentation("generator count mismatch");
  for (const auto& m : gens)
    if (m.rows() != dim || m.cols() != dim) throw InvalidRepresentation("generator matrix has wrong size");
  RationalMatrixRep v{g, dim, std::vector<RationalMatrix>(g->order())};
  std::vector<bool> known(g->order(), false);
  v.matrix_of[0] = RationalMatrix::identity(dim);
  known[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      auto y = g->mul(generators[i], x);
      if (known[y]) continue;
      known[y] = true;
      v.matrix_of[y] = gens[i] * v.matrix_of[x];
      queue.push_back(y);
    }
  }
  for (bool k : known)
    if (!k) throw InvalidRepresentation("generators do not generate the group");
  // The generating set may differ from the group's own; check against both.
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t x = 0; x < g->order(); ++x)
      if (!(gens[i] * v.matrix_of[x] == v.matrix_of[g->mul(generators[i], x)]))
        throw InvalidRepresentation("matrices do not respect the group law");
  validate_rep(v);
  return v;
}

inline RationalMatrixRep trivial_rep(const GroupPtr& g, std::size_t dim = 1) {
  return {g, dim, std::vector<RationalMatrix>(g->order(), RationalMatrix::identity(dim))};
}

/// Permutation action on the basis {e_x : x in G}, g·e_x = e_{gx}.
inline RationalMatrixRep regular_rep(const GroupPtr& g) {
  const std::size_t n = g->order();
  RationalMatrixRep v{g, n, {}};
  for (std::size_t a = 0; a < n; ++a) {
    RationalMatrix m(n, n);
    for (std::size_t x = 0; x < n; ++x) m(g->mul(a, x), x) = 1;
    v.matrix_of.push_back(std::move(m));
  }
  return v;
}

/// ±1 according to membership in an index-two subgroup.
inline RationalMatrixRep sign_rep_of_index2(const Subgroup& h) {
  const auto& g = h.parent();
  if (2 * h.order() != g->order()) throw NotIndexTwo("subgroup does not have index two");
  RationalMatrixRep v{g, 1, {}};
  for (std::size_t x = 0; x < g->order(); ++x) v.matrix_of.emplace_back(1, 1, Rational(h.contains(x) ? 1 : -1));
  return v;
}

inline RationalMatrixRep direct_sum(const RationalMatrixRep& a, const RationalMatrixRep& b) {
  if (a.group != b.group) throw InvalidArgument("direct sum of representations of different groups");
  RationalMatrixRep v{a.group, a.dim + b.dim, {}};
  for (std::size_t x = 0; x < a.matrix_of.size(); ++x)
    v.matrix_of.push_back(direct_sum(a.matrix_of[x], b.matrix_of[x]));
  return v;
}

inline RationalMatrixRep tensor(const RationalMatrixRep& a, const RationalMatrixRep& b) {
  if (a.group != b.group) throw InvalidArgument("tensor product of representations of different groups");
  RationalMatrixRep v{a.group, a.dim * b.dim, {}};
  for (std::size_t x = 0; x < a.matrix_of.size(); ++x)
    v.matrix_of.push_back(kronecker(a.matrix_of[x], b.matrix_of[x]));
  return v;
}

/// n copies of v; n = 0 gives the zero representation.
inline RationalMatrixRep multiple(std::size_t n, const RationalMatrixRep& v) {
  RationalMatrixRep out{v.group, 0, std::vector<RationalMatrix>(v.group->order(), RationalMatrix(0, 0))};
  for (std::size_t i = 0; i < n; ++i) out = direct_sum(out, v);
  return out;
}

/// W_Π ⊠ V_G on Π×G: (π, g) -> W(π) ⊗ V(g).
inline RationalMatrixRep external_product(const ProductGroup& pg, const RationalMatrixRep& w_pi,
                                          const RationalMatrixRep& v_g) {
  if (w_pi.group != pg.pi || v_g.group != pg.g)
    throw InvalidArgument("external product factors do not match the product group");
  RationalMatrixRep out{pg.product, w_pi.dim * v_g.dim, {}};
  for (std::size_t p = 0; p < pg.pi->order(); ++p)
    for (std::size_t x = 0; x < pg.g->order(); ++x)
      out.matrix_of.push_back(kronecker(w_pi(p), v_g(x)));
  return out;
}

/// P V P^-1 for an invertible P.
inline RationalMatrixRep conjugate_rep(const RationalMatrixRep& v, const RationalMatrix& p) {
  auto p_inv = inverse(p);
  if (p_inv.rows() != v.dim) throw InvalidArgument("conjugating matrix is singular");
  RationalMatrixRep out{v.group, v.dim, {}};
  for (const auto& m : v.matrix_of) out.matrix_of.push_back(p * m * p_inv);
  return out;
}

// ---------------------------------------------------------------------------
// Characters

/// A class function, one value per conjugacy class of elements (classes
/// ordered by minimal element).
struct Character {
  GroupPtr group;
  std::shared_ptr<const ElementClasses> classes;
  std::vector<Rational> values;

  const Rational& at(std::size_t element) const { return values[classes->class_of[element]]; }
  friend bool operator==(const Character& a, const Character& b) {
    return a.group == b.group && a.values == b.values;
  }
};

inline std::string to_string(const Character& c) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.values.size(); ++i) os << (i ? ", " : "") << c.values[i];
  os << ")";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Character& c) { return os << to_string(c); }

namespace detail {
inline Character class_function(const GroupPtr& g, const std::vector<Rational>& per_element) {
  Character c{g, std::make_shared<const ElementClasses>(element_classes(*g)), {}};
  for (const auto& cls : c.classes->classes) {
    const Rational& v = per_element[cls.front()];
    for (auto x : cls)
      if (per_element[x] != v) throw InvalidRepresentation("trace is not a class function");
    c.values.push_back(v);
  }
  return c;
}
}  // namespace detail

inline Character character(const RationalMatrixRep& v) {
  std::vector<Rational> tr;
  for (const auto& m : v.matrix_of) tr.push_back(m.trace());
  return detail::class_function(v.group, tr);
}

/// h -> trace V(θ(h), h) on H, for H given as an embedding into G.
inline Character fiber_character(const RationalMatrixRep& v, const ProductGroup& pg,
                                 const Embedding& h_in_g, const GroupHom& theta) {
  if (v.group != pg.product) throw InvalidArgument("representation is not on the product group");
  if (h_in_g.parent != pg.g || theta.source != h_in_g.group || theta.target != pg.pi)
    throw InvalidArgument("fiber data does not match the product group");
  std::vector<Rational> tr;
  for (std::size_t h = 0; h < h_in_g.group->order(); ++h)
    tr.push_back(v(pg.index(theta.image_of[h], h_in_g.to_parent[h])).trace());
  return detail::class_function(h_in_g.group, tr);
}

// ---------------------------------------------------------------------------
// Homogeneity

struct FiberDescriptor {
  std::size_t subgroup_class;
  std::size_t hom_class;
  GroupHom theta;
  Character character;
};

struct HomogeneityLevel {
  std::size_t subgroup_class;
  Embedding embedding;
  std::vector<FiberDescriptor> fibers;  // one per Π-class of θ: H -> Π
  std::optional<Character> coordinate;  // set iff every fiber character agrees
};

struct HomogeneityReport {
  bool homogeneous = true;
  std::vector<HomogeneityLevel> levels;  // by subgroup class of G
};

/// Per subgroup class H, the fiber characters over every component of
/// (B_G Π)^H; homogeneous iff each level sees a single character.
inline HomogeneityReport homogeneity_check(const RationalMatrixRep& v, const ProductGroup& pg) {
  HomogeneityReport r;
  auto table = subgroup_table(pg.g);
  for (std::size_t c = 0; c < table.class_count(); ++c) {
    HomogeneityLevel level{c, embed(table.rep(c)), {}, std::nullopt};
    auto classes = hom_classes(level.embedding.group, pg.pi);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& theta = classes[i].representative;
      level.fibers.push_back({c, i, theta, fiber_character(v, pg, level.embedding, theta)});
    }
    bool same = true;
    for (const auto& f : level.fibers)
      if (!(f.character == level.fibers.front().character)) same = false;
    if (same && !level.fibers.empty()) level.coordinate = level.fibers.front().character;
    if (!same) r.homogeneous = false;
    r.levels.push_back(std::move(level));
  }
  return r;
}

struct RegularMultiplePattern {
  bool matches = false;
  /// χ_W(π) = χ_V(π, e)/|G| per Π-class; only a necessary condition for
  /// V ≅ nρ_G ⊗ W, since χ_W is not certified to be a character.
  std::optional<Character> chi_w;
};

/// χ_V vanishes off Π×{e} and χ_V(π, e) is divisible by |G|.
inline RegularMultiplePattern is_regular_multiple_pattern(const RationalMatrixRep& v, const ProductGroup& pg) {
  if (v.group != pg.product) throw InvalidArgument("representation is not on the product group");
  RegularMultiplePattern out;
  const Integer order = pg.g->order();
  std::vector<Rational> w;
  for (std::size_t p = 0; p < pg.pi->order(); ++p) {
    for (std::size_t x = 1; x < pg.g->order(); ++x)
      if (v(pg.index(p, x)).trace() != 0) return out;
    Rational t = v(pg.index(p, 0)).trace();
    Rational q = t / Rational(order);
    if (boost::multiprecision::denominator(q) != 1) return out;
    w.push_back(q);
  }
  out.matches = true;
  out.chi_w = detail::class_function(pg.pi, w);
  return out;
}

}  // namespace eqorient
