#pragma once

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "mackey.hpp"
#include "matrix.hpp"

namespace eqorient {

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix v;  // unimodular, cols x cols
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

/// U·A·V = D by elementary integer row and column operations.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& d = s.d;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(s.u(i, c), s.u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(s.v(r, i), s.v(r, j));
  };
  // row_i += q·row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) d(i, c) += q * d(j, c);
    for (std::size_t c = 0; c < m; ++c) s.u(i, c) += q * s.u(j, c);
  };
  // col_i += q·col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r) d(r, i) += q * d(r, j);
    for (std::size_t r = 0; r < n; ++r) s.v(r, i) += q * s.v(r, j);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return s;  // remaining block is zero
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        add_row(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        add_col(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) s.u(t, c) = -s.u(t, c);
    }
    ++s.rank;
  }
  return s;
}

/// Rank over F2.
inline std::size_t rank_mod2(const IntMatrix& a) {
  std::vector<std::vector<std::uint8_t>> rows(a.rows(), std::vector<std::uint8_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = static_cast<std::uint8_t>(a(i, j) % 2 != 0);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && !rows[p][c]) ++p;
    if (p == a.rows()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = c; j < a.cols(); ++j) rows[r][j] ^= rows[rank][j];
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// G-CW complexes

inline constexpr std::size_t kMaxComplexDimension = 4;

/// One term of an attaching map: coeff times the G-map G/H_from -> G/H_to,
/// xH_from -> x·g·H_to, valid when g^-1 H_from g <= H_to.
struct MorphismTerm {
  Integer coeff;
  std::size_t conjugator;
};

struct BoundaryEntry {
  std::size_t from;  // index among the n-cells
  std::size_t to;    // index among the (n-1)-cells
  std::vector<MorphismTerm> terms;
};

struct OrbitCell {
  std::size_t isotropy_class;  // orbit type G/H, H the class representative
};

struct GCWComplex {
  GroupPtr group;
  std::shared_ptr<const SubgroupTable> table;
  std::string name;
  std::vector<std::vector<OrbitCell>> cells;        // cells[n]
  std::vector<std::vector<BoundaryEntry>> boundary;  // boundary[n], n >= 1

  std::size_t dimension() const { return cells.empty() ? 0 : cells.size() - 1; }
  const Subgroup& isotropy(std::size_t n, std::size_t i) const {
    return table->rep(cells[n][i].isotropy_class);
  }
  bool is_free() const {
    for (const auto& layer : cells)
      for (const auto& c : layer)
        if (table->rep(c.isotropy_class).order() != 1) return false;
    return true;
  }
};

/// Same permutation group: equal canonical element lists.
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && a->elements() == b->elements());
}

struct CohomologyResult {
  std::vector<AbelianGroupPresentation> groups;  // H^0 .. H^d
  std::vector<std::size_t> cochain_ranks;        // number of coordinates of C^n
};

namespace detail {

/// M applied to the G-map given by `conj`: M(H_to) -> M(H_from).
inline IntMatrix evaluate_term(const MackeyFunctor& m, const Subgroup& h_from, const Subgroup& h_to,
                               std::size_t conj) {
  const auto& t = *m.table;
  const auto& g = *m.group;
  const std::size_t pulled = t.index_of(conjugate(h_from, g.inv(conj)));  // g^-1 H_from g
  // c_g: M(g^-1 H_from g) -> M(H_from)
  return m.conj_map(conj, pulled) * m.res_map(pulled, t.index_of(h_to));
}

}  // namespace detail

/// C^n = ⊕_{n-cells} M(G/H_cell); δ^{n-1}: C^{n-1} -> C^n as a block matrix.
inline std::vector<IntMatrix> cochain_complex(const GCWComplex& x, const MackeyFunctor& m) {
  if (!same_group(x.group, m.group)) throw CoefficientMismatch("complex and coefficients live on different groups");
  const std::size_t top = x.dimension();
  std::vector<std::vector<std::size_t>> offset(top + 1);
  std::vector<std::size_t> total(top + 1, 0);
  for (std::size_t n = 0; n <= top && n < x.cells.size(); ++n)
    for (std::size_t i = 0; i < x.cells[n].size(); ++i) {
      offset[n].push_back(total[n]);
      total[n] += m.dim(x.table->index_of(x.isotropy(n, i)));
    }
  std::vector<IntMatrix> deltas;  // deltas[n-1]: C^{n-1} -> C^n
  for (std::size_t n = 1; n <= top; ++n) {
    IntMatrix d(total[n], total[n - 1]);
    for (const auto& e : x.boundary[n]) {
      const Subgroup& hf = x.isotropy(n, e.from);
      const Subgroup& ht = x.isotropy(n - 1, e.to);
      for (const auto& term : e.terms) {
        IntMatrix block = detail::evaluate_term(m, hf, ht, term.conjugator);
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t c = 0; c < block.cols(); ++c)
            d(offset[n][e.from] + r, offset[n - 1][e.to] + c) += term.coeff * block(r, c);
      }
    }
    deltas.push_back(m.reduce(std::move(d)));
  }
  return deltas;
}

/// H^n = ker δ^n / im δ^{n-1}: Smith normal form over Z, ranks over F2.
inline CohomologyResult bredon_cohomology(const GCWComplex& x, const MackeyFunctor& m) {
  if (!same_group(x.group, m.group)) throw CoefficientMismatch("complex and coefficients live on different groups");
  for (const auto& l : m.level) {
    if (m.modulus == 0 && !l.torsion.empty())
      throw CoefficientMismatch("integral coefficients must be free at every level");
    if (m.modulus == 2 && l.free_rank != 0)
      throw CoefficientMismatch("F2 coefficients must be F2-spaces at every level");
    if (m.modulus != 0 && m.modulus != 2) throw CoefficientMismatch("unsupported coefficient modulus");
  }
  auto deltas = cochain_complex(x, m);
  const std::size_t top = x.dimension();
  CohomologyResult r;
  for (std::size_t n = 0; n <= top; ++n) {
    std::size_t rank_n = 0;
    for (std::size_t i = 0; i < x.cells[n].size(); ++i) rank_n += m.dim(x.table->index_of(x.isotropy(n, i)));
    r.cochain_ranks.push_back(rank_n);
  }
  for (std::size_t n = 0; n <= top; ++n) {
    const IntMatrix* out = n < deltas.size() ? &deltas[n] : nullptr;       // δ^n
    const IntMatrix* in = n > 0 ? &deltas[n - 1] : nullptr;                 // δ^{n-1}
    if (m.modulus == 2) {
      std::size_t dim = r.cochain_ranks[n];
      if (out) dim -= rank_mod2(*out);
      if (in) dim -= rank_mod2(*in);
      r.groups.push_back(AbelianGroupPresentation::f2_space(dim));
      continue;
    }
    std::size_t free = r.cochain_ranks[n];
    std::vector<Integer> torsion;
    if (out) free -= smith_normal_form(*out).rank;
    if (in) {
      auto s = smith_normal_form(*in);
      free -= s.rank;
      for (const auto& dv : s.diagonal())
        if (dv > 1) torsion.push_back(dv);
    }
    r.groups.emplace_back(free, std::move(torsion));
  }
  return r;
}

/// Checks subconjugation of every term, the dimension cap, and ∂∂ = 0
/// under the Burnside and constant-Z coefficient systems.
inline void validate_complex(const GCWComplex& x) {
  if (x.cells.empty()) throw InvalidComplex("complex has no cells");
  if (x.dimension() > kMaxComplexDimension) throw InvalidComplex("dimension exceeds 4");
  if (x.boundary.size() != x.cells.size()) throw InvalidComplex("one boundary list per dimension required");
  if (!x.boundary[0].empty()) throw InvalidComplex("0-cells have no boundary");
  const auto& g = *x.group;
  for (std::size_t n = 0; n < x.cells.size(); ++n)
    for (const auto& c : x.cells[n])
      if (c.isotropy_class >= x.table->class_count()) throw InvalidComplex("unknown isotropy class");
  for (std::size_t n = 1; n < x.cells.size(); ++n)
    for (const auto& e : x.boundary[n]) {
      if (e.from >= x.cells[n].size() || e.to >= x.cells[n - 1].size())
        throw InvalidComplex("boundary refers to a missing cell");
      for (const auto& t : e.terms) {
        if (t.conjugator >= g.order()) throw InvalidComplex("conjugator is not a group element");
        if (!conjugate(x.isotropy(n, e.from), g.inv(t.conjugator)).is_subset_of(x.isotropy(n - 1, e.to))) {
          std::ostringstream os;
          os << "term with conjugator " << t.conjugator << " is not a G-map between the cell orbits (dimension "
             << n << ", cells " << e.from << " -> " << e.to << ")";
          throw InvalidComplex(os.str());
        }
      }
    }
  for (const auto& m : {burnside_mackey(x.group), constant_Z(x.group)}) {
    auto deltas = cochain_complex(x, m);
    for (std::size_t n = 1; n < deltas.size(); ++n)
      if (!(deltas[n] * deltas[n - 1]).is_zero())
        throw InvalidComplex("boundary does not square to zero (" + m.name + " coefficients)");
  }
}

// ---------------------------------------------------------------------------
// Built-in complexes

namespace detail {
inline GCWComplex empty_complex(const GroupPtr& g, std::string name, std::size_t dim) {
  GCWComplex x;
  x.group = g;
  x.table = std::make_shared<const SubgroupTable>(subgroup_table(g));
  x.name = std::move(name);
  x.cells.resize(dim + 1);
  x.boundary.resize(dim + 1);
  return x;
}
inline std::size_t top_class(const GCWComplex& x) { return x.table->class_count() - 1; }
inline void require_c2(const GroupPtr& g) {
  if (g->order() != 2) throw InvalidArgument("this complex is defined over C2 only");
}
}  // namespace detail

/// One fixed 0-cell G/G.
inline GCWComplex point(const GroupPtr& g) {
  auto x = detail::empty_complex(g, "point", 0);
  x.cells[0].push_back({detail::top_class(x)});
  validate_complex(x);
  return x;
}

/// S^1 with trivial action: a G/G 0-cell and a G/G 1-cell attached by
/// degree zero (both ends at the same vertex).
inline GCWComplex circle_trivial(const GroupPtr& g) {
  auto x = detail::empty_complex(g, "circle_trivial", 1);
  x.cells[0].push_back({detail::top_class(x)});
  x.cells[1].push_back({detail::top_class(x)});
  x.boundary[1].push_back({0, 0, {{1, 0}, {-1, 0}}});
  validate_complex(x);
  return x;
}

/// A single free orbit G/e in degree zero.
inline GCWComplex free_orbit(const GroupPtr& g) {
  auto x = detail::empty_complex(g, "free_orbit", 0);
  x.cells[0].push_back({0});
  validate_complex(x);
  return x;
}

/// S^σ over C2: two fixed 0-cells (the poles) joined by a free 1-cell.
inline GCWComplex sigma_sphere(const GroupPtr& g = named_group("C2")) {
  detail::require_c2(g);
  auto x = detail::empty_complex(g, "sigma_sphere", 1);
  x.cells[0] = {{1}, {1}};
  x.cells[1] = {{0}};
  x.boundary[1].push_back({0, 0, {{1, 0}}});
  x.boundary[1].push_back({0, 1, {{-1, 0}}});
  validate_complex(x);
  return x;
}

/// S(2σ) over C2, the free circle: a free 0-cell and a free 1-cell with
/// boundary e·v - t·v, t the generator.
inline GCWComplex s2sigma_circle(const GroupPtr& g = named_group("C2")) {
  detail::require_c2(g);
  auto x = detail::empty_complex(g, "s2sigma_circle", 1);
  x.cells[0] = {{0}};
  x.cells[1] = {{0}};
  x.boundary[1].push_back({0, 0, {{1, 0}, {-1, 1}}});
  validate_complex(x);
  return x;
}

}  // namespace eqorient
