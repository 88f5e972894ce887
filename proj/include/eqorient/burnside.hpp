#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "matrix.hpp"

namespace eqorient {

/// Vector over F2, one byte per coordinate.
using F2Vector = std::vector<std::uint8_t>;

/// The Burnside ring A_G of a fixed group: its subgroup classes and the
/// table of marks marks(H, K) = |(G/H)^K|, rows and columns in canonical
/// class order (so the table is lower triangular).
class BurnsideRing {
 public:
  static std::shared_ptr<const BurnsideRing> create(const GroupPtr& g) {
    std::shared_ptr<BurnsideRing> r(new BurnsideRing());
    r->group_ = g;
    r->table_ = subgroup_table(g);
    const std::size_t n = r->table_.class_count();
    r->marks_ = IntMatrix(n, n);
    for (std::size_t h = 0; h < n; ++h) {
      const Subgroup& hh = r->table_.rep(h);
      for (std::size_t k = 0; k < n; ++k) {
        if (!r->table_.subconjugacy[k][h]) continue;
        const Subgroup& kk = r->table_.rep(k);
        // cosets xH fixed by K  <=>  x^-1 K x <= H
        std::size_t count = 0;
        for (std::size_t x = 0; x < g->order(); ++x)
          if (conjugate(kk, g->inv(x)).is_subset_of(hh)) ++count;
        r->marks_(h, k) = Integer(count / hh.order());
      }
    }
    return r;
  }

  const GroupPtr& group() const noexcept { return group_; }
  const SubgroupTable& subgroups() const noexcept { return table_; }
  /// marks()(h, k) = |(G/H)^K| for class representatives.
  const IntMatrix& marks() const noexcept { return marks_; }
  std::size_t rank() const noexcept { return table_.class_count(); }
  std::size_t top_class() const noexcept { return rank() - 1; }
  std::size_t class_of(const Subgroup& s) const { return table_.class_index(s); }

 private:
  BurnsideRing() = default;
  GroupPtr group_;
  SubgroupTable table_;
  IntMatrix marks_;
};

using RingPtr = std::shared_ptr<const BurnsideRing>;

/// An element of A_G in the basis [G/H], H running over subgroup classes.
class BurnsideElement {
 public:
  BurnsideElement() = default;
  BurnsideElement(RingPtr ring, std::vector<Integer> coeffs)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ring_->rank())
      throw InvalidArgument("coefficient vector has wrong length");
  }

  static BurnsideElement zero(const RingPtr& ring) {
    return BurnsideElement(ring, std::vector<Integer>(ring->rank()));
  }
  static BurnsideElement integer(const RingPtr& ring, const Integer& n) {
    auto x = zero(ring);
    x.coeffs_[ring->top_class()] = n;
    return x;
  }
  static BurnsideElement one(const RingPtr& ring) { return integer(ring, 1); }
  /// The transitive set [G/H] for class `cls`.
  static BurnsideElement basis(const RingPtr& ring, std::size_t cls) {
    auto x = zero(ring);
    x.coeffs_.at(cls) = 1;
    return x;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  const Integer& coeff(std::size_t cls) const { return coeffs_[cls]; }

  /// mark_K(x) for every class K.
  std::vector<Integer> marks() const {
    const auto& m = ring_->marks();
    std::vector<Integer> v(coeffs_.size());
    for (std::size_t k = 0; k < v.size(); ++k)
      for (std::size_t h = k; h < v.size(); ++h)
        if (coeffs_[h] != 0) v[k] += coeffs_[h] * m(h, k);
    return v;
  }

  bool is_unit() const {
    for (const auto& m : marks())
      if (m != 1 && m != -1) return false;
    return true;
  }

  BurnsideElement& operator+=(const BurnsideElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  BurnsideElement& operator-=(const BurnsideElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  BurnsideElement operator-() const {
    auto x = *this;
    for (auto& c : x.coeffs_) c = -c;
    return x;
  }
  friend BurnsideElement operator+(BurnsideElement a, const BurnsideElement& b) {
    return a += b;
  }
  friend BurnsideElement operator-(BurnsideElement a, const BurnsideElement& b) {
    return a -= b;
  }
  friend BurnsideElement operator*(const Integer& s, BurnsideElement a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend bool operator==(const BurnsideElement& a, const BurnsideElement& b) {
    return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same(const BurnsideElement& o) const {
    if (ring_ != o.ring_) throw InvalidArgument("elements of different Burnside rings");
  }

  RingPtr ring_;
  std::vector<Integer> coeffs_;
};

/// Inverts the mark map by back substitution on the triangular table.
inline BurnsideElement from_marks(const RingPtr& ring, std::span<const Integer> v) {
  const auto& m = ring->marks();
  const std::size_t n = ring->rank();
  if (v.size() != n) throw InvalidArgument("mark vector has wrong length");
  std::vector<Integer> c(n);
  for (std::size_t k = n; k-- > 0;) {
    Integer rest = v[k];
    for (std::size_t h = k + 1; h < n; ++h)
      if (c[h] != 0) rest -= c[h] * m(h, k);
    if (rest % m(k, k) != 0) {
      std::ostringstream os;
      os << "mark vector is not in the image of the mark map (class " << k << ")";
      throw NonIntegralElement(os.str());
    }
    c[k] = rest / m(k, k);
  }
  return BurnsideElement(ring, std::move(c));
}

inline BurnsideElement operator*(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.ring() != b.ring()) throw InvalidArgument("elements of different Burnside rings");
  auto ma = a.marks();
  auto mb = b.marks();
  for (std::size_t i = 0; i < ma.size(); ++i) ma[i] *= mb[i];
  return from_marks(a.ring(), ma);
}

inline BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b) {
  return a * b;
}

inline BurnsideElement power(const BurnsideElement& x, unsigned e) {
  auto r = BurnsideElement::one(x.ring());
  for (unsigned i = 0; i < e; ++i) r = r * x;
  return r;
}

/// Σ c_H·[G/H], classes in canonical order.
inline std::string to_string(const BurnsideElement& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t h = 0; h < x.coeffs().size(); ++h) {
    const Integer& c = x.coeff(h);
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Integer a = c < 0 ? Integer(-c) : c;
    os << a << "·[G/H" << h << "]";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const BurnsideElement& x) {
  return os << to_string(x);
}

// ---------------------------------------------------------------------------
// Restriction, transfer, norm along an embedding H -> G. `h_in_g.parent` is
// G's group and `h_in_g.group` is H's group.

namespace detail {
inline void check_embedding(const RingPtr& g, const RingPtr& h, const Embedding& e) {
  if (e.parent != g->group() || e.group != h->group())
    throw InvalidArgument("embedding does not match the Burnside rings");
}
}  // namespace detail

/// [G/K]|_H = Σ_{HgK} [H / (H ∩ gKg^-1)], extended linearly.
inline BurnsideElement restrict(const BurnsideElement& x, const RingPtr& h_ring,
                                const Embedding& h_in_g) {
  const RingPtr& g_ring = x.ring();
  detail::check_embedding(g_ring, h_ring, h_in_g);
  const Subgroup h = h_in_g.image();
  std::vector<Integer> c(h_ring->rank());
  for (std::size_t k = 0; k < g_ring->rank(); ++k) {
    if (x.coeff(k) == 0) continue;
    for (const auto& dc : double_cosets(h, g_ring->subgroups().rep(k)))
      c[h_ring->class_of(h_in_g.pull_back(dc.intersection))] += x.coeff(k);
  }
  return BurnsideElement(h_ring, std::move(c));
}

/// Induction [H/L] -> [G/L].
inline BurnsideElement transfer(const BurnsideElement& y, const RingPtr& g_ring,
                                const Embedding& h_in_g) {
  const RingPtr& h_ring = y.ring();
  detail::check_embedding(g_ring, h_ring, h_in_g);
  std::vector<Integer> c(g_ring->rank());
  for (std::size_t l = 0; l < h_ring->rank(); ++l) {
    if (y.coeff(l) == 0) continue;
    c[g_ring->class_of(h_in_g.push_forward(h_ring->subgroups().rep(l)))] += y.coeff(l);
  }
  return BurnsideElement(g_ring, std::move(c));
}

/// Multiplicative induction N_H^G, via
///   mark_K(N x) = Π_{HgK in H\G/K} mark_{H ∩ gKg^-1}(x).
inline BurnsideElement norm(const BurnsideElement& x, const RingPtr& g_ring,
                            const Embedding& h_in_g) {
  const RingPtr& h_ring = x.ring();
  detail::check_embedding(g_ring, h_ring, h_in_g);
  const Subgroup h = h_in_g.image();
  const auto xm = x.marks();
  std::vector<Integer> v(g_ring->rank());
  for (std::size_t k = 0; k < g_ring->rank(); ++k) {
    Integer prod = 1;
    for (const auto& dc : double_cosets(h, g_ring->subgroups().rep(k)))
      prod *= xm[h_ring->class_of(h_in_g.pull_back(dc.intersection))];
    v[k] = prod;
  }
  try {
    return from_marks(g_ring, v);
  } catch (const NonIntegralElement& e) {
    throw FormulaMismatch(std::string("norm left the mark lattice: ") + e.what());
  }
}

/// A subgroup H <= G together with its own Burnside ring.
struct SubRing {
  Embedding embedding;
  RingPtr ring;
};

inline SubRing sub_ring(const Subgroup& h) {
  SubRing s;
  s.embedding = embed(h);
  s.ring = BurnsideRing::create(s.embedding.group);
  return s;
}

inline SubRing class_sub_ring(const RingPtr& g_ring, std::size_t cls) {
  return sub_ring(g_ring->subgroups().rep(cls));
}

// ---------------------------------------------------------------------------
// Units

namespace detail {

/// Solves Σ c_i columns[i] = target over F2; nullopt-equivalent flag when
/// inconsistent.
inline bool f2_solve(const std::vector<F2Vector>& columns, const F2Vector& target,
                     F2Vector& solution) {
  const std::size_t n = columns.size();
  const std::size_t m = target.size();
  // Augmented rows: m equations in n unknowns.
  std::vector<F2Vector> rows(m, F2Vector(n + 1, 0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = columns[c][r];
    rows[r][n] = target[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && !rows[p][c]) ++p;
    if (p == m) continue;
    std::swap(rows[p], rows[row]);
    for (std::size_t r = 0; r < m; ++r)
      if (r != row && rows[r][c])
        for (std::size_t j = 0; j <= n; ++j) rows[r][j] ^= rows[row][j];
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (rows[r][n]) return false;
  solution.assign(n, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) solution[pivot_col[r]] = rows[r][n];
  return true;
}

inline F2Vector sign_bits(const BurnsideElement& u) {
  F2Vector s;
  for (const auto& m : u.marks()) {
    if (m == 1) s.push_back(0);
    else if (m == -1) s.push_back(1);
    else throw NotAUnit("element " + to_string(u) + " has a mark outside {+1,-1}");
  }
  return s;
}

}  // namespace detail

/// A_G^x, an elementary abelian 2-group. The basis starts with
/// {-1} ∪ {[G/H]-1 : H of index two}; for abelian G that is all of it. For
/// nonabelian G further units may exist and are appended in canonical order.
struct UnitGroup {
  RingPtr ring;
  std::vector<BurnsideElement> basis;
  /// Every unit, ordered by F2 coordinates.
  std::vector<BurnsideElement> all_units;
  /// Index-2 class behind basis[i+1].
  std::vector<std::size_t> index_two_classes;

  std::size_t dimension() const noexcept { return basis.size(); }
  std::size_t order() const noexcept { return all_units.size(); }
  /// m + 1: the length of the {-1} ∪ {[G/H]-1} part of the basis.
  std::size_t index_two_rank() const noexcept { return index_two_classes.size() + 1; }

  F2Vector coordinates(const BurnsideElement& u) const {
    if (u.ring() != ring) throw InvalidArgument("unit of a different Burnside ring");
    std::vector<F2Vector> cols;
    for (const auto& b : basis) cols.push_back(detail::sign_bits(b));
    F2Vector sol;
    if (!detail::f2_solve(cols, detail::sign_bits(u), sol))
      throw MatsudaMismatch("unit outside the span of the basis");
    return sol;
  }

  BurnsideElement element(const F2Vector& coords) const {
    if (coords.size() != basis.size()) throw InvalidArgument("coordinate vector has wrong length");
    auto u = BurnsideElement::one(ring);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] & 1) u = u * basis[i];
    return u;
  }
};

/// Every unit, found by searching ±1 mark vectors with an integral
/// preimage. For abelian G the count must be 2^(m+1), m = #index-2 classes.
inline UnitGroup units(const RingPtr& ring) {
  const std::size_t n = ring->rank();
  if (n > 30) throw OrderCapExceeded("too many subgroup classes for unit search");
  const auto& m = ring->marks();

  // Depth-first over classes from the top down: the coefficient at class k
  // depends only on marks at classes >= k, so non-integral branches die early.
  std::vector<BurnsideElement> found;
  std::vector<Integer> coeffs(n);
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      found.emplace_back(ring, coeffs);
      return;
    }
    const std::size_t k = n - 1 - depth;
    for (int s : {1, -1}) {
      Integer rest = s;
      for (std::size_t h = k + 1; h < n; ++h)
        if (coeffs[h] != 0) rest -= coeffs[h] * m(h, k);
      if (rest % m(k, k) != 0) continue;
      coeffs[k] = rest / m(k, k);
      self(self, depth + 1);
    }
    coeffs[k] = 0;
  };
  dfs(dfs, 0);
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.coeffs() < b.coeffs(); });

  UnitGroup u;
  u.ring = ring;
  std::vector<F2Vector> span_cols;
  auto in_span = [&](const BurnsideElement& x) {
    F2Vector sol;
    return detail::f2_solve(span_cols, detail::sign_bits(x), sol);
  };
  auto add = [&](BurnsideElement x) {
    span_cols.push_back(detail::sign_bits(x));
    u.basis.push_back(std::move(x));
  };
  add(BurnsideElement::integer(ring, -1));
  for (auto c : ring->subgroups().index_two_classes()) {
    auto x = BurnsideElement::basis(ring, c) - BurnsideElement::one(ring);
    if (in_span(x)) throw MatsudaMismatch("index-two units are linearly dependent");
    u.index_two_classes.push_back(c);
    add(std::move(x));
  }
  if (ring->group()->is_abelian() && found.size() != (std::size_t{1} << u.basis.size())) {
    std::ostringstream os;
    os << "found " << found.size() << " units, expected " << (std::size_t{1} << u.basis.size());
    throw MatsudaMismatch(os.str());
  }
  for (const auto& x : found)
    if (!in_span(x)) add(x);
  if (found.size() != (std::size_t{1} << u.basis.size()))
    throw MatsudaMismatch("unit search is not closed under multiplication");

  std::vector<std::pair<F2Vector, BurnsideElement>> keyed;
  for (auto& x : found) keyed.emplace_back(u.coordinates(x), std::move(x));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, x] : keyed) u.all_units.push_back(std::move(x));
  return u;
}

/// ι^x(u) = mark_e(u), the underlying cardinality's sign.
inline int augmentation_sign(const BurnsideElement& u) {
  if (!u.is_unit()) throw NotAUnit(to_string(u) + " is not a unit");
  return u.marks()[0] == 1 ? 1 : -1;
}

inline BurnsideElement unit_res(const BurnsideElement& u, const RingPtr& h_ring,
                                const Embedding& h_in_g) {
  if (!u.is_unit()) throw NotAUnit(to_string(u) + " is not a unit");
  return restrict(u, h_ring, h_in_g);
}

/// Transfer on units: the norm N_H^G.
inline BurnsideElement unit_norm(const BurnsideElement& u, const RingPtr& g_ring,
                                 const Embedding& h_in_g) {
  if (!u.is_unit()) throw NotAUnit(to_string(u) + " is not a unit");
  auto n = norm(u, g_ring, h_in_g);
  if (!n.is_unit()) throw FormulaMismatch("norm of a unit is not a unit");
  return n;
}

/// One level of A^∘ = ker(ι^x): units of A_H with augmentation +1.
struct GhostLevel {
  std::size_t subgroup_class;
  SubRing sub;
  UnitGroup units;
  /// Basis of the kernel in the unit coordinates of `units`.
  std::vector<F2Vector> kernel_basis;

  std::size_t dimension() const noexcept { return kernel_basis.size(); }
};

/// Augmentation as an F2-linear functional on unit coordinates.
inline F2Vector augmentation_functional(const UnitGroup& u) {
  F2Vector f;
  for (const auto& b : u.basis) f.push_back(augmentation_sign(b) == -1 ? 1 : 0);
  return f;
}

/// Canonical basis of ker(f): pivot on the first nonzero coordinate p and
/// take e_j + f_j e_p for j != p.
inline std::vector<F2Vector> f2_kernel_basis(const F2Vector& f) {
  const std::size_t n = f.size();
  std::size_t p = 0;
  while (p < n && !f[p]) ++p;
  std::vector<F2Vector> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    F2Vector v(n, 0);
    v[j] = 1;
    if (p < n && f[j]) v[p] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<GhostLevel> ghost_kernel(const RingPtr& ring) {
  std::vector<GhostLevel> out;
  for (std::size_t c = 0; c < ring->rank(); ++c) {
    GhostLevel level{c, class_sub_ring(ring, c), {}, {}};
    level.units = units(level.sub.ring);
    level.kernel_basis = f2_kernel_basis(augmentation_functional(level.units));
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace eqorient
