#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eqorient/burnside.hpp"
#include "oracles.hpp"

using namespace eqorient;

namespace {

RingPtr ring_of(const std::string& name) { return BurnsideRing::create(named_group(name)); }

BurnsideElement elem(const RingPtr& r, std::vector<long> c) {
  std::vector<Integer> v(c.begin(), c.end());
  return BurnsideElement(r, v);
}

/// [G/H][G/K] = Σ_{HgK} [G/(H ∩ gKg^-1)]
BurnsideElement double_coset_product(const RingPtr& r, std::size_t h, std::size_t k) {
  std::vector<Integer> c(r->rank());
  for (const auto& dc : double_cosets(r->subgroups().rep(h), r->subgroups().rep(k)))
    c[r->class_of(dc.intersection)] += 1;
  return BurnsideElement(r, c);
}

/// |(G/H)^K| by listing the cosets xH as sets and testing k·xH = xH.
long count_fixed_cosets(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  std::set<std::set<std::size_t>> cosets;
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::set<std::size_t> c;
    for (auto m : h.members()) c.insert(g.mul(x, m));
    cosets.insert(c);
  }
  long fixed = 0;
  for (const auto& c : cosets) {
    bool ok = true;
    for (auto kk : k.members()) {
      std::set<std::size_t> moved;
      for (auto y : c) moved.insert(g.mul(kk, y));
      if (moved != c) ok = false;
    }
    fixed += ok;
  }
  return fixed;
}

/// A finite H-set given as a disjoint union of orbits H/L (classes of H).
struct HSet {
  std::vector<std::vector<std::size_t>> points;  // each point: a coset as a sorted set of H-indices
  std::vector<std::size_t> orbit;                 // orbit number of each point
};

HSet make_hset(const RingPtr& h_ring, const std::vector<std::size_t>& orbit_classes) {
  const auto& h = *h_ring->group();
  HSet x;
  for (std::size_t o = 0; o < orbit_classes.size(); ++o) {
    const auto c = orbit_classes[o];
    const auto& l = h_ring->subgroups().rep(c);
    std::set<std::vector<std::size_t>> cosets;
    for (std::size_t a = 0; a < h.order(); ++a) {
      std::vector<std::size_t> coset;
      for (auto m : l.members()) coset.push_back(h.mul(a, m));
      std::sort(coset.begin(), coset.end());
      cosets.insert(coset);
    }
    x.points.insert(x.points.end(), cosets.begin(), cosets.end());
    x.orbit.resize(x.points.size(), o);
  }
  return x;
}

std::size_t act(const FiniteGroup& h, const HSet& x, std::size_t a, std::size_t p) {
  std::vector<std::size_t> moved;
  for (auto y : x.points[p]) moved.push_back(h.mul(a, y));
  std::sort(moved.begin(), moved.end());
  for (std::size_t q = 0; q < x.points.size(); ++q)
    if (x.orbit[q] == x.orbit[p] && x.points[q] == moved) return q;
  throw std::logic_error("not an H-set");
}

/// Literal Map_H(G, X): enumerate every H-equivariant f: G -> X (one free
/// value per right coset Hr), let G act by (g·f)(y) = f(yg), count the
/// functions fixed by each K, and read off the G-set from its marks.
BurnsideElement literal_norm(const RingPtr& g_ring, const SubRing& sub,
                             const std::vector<std::size_t>& orbit_classes) {
  const auto& g = *g_ring->group();
  const auto& h = *sub.ring->group();
  const auto& emb = sub.embedding;
  HSet x = make_hset(sub.ring, orbit_classes);

  // Right coset representatives of H in G.
  std::vector<std::size_t> reps;
  std::vector<std::size_t> coset_of(g.order(), npos);
  for (std::size_t y = 0; y < g.order(); ++y) {
    if (coset_of[y] != npos) continue;
    for (auto a : emb.to_parent) coset_of[g.mul(a, y)] = reps.size();
    reps.push_back(y);
  }
  const std::size_t m = reps.size();
  // f(a r_j) = a·x_j, so f is a tuple in X^m.
  auto value = [&](const std::vector<std::size_t>& f, std::size_t y) {
    std::size_t j = coset_of[y];
    std::size_t a = g.mul(y, g.inv(reps[j]));  // y = a r_j
    return act(h, x, emb.from_parent[a], f[j]);
  };

  std::vector<Integer> marks(g_ring->rank());
  std::vector<std::size_t> f(m, 0);
  const std::size_t npts = x.points.size();
  while (true) {
    for (std::size_t k = 0; k < g_ring->rank(); ++k) {
      bool fixed = true;
      for (auto kk : g_ring->subgroups().rep(k).members()) {
        for (std::size_t j = 0; j < m && fixed; ++j)
          if (value(f, g.mul(reps[j], kk)) != f[j]) fixed = false;
        if (!fixed) break;
      }
      if (fixed) marks[k] += 1;
    }
    std::size_t pos = 0;
    while (pos < m && ++f[pos] == npts) f[pos++] = 0;
    if (pos == m || npts == 0) break;
  }
  if (npts == 0) std::fill(marks.begin(), marks.end(), Integer(0));
  return from_marks(g_ring, marks);
}

const char* kSmall[] = {"C1", "C2", "C3", "C4", "C5", "C2xC2", "S3", "C8", "D4", "Q8", "C2xC2xC2"};

}  // namespace

TEST(TableOfMarks, C2AndTrivial) {
  auto r = ring_of("C2");
  IntMatrix expected(2, 2);
  expected(0, 0) = 2;
  expected(1, 0) = 1;
  expected(1, 1) = 1;
  EXPECT_EQ(r->marks(), expected);
  auto t = ring_of("C1");
  EXPECT_EQ(t->marks()(0, 0), 1);
}

TEST(TableOfMarks, KleinFreeRow) {
  auto r = ring_of("C2xC2");
  ASSERT_EQ(r->rank(), 5u);
  EXPECT_EQ(r->marks()(0, 0), 4);
  for (std::size_t k = 1; k < 5; ++k) EXPECT_EQ(r->marks()(0, k), 0);
}

TEST(TableOfMarks, MatchesDirectCountAndInvariants) {
  for (auto name : kSmall) {
    auto r = ring_of(name);
    const auto& t = r->subgroups();
    for (std::size_t h = 0; h < r->rank(); ++h) {
      for (std::size_t k = 0; k < r->rank(); ++k) {
        EXPECT_EQ(r->marks()(h, k), count_fixed_cosets(*r->group(), t.rep(h), t.rep(k)))
            << name << " " << h << " " << k;
        EXPECT_EQ(r->marks()(h, k) != 0, bool(t.subconjugacy[k][h]));
        if (k > h) EXPECT_EQ(r->marks()(h, k), 0);
      }
      EXPECT_EQ(r->marks()(h, h), weyl_order(t.rep(h)));
      EXPECT_EQ(r->marks()(h, 0), r->group()->order() / t.rep(h).order());
    }
  }
}

TEST(Marks, FromMarksExamples) {
  auto r = ring_of("C2");
  EXPECT_EQ(BurnsideElement::one(r).marks(), (std::vector<Integer>{1, 1}));
  std::vector<Integer> free_orbit{2, 0};
  EXPECT_EQ(from_marks(r, free_orbit), BurnsideElement::basis(r, 0));
  std::vector<Integer> half{1, 0};
  EXPECT_THROW(from_marks(r, half), NonIntegralElement);
}

TEST(Marks, InjectivityOnRandomElements) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (auto name : kSmall) {
    auto r = ring_of(name);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Integer> c(r->rank());
      for (auto& x : c) x = d(rng);
      BurnsideElement x(r, c);
      auto m = x.marks();
      EXPECT_EQ(from_marks(r, m), x);
    }
  }
}

TEST(Multiply, Examples) {
  auto r = ring_of("C2");
  auto free = BurnsideElement::basis(r, 0);
  auto one = BurnsideElement::one(r);
  EXPECT_EQ(free * free, Integer(2) * free);
  EXPECT_EQ(free * one, free);
  auto b = free - one;
  EXPECT_EQ(b * b, one);
}

TEST(Multiply, AgreesWithDoubleCosetOracle) {
  for (auto name : kSmall) {
    auto r = ring_of(name);
    ASSERT_LE(r->group()->order(), 16u);
    for (std::size_t h = 0; h < r->rank(); ++h)
      for (std::size_t k = 0; k < r->rank(); ++k)
        EXPECT_EQ(BurnsideElement::basis(r, h) * BurnsideElement::basis(r, k),
                  double_coset_product(r, h, k))
            << name;
  }
}

TEST(Restrict, Examples) {
  auto c2 = ring_of("C2");
  auto e = class_sub_ring(c2, 0);
  auto r = restrict(BurnsideElement::basis(c2, 0), e.ring, e.embedding);
  EXPECT_EQ(r, BurnsideElement::integer(e.ring, 2));

  auto c4 = ring_of("C4");
  auto c2in4 = class_sub_ring(c4, 1);
  auto a = restrict(BurnsideElement::basis(c4, 1), c2in4.ring, c2in4.embedding);
  EXPECT_EQ(a, BurnsideElement::integer(c2in4.ring, 2));
  // b_2 = [C4/C2] - 1 restricts to the identity unit.
  auto b2 = BurnsideElement::basis(c4, 1) - BurnsideElement::one(c4);
  EXPECT_EQ(restrict(b2, c2in4.ring, c2in4.embedding), BurnsideElement::one(c2in4.ring));

  for (auto name : kSmall) {
    auto g = ring_of(name);
    for (std::size_t c = 0; c < g->rank(); ++c) {
      auto s = class_sub_ring(g, c);
      EXPECT_EQ(restrict(BurnsideElement::one(g), s.ring, s.embedding), BurnsideElement::one(s.ring));
    }
  }
}

TEST(Restrict, MarksArePreservedAndRingMap) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto name : kSmall) {
    auto g = ring_of(name);
    for (const auto& sub : g->subgroups().all_subgroups) {
      auto s = sub_ring(sub);
      std::vector<Integer> c1(g->rank()), c2(g->rank());
      for (auto& v : c1) v = d(rng);
      for (auto& v : c2) v = d(rng);
      BurnsideElement x(g, c1), y(g, c2);
      auto rx = restrict(x, s.ring, s.embedding);
      // mark of the restriction at L <= H equals the mark of x at L in G
      auto xm = x.marks();
      auto rm = rx.marks();
      for (std::size_t l = 0; l < s.ring->rank(); ++l) {
        auto in_g = s.embedding.push_forward(s.ring->subgroups().rep(l));
        EXPECT_EQ(rm[l], xm[g->class_of(in_g)]);
      }
      EXPECT_EQ(restrict(x * y, s.ring, s.embedding), rx * restrict(y, s.ring, s.embedding));
      EXPECT_EQ(restrict(x + y, s.ring, s.embedding), rx + restrict(y, s.ring, s.embedding));
    }
  }
}

TEST(Transfer, ExamplesAndFrobenius) {
  auto c2 = ring_of("C2");
  auto e = class_sub_ring(c2, 0);
  EXPECT_EQ(transfer(BurnsideElement::one(e.ring), c2, e.embedding), BurnsideElement::basis(c2, 0));

  auto c4 = ring_of("C4");
  auto c2in4 = class_sub_ring(c4, 1);
  EXPECT_EQ(transfer(BurnsideElement::basis(c2in4.ring, 0), c4, c2in4.embedding),
            BurnsideElement::basis(c4, 0));

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto name : {"C4", "S3", "D4", "C2xC2"}) {
    auto g = ring_of(name);
    for (const auto& sub : g->subgroups().all_subgroups) {
      auto s = sub_ring(sub);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Integer> cx(g->rank()), cy(s.ring->rank());
        for (auto& v : cx) v = d(rng);
        for (auto& v : cy) v = d(rng);
        BurnsideElement x(g, cx), y(s.ring, cy);
        EXPECT_EQ(transfer(restrict(x, s.ring, s.embedding) * y, g, s.embedding),
                  x * transfer(y, g, s.embedding));
      }
    }
  }
}

TEST(Norm, MinusOneOverC2) {
  auto c2 = ring_of("C2");
  auto e = class_sub_ring(c2, 0);
  auto n = norm(BurnsideElement::integer(e.ring, -1), c2, e.embedding);
  EXPECT_EQ(n, BurnsideElement::basis(c2, 0) - BurnsideElement::one(c2));
}

TEST(Norm, MinusOneOverKlein) {
  auto g = ring_of("C2xC2");
  auto e = class_sub_ring(g, 0);
  auto n = norm(BurnsideElement::integer(e.ring, -1), g, e.embedding);
  // -1 + [G/G01] + [G/G10] + [G/G11] - [G/e]
  EXPECT_EQ(n, elem(g, {-1, 1, 1, 1, -1}));
}

TEST(Norm, OneIsOne) {
  for (auto name : kSmall) {
    auto g = ring_of(name);
    for (const auto& sub : g->subgroups().all_subgroups) {
      auto s = sub_ring(sub);
      EXPECT_EQ(norm(BurnsideElement::one(s.ring), g, s.embedding), BurnsideElement::one(g));
    }
  }
}

TEST(Norm, CyclicExpansionOverC4) {
  // N_e^{C4}(l) = l + (l^2-l)/2 [C4/C2] + (l^4-l^2)/4 [C4/e]
  auto g = ring_of("C4");
  auto e = class_sub_ring(g, 0);
  for (long l = -2; l <= 3; ++l) {
    auto n = norm(BurnsideElement::integer(e.ring, l), g, e.embedding);
    EXPECT_EQ(n, elem(g, {(l * l * l * l - l * l) / 4, (l * l - l) / 2, l})) << l;
  }
}

TEST(Norm, MultiplicativeAndMatchesLiteralMapH) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-2, 2);
  for (auto name : {"C2", "C3", "C4", "C2xC2", "S3", "C8", "D4", "Q8", "C2xC2xC2"}) {
    auto g = ring_of(name);
    ASSERT_LE(g->group()->order(), 8u);
    for (const auto& sub : g->subgroups().all_subgroups) {
      auto s = sub_ring(sub);
      // literal oracle: X = up to 3 orbits, all orbit types when small
      const std::size_t hr = s.ring->rank();
      for (std::size_t a = 0; a < hr; ++a)
        for (std::size_t b = a; b < hr; ++b) {
          std::vector<std::size_t> orbits{a, b};
          std::vector<Integer> c(hr);
          c[a] += 1;
          c[b] += 1;
          const auto points = static_cast<std::size_t>(s.ring->marks()(a, 0) + s.ring->marks()(b, 0));
          const std::size_t index = g->group()->order() / sub.order();
          if (std::pow(double(points), double(index)) > 5000) continue;
          EXPECT_EQ(norm(BurnsideElement(s.ring, c), g, s.embedding),
                    literal_norm(g, s, orbits))
              << name << " |H|=" << sub.order() << " orbits " << a << "," << b;
        }
      // three orbits: one point plus any two transitive sets
      if (sub.order() == g->group()->order()) {
        std::vector<std::size_t> orbits{hr - 1, 0, hr - 1};
        std::vector<Integer> c(hr);
        c[hr - 1] += 2;
        c[0] += 1;
        EXPECT_EQ(norm(BurnsideElement(s.ring, c), g, s.embedding), literal_norm(g, s, orbits));
      }
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<Integer> cx(hr), cy(hr);
        for (auto& v : cx) v = d(rng);
        for (auto& v : cy) v = d(rng);
        BurnsideElement x(s.ring, cx), y(s.ring, cy);
        EXPECT_EQ(norm(x * y, g, s.embedding), norm(x, g, s.embedding) * norm(y, g, s.embedding));
      }
    }
  }
}

TEST(Units, MatsudaCounts) {
  std::map<std::string, std::size_t> expected{
      {"C1", 2}, {"C2", 4}, {"C3", 2}, {"C4", 4}, {"C2xC2", 16}, {"S3", 8},
      {"C2xC2xC2", 256}, {"D4", 32}, {"Q8", 16}, {"C8", 4}, {"S4", 64}, {"C5", 2}};
  for (const auto& [name, order] : expected) {
    auto u = units(ring_of(name));
    EXPECT_EQ(u.order(), order) << name;
    EXPECT_EQ(std::size_t{1} << u.dimension(), order);
    for (const auto& x : u.all_units) {
      EXPECT_EQ(x * x, BurnsideElement::one(u.ring));
      for (const auto& m : x.marks()) EXPECT_TRUE(m == 1 || m == -1);
    }
  }
}

TEST(Units, AbelianBasisIsIndexTwoPart) {
  for (auto name : {"C1", "C2", "C3", "C4", "C5", "C2xC2", "C8", "C2xC2xC2"}) {
    auto u = units(ring_of(name));
    EXPECT_EQ(u.dimension(), u.index_two_rank()) << name;
  }
}

TEST(Units, BoxSearchOracle) {
  // Every x with coefficients in [-3,3] and x^2 = 1 under double-coset
  // multiplication is a unit; compare with the mark search.
  for (auto name : {"C2", "C3", "S3", "C2xC2"}) {
    auto r = ring_of(name);
    const std::size_t n = r->rank();
    auto one = BurnsideElement::one(r);
    auto product = [&](const BurnsideElement& a, const BurnsideElement& b) {
      auto out = BurnsideElement::zero(r);
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
          if (a.coeff(h) != 0 && b.coeff(k) != 0)
            out += (a.coeff(h) * b.coeff(k)) * double_coset_product(r, h, k);
      return out;
    };
    std::vector<BurnsideElement> box;
    std::vector<long> c(n, -3);
    while (true) {
      auto x = elem(r, c);
      if (product(x, x) == one) box.push_back(x);
      std::size_t pos = 0;
      while (pos < n && ++c[pos] == 4) c[pos++] = -3;
      if (pos == n) break;
    }
    auto u = units(r);
    EXPECT_EQ(box.size(), u.order()) << name;
    for (const auto& x : box)
      EXPECT_NE(std::find(u.all_units.begin(), u.all_units.end(), x), u.all_units.end());
  }
}

TEST(Units, ExplicitC2AndC3) {
  auto c3 = units(ring_of("C3"));
  ASSERT_EQ(c3.order(), 2u);
  EXPECT_EQ(c3.all_units[0], BurnsideElement::one(c3.ring));
  EXPECT_EQ(c3.all_units[1], BurnsideElement::integer(c3.ring, -1));

  auto c2 = units(ring_of("C2"));
  auto r = c2.ring;
  auto b = BurnsideElement::basis(r, 0) - BurnsideElement::one(r);
  std::vector<BurnsideElement> expected{BurnsideElement::one(r), BurnsideElement::integer(r, -1), b, -b};
  for (const auto& x : expected)
    EXPECT_NE(std::find(c2.all_units.begin(), c2.all_units.end(), x), c2.all_units.end());
  EXPECT_EQ(c2.basis[0], BurnsideElement::integer(r, -1));
  EXPECT_EQ(c2.basis[1], b);
  EXPECT_EQ(c2.coordinates(-b), (F2Vector{1, 1}));
  EXPECT_EQ(c2.element({1, 1}), -b);
}

TEST(Units, Augmentation) {
  for (auto name : kSmall) {
    auto u = units(ring_of(name));
    EXPECT_EQ(augmentation_sign(BurnsideElement::integer(u.ring, -1)), -1);
    // mark_e([G/H] - 1) = [G:H] - 1 = 1 for index-two H
    for (std::size_t i = 1; i < u.index_two_rank(); ++i) EXPECT_EQ(augmentation_sign(u.basis[i]), 1);
  }
  auto r = ring_of("C2");
  EXPECT_THROW(augmentation_sign(BurnsideElement::basis(r, 0)), NotAUnit);
}

TEST(Units, NormOfUnitsAndAugmentationPower) {
  for (auto name : kSmall) {
    auto g = ring_of(name);
    auto e = class_sub_ring(g, 0);
    for (const auto& u : units(e.ring).all_units) {
      auto n = unit_norm(u, g, e.embedding);
      int expected = 1;
      for (std::size_t i = 0; i < g->group()->order(); ++i) expected *= augmentation_sign(u);
      EXPECT_EQ(augmentation_sign(n), expected);
    }
    for (const auto& sub : g->subgroups().all_subgroups) {
      auto s = sub_ring(sub);
      for (const auto& u : units(g).all_units)
        EXPECT_TRUE(unit_res(u, s.ring, s.embedding).is_unit());
      for (const auto& u : units(s.ring).all_units)
        EXPECT_TRUE(unit_norm(u, g, s.embedding).is_unit());
    }
  }
  auto g = ring_of("C2");
  auto e = class_sub_ring(g, 0);
  EXPECT_THROW(unit_norm(BurnsideElement::integer(e.ring, 2), g, e.embedding), NotAUnit);
}

TEST(Units, CyclicChainTransfers) {
  // In C_{2^n}: tr_k(a_{k-1}) = tr_k(b_{k-1}) = b_k, res_k(a_k) = a_{k-1}, res_k(b_k) = 1.
  for (std::size_t n : {1u, 2u, 3u}) {
    auto g = ring_of("C" + std::to_string(1u << n));
    std::vector<SubRing> levels;
    for (std::size_t k = 0; k <= n; ++k) levels.push_back(class_sub_ring(g, k));
    for (std::size_t k = 1; k <= n; ++k) {
      const auto& top = levels[k];
      const auto& bottom = levels[k - 1];
      auto inner = nest(top.embedding, bottom.embedding);
      auto a_top = BurnsideElement::integer(top.ring, -1);
      auto b_top = BurnsideElement::basis(top.ring, k - 1) - BurnsideElement::one(top.ring);
      auto a_bot = BurnsideElement::integer(bottom.ring, -1);
      EXPECT_EQ(unit_norm(a_bot, top.ring, inner), b_top);
      if (k >= 2) {
        auto b_bot = BurnsideElement::basis(bottom.ring, k - 2) - BurnsideElement::one(bottom.ring);
        EXPECT_EQ(unit_norm(b_bot, top.ring, inner), b_top);
      }
      EXPECT_EQ(unit_res(a_top, bottom.ring, inner), a_bot);
      EXPECT_EQ(unit_res(b_top, bottom.ring, inner), BurnsideElement::one(bottom.ring));
    }
  }
}

TEST(GhostKernel, Examples) {
  for (const auto& level : ghost_kernel(ring_of("C3"))) EXPECT_EQ(level.dimension(), 0u);
  for (const auto& level : ghost_kernel(ring_of("C1"))) EXPECT_EQ(level.dimension(), 0u);

  auto levels = ghost_kernel(ring_of("C2"));
  ASSERT_EQ(levels.size(), 2u);
  EXPECT_EQ(levels[0].dimension(), 0u);
  ASSERT_EQ(levels[1].dimension(), 1u);
  // The augmentation +1 nonidentity unit of A_{C2} is [C2/e] - 1.
  const auto& top = levels[1];
  auto gen = top.units.element(top.kernel_basis[0]);
  EXPECT_EQ(gen, BurnsideElement::basis(top.sub.ring, 0) - BurnsideElement::one(top.sub.ring));
  EXPECT_EQ(augmentation_sign(gen), 1);
}

TEST(GhostKernel, DimensionIsIndexTwoCount) {
  for (auto name : kSmall) {
    auto g = ring_of(name);
    for (const auto& level : ghost_kernel(g)) {
      EXPECT_EQ(level.dimension(), level.units.dimension() - 1);
      for (const auto& v : level.kernel_basis)
        EXPECT_EQ(augmentation_sign(level.units.element(v)), 1);
    }
  }
}

TEST(Rendering, CanonicalText) {
  auto g = ring_of("C2xC2");
  EXPECT_EQ(to_string(elem(g, {-1, 1, 1, 1, -1})),
            "-1·[G/H0] + 1·[G/H1] + 1·[G/H2] + 1·[G/H3] - 1·[G/H4]");
  EXPECT_EQ(to_string(BurnsideElement::zero(g)), "0");
}
