#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bredon.hpp"
#include "burnside.hpp"
#include "group.hpp"
#include "homs.hpp"
#include "mackey.hpp"

namespace eqorient {

// ---------------------------------------------------------------------------
// Components of the fixed points of the classifying space B_G Π

struct Pi0Component {
  GroupHom theta;  // canonical representative of the Π-conjugacy class
  std::size_t class_size = 0;
  std::size_t centralizer_order = 0;
  std::string label;
};

struct Pi0Level {
  std::size_t subgroup;  // index into table->all_subgroups
  Embedding embedding;
  std::vector<Pi0Component> components;
};

/// Levels are stored on every subgroup so that restriction along an actual
/// inclusion K <= H is a well-defined map of components.
struct Pi0Data {
  GroupPtr group;
  GroupPtr pi;
  std::shared_ptr<const SubgroupTable> table;
  std::vector<Pi0Level> levels;
  /// (K, H) with K <= H -> for each component at H, its image at K.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> restriction;

  const Pi0Level& class_level(std::size_t cls) const { return levels[table->class_reps[cls]]; }
};

inline std::string pi0_label(const GroupHom& theta, std::size_t i) {
  return "theta" + std::to_string(i) + (theta.is_trivial() ? " (trivial)" : "");
}

inline Pi0Data classifying_pi0(const GroupPtr& g, const GroupPtr& pi) {
  Pi0Data d;
  d.group = g;
  d.pi = pi;
  d.table = std::make_shared<const SubgroupTable>(subgroup_table(g));
  const auto& subs = d.table->all_subgroups;
  for (std::size_t s = 0; s < subs.size(); ++s) {
    Pi0Level level{s, embed(subs[s]), {}};
    auto classes = hom_classes(level.embedding.group, pi);
    for (std::size_t i = 0; i < classes.size(); ++i)
      level.components.push_back({classes[i].representative, classes[i].size,
                                  classes[i].centralizer.order(), pi0_label(classes[i].representative, i)});
    d.levels.push_back(std::move(level));
  }
  std::vector<std::vector<HomClass>> cache;
  for (const auto& l : d.levels) cache.push_back(hom_classes(l.embedding.group, pi));
  for (std::size_t h = 0; h < subs.size(); ++h)
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (!subs[k].is_subset_of(subs[h])) continue;
      auto k_in_h = nest(d.levels[h].embedding, d.levels[k].embedding);
      std::vector<std::size_t> image;
      for (const auto& c : d.levels[h].components) {
        auto idx = find_hom_class(cache[k], restrict_hom(c.theta, k_in_h));
        if (idx == npos) throw FormulaMismatch("restricted homomorphism has no class");
        image.push_back(idx);
      }
      d.restriction[{k, h}] = std::move(image);
    }
  if (d.levels.front().components.size() != 1)
    throw FormulaMismatch("expected a single component at the trivial subgroup");
  return d;
}

/// Violations of res_{L,K} ∘ res_{K,H} = res_{L,H}.
inline std::vector<std::string> pi0_transitivity_violations(const Pi0Data& d) {
  std::vector<std::string> out;
  const auto& subs = d.table->all_subgroups;
  for (const auto& [kh, kmap] : d.restriction) {
    const auto [k, h] = kh;
    for (std::size_t l = 0; l < subs.size(); ++l) {
      if (!subs[l].is_subset_of(subs[k])) continue;
      const auto& lk = d.restriction.at({l, k});
      const auto& lh = d.restriction.at({l, h});
      for (std::size_t c = 0; c < kmap.size(); ++c)
        if (lk[kmap[c]] != lh[c])
          out.push_back("S" + std::to_string(l) + " <= S" + std::to_string(k) + " <= S" + std::to_string(h));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// First Stiefel-Whitney classes

enum class Coefficient { Z, A };

/// w1 of a bundle, in the constant F2 functor (Z) or in A_G^x (A).
struct W1Class {
  Coefficient coefficient;
  Integer w1_Z;                         // 0 or 1, set for Z
  std::optional<BurnsideElement> w1_A;  // set for A
  bool orientable = false;
};

namespace detail {

/// F2 coordinates at the top level, read back as a unit of A_G.
inline BurnsideElement top_unit(const IntMatrix& column, const UnitGroup& top_units) {
  F2Vector coords;
  for (std::size_t i = 0; i < column.rows(); ++i) coords.push_back(static_cast<std::uint8_t>(column(i, 0) % 2 != 0));
  return top_units.element(coords);
}

inline std::size_t top_index(const MackeyFunctor& m) { return m.subgroup_count() - 1; }

}  // namespace detail

/// w1 of Ind_e^G of the Möbius line, computed as the transfer tr_e^G of the
/// class of -1 in the respective Mackey functor.
inline W1Class w1_induced_line(const GroupPtr& g, Coefficient c) {
  W1Class w{c, 0, std::nullopt, false};
  if (c == Coefficient::Z) {
    auto f = constant_F2(g);
    IntMatrix one(1, 1, Integer(1));
    w.w1_Z = (f.tr_map(0, detail::top_index(f)) * one)(0, 0) % 2;
    w.orientable = w.w1_Z == 0;
    return w;
  }
  auto u = units_mackey(g);
  // -1 is the first basis vector at e, where A_e^x = {±1}.
  IntMatrix minus_one(1, 1, Integer(1));
  auto ring = BurnsideRing::create(g);
  auto top = units(ring);
  w.w1_A = detail::top_unit(u.tr_map(0, detail::top_index(u)) * minus_one, top);
  w.orientable = *w.w1_A == BurnsideElement::one(ring);
  return w;
}

/// N_e^G(-1) computed directly by the multiplicative norm.
inline BurnsideElement norm_of_minus_one(const RingPtr& ring) {
  auto e = class_sub_ring(ring, 0);
  return unit_norm(BurnsideElement::integer(e.ring, -1), ring, e.embedding);
}

/// For even |G|: N_e^G(-1) ≡ -1 modulo the span of proper orbits, and N_e^G(-1) ≠ 1.
inline bool norm_minus_one_congruence(const GroupPtr& g) {
  if (g->order() % 2 != 0) throw OddOrderInput("the congruence argument needs |G| even");
  auto ring = BurnsideRing::create(g);
  auto n = norm_of_minus_one(ring);
  // the top class is [G/G] = 1; all other basis elements are proper orbits
  return n.coeff(ring->top_class()) == -1 && n != BurnsideElement::one(ring);
}

/// For odd |G|: the augmentation A_H^x -> F2 is an isomorphism at every level.
inline bool odd_order_collapse(const GroupPtr& g) {
  if (g->order() % 2 == 0) throw EvenOrderInput("collapse holds only for odd |G|");
  auto ring = BurnsideRing::create(g);
  for (std::size_t cls = 0; cls < ring->rank(); ++cls) {
    auto sub = class_sub_ring(ring, cls);
    auto u = units(sub.ring);
    if (u.dimension() != 1 || augmentation_sign(u.basis.front()) != -1) return false;
  }
  return true;
}

struct ObstructionVerdict {
  std::string bundle;
  Integer w1_Z;  // class in the constant F2 functor at G/G
  BurnsideElement w1_A;
  bool hz_orientable = false;
  bool ha_orientable = false;
  std::string ghost_note;
};

/// Orientability of the tautological bundle γ_ρ of the regular representation.
/// Even |G|: w1_Z = tr_T^G(tr_e^T(1)) for the first order-2 subgroup T, which
/// vanishes; w1_A is witnessed by N_e^G(-1) on the 1-skeleton. Odd |G|: the
/// underlying class is |G|·w1 ≠ 0 and units collapse to ±1.
inline ObstructionVerdict gamma_rho_verdict(const GroupPtr& g) {
  auto ring = BurnsideRing::create(g);
  auto f = constant_F2(g);
  const std::size_t top = detail::top_index(f);
  ObstructionVerdict v{"gamma_rho", 0, norm_of_minus_one(ring), false, false, ""};
  IntMatrix one(1, 1, Integer(1));
  if (g->order() % 2 == 0) {
    const auto& subs = f.table->all_subgroups;
    std::size_t t = 0;
    while (subs[t].order() != 2) ++t;
    v.w1_Z = (f.tr_map(t, top) * f.tr_map(0, t) * one)(0, 0) % 2;
    std::ostringstream os;
    os << "even order: w1_Z = tr_T^G(w1_Z(gamma_rho_T)) with T = S" << t
       << "; w1_A = N_e^G(-1) is congruent to -1 modulo proper orbits";
    if (!norm_minus_one_congruence(g)) throw FormulaMismatch("N_e^G(-1) congruence failed");
    v.ghost_note = os.str();
  } else {
    v.w1_Z = (f.tr_map(0, top) * one)(0, 0) % 2;
    if (!odd_order_collapse(g)) throw FormulaMismatch("odd-order unit collapse failed");
    v.ghost_note = g->order() == 1 ? "trivial group: gamma_rho is the Moebius line"
                                   : "odd order: underlying class |G|·w1 is nonzero and A_G^x = {1, -1}";
  }
  v.hz_orientable = v.w1_Z == 0;
  v.ha_orientable = v.w1_A == BurnsideElement::one(ring);
  return v;
}

/// w1(ξ ⊕ ξ) = w1(ξ)^2 = 1 for every unit.
inline bool twofold_sum_verdict(const BurnsideElement& w1) {
  if (!w1.is_unit()) throw NotAUnit(to_string(w1) + " is not a unit");
  if (w1 * w1 != BurnsideElement::one(w1.ring())) throw FormulaMismatch("unit does not square to 1");
  return true;
}

/// The F2 version: w1 + w1 = 0.
inline bool twofold_sum_verdict(const Integer& w1_Z) {
  if (w1_Z != 0 && w1_Z != 1) throw NotAUnit("F2 class must be 0 or 1");
  return (2 * w1_Z) % 2 == 0;
}

/// For free X: H^n(X; A^∘) = 0 in every degree.
inline bool free_action_ghost_vanishing(const GCWComplex& x) {
  if (!x.is_free()) throw NotFree("every cell must have trivial isotropy");
  auto h = bredon_cohomology(x, ghost_kernel_mackey(x.group));
  for (const auto& grp : h.groups)
    if (!grp.is_zero()) return false;
  return true;
}

}  // namespace eqorient
