#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <vector>

#include "group.hpp"

namespace eqorient {

inline constexpr std::size_t kDefaultHomCandidateCap = 5'000'000;

/// A homomorphism source -> target, by element indices.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<std::size_t> image_of;

  bool is_trivial() const {
    return std::all_of(image_of.begin(), image_of.end(),
                       [](std::size_t x) { return x == 0; });
  }
  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.image_of == b.image_of;
  }
};

inline bool is_homomorphism(const GroupHom& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  if (f.image_of.size() != s.order()) return false;
  if (f.image_of[0] != 0) return false;
  for (std::size_t a = 0; a < s.order(); ++a)
    for (std::size_t b = 0; b < s.order(); ++b)
      if (f.image_of[s.mul(a, b)] != t.mul(f.image_of[a], f.image_of[b]))
        return false;
  return true;
}

/// pi θ pi^-1
inline GroupHom conjugate_hom(const GroupHom& f, std::size_t pi) {
  GroupHom g = f;
  for (auto& x : g.image_of) x = f.target->conj(pi, x);
  return g;
}

/// Lexicographically smallest member of the Π-conjugation orbit.
inline GroupHom canonical_hom(const GroupHom& f) {
  GroupHom best = f;
  for (std::size_t pi = 0; pi < f.target->order(); ++pi) {
    GroupHom c = conjugate_hom(f, pi);
    if (c.image_of < best.image_of) best = std::move(c);
  }
  return best;
}

/// Every homomorphism source -> target, sorted by image vector. Candidates
/// are assignments on the source's generators, extended along words and
/// then validated on all element pairs.
inline std::vector<GroupHom> hom_enumerate(const GroupPtr& source,
                                           const GroupPtr& target,
                                           std::size_t candidate_cap = kDefaultHomCandidateCap) {
  const auto& gens = source->generator_indices();
  const std::size_t r = gens.size();
  const std::size_t tn = target->order();
  double candidates = 1;
  for (std::size_t i = 0; i < r; ++i) candidates *= static_cast<double>(tn);
  if (candidates > static_cast<double>(candidate_cap))
    throw OrderCapExceeded("too many homomorphism candidates");

  std::vector<GroupHom> out;
  std::vector<std::size_t> choice(r, 0);
  while (true) {
    GroupHom f{source, target, std::vector<std::size_t>(source->order(), npos)};
    f.image_of[0] = 0;
    std::deque<std::size_t> queue{0};
    bool ok = true;
    while (ok && !queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < r && ok; ++i) {
        auto y = source->mul(x, gens[i]);
        auto img = target->mul(f.image_of[x], choice[i]);
        if (f.image_of[y] == npos) {
          f.image_of[y] = img;
          queue.push_back(y);
        } else if (f.image_of[y] != img) {
          ok = false;
        }
      }
    }
    if (ok && is_homomorphism(f)) out.push_back(std::move(f));

    std::size_t pos = 0;
    while (pos < r && ++choice[pos] == tn) choice[pos++] = 0;
    if (pos == r) break;
  }
  std::sort(out.begin(), out.end(), [](const GroupHom& a, const GroupHom& b) {
    return a.image_of < b.image_of;
  });
  return out;
}

/// Centralizer of the image: Z(θ) = {pi : pi θ(h) = θ(h) pi for all h}.
inline Subgroup hom_centralizer(const GroupHom& f) {
  std::set<std::size_t> image(f.image_of.begin(), f.image_of.end());
  std::vector<std::size_t> members;
  for (std::size_t pi = 0; pi < f.target->order(); ++pi) {
    bool commutes = true;
    for (auto y : image)
      if (f.target->mul(pi, y) != f.target->mul(y, pi)) {
        commutes = false;
        break;
      }
    if (commutes) members.push_back(pi);
  }
  return Subgroup(f.target, std::move(members));
}

struct HomClass {
  GroupHom representative;  // canonical (smallest image vector) member
  std::size_t size;
  Subgroup centralizer;
};

/// Π-conjugacy classes of homomorphisms, ordered by representative.
inline std::vector<HomClass> hom_classes(const GroupPtr& source,
                                         const GroupPtr& target) {
  auto homs = hom_enumerate(source, target);
  std::vector<HomClass> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& f : homs) {
    if (seen.count(f.image_of)) continue;
    std::set<std::vector<std::size_t>> orbit;
    for (std::size_t pi = 0; pi < target->order(); ++pi)
      orbit.insert(conjugate_hom(f, pi).image_of);
    seen.insert(orbit.begin(), orbit.end());
    // homs is sorted, so the first unseen member is the orbit minimum.
    out.push_back({f, orbit.size(), hom_centralizer(f)});
  }
  return out;
}

/// Position of f's class in `classes`, or npos.
inline std::size_t find_hom_class(const std::vector<HomClass>& classes,
                                  const GroupHom& f) {
  auto c = canonical_hom(f);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].representative.image_of == c.image_of) return i;
  return npos;
}

/// θ restricted along an embedding K -> H.
inline GroupHom restrict_hom(const GroupHom& f, const Embedding& k_in_h) {
  GroupHom g{k_in_h.group, f.target, {}};
  for (auto x : k_in_h.to_parent) g.image_of.push_back(f.image_of[x]);
  return g;
}

}  // namespace eqorient
