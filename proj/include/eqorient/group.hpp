#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace eqorient {

inline constexpr std::size_t kDefaultOrderCap = 2000;
inline constexpr std::size_t kDefaultSubgroupCap = 10000;
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A permutation of {0, ..., degree-1}, stored by its image sequence.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) {
        std::ostringstream os;
        os << "image sequence of length " << images_.size()
           << " is not a bijection";
        throw InvalidPermutation(os.str());
      }
      seen[x] = true;
    }
  }

  static Perm identity(std::size_t degree) {
    Perm p;
    p.images_.resize(degree);
    for (std::size_t i = 0; i < degree; ++i)
      p.images_[i] = static_cast<std::uint32_t>(i);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  /// Composition, applying `rhs` first: (a * b)(x) = a(b(x)).
  Perm operator*(const Perm& rhs) const {
    Perm p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      p.images_[i] = images_[rhs.images_[i]];
    return p;
  }

  Perm inverse() const {
    Perm p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      p.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return p;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite permutation group with its full multiplication table. Elements
/// are sorted lexicographically by image sequence, so the identity is
/// always element 0.
class FiniteGroup {
 public:
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }
  /// Generator images as element indices.
  const std::vector<std::size_t>& generator_indices() const noexcept {
    return generator_indices_;
  }

  static constexpr std::size_t identity_index() noexcept { return 0; }

  std::size_t mul(std::size_t a, std::size_t b) const {
    return table_[a * order() + b];
  }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  /// g x g^-1
  std::size_t conj(std::size_t g, std::size_t x) const {
    return mul(mul(g, x), inv(g));
  }

  std::optional<std::size_t> find(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t n = 1;
    for (std::size_t x = a; x != identity_index(); x = mul(x, a)) ++n;
    return n;
  }

  bool is_abelian() const {
    for (auto a : generator_indices_)
      for (auto b : generator_indices_)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  friend GroupPtr close(std::size_t degree, std::vector<Perm> generators,
                        std::size_t cap, std::string name);
  friend GroupPtr group_from_elements(std::size_t degree,
                                      std::vector<Perm> sorted_elements,
                                      std::string name);

 private:
  FiniteGroup() = default;

  void build_tables() {
    const std::size_t n = elements_.size();
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(elements_[i], i);
    table_.resize(n * n);
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table_[i * n + j] = index.at(elements_[i] * elements_[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i * n + j] == 0) {
          inverse_[i] = j;
          break;
        }
    generator_indices_.clear();
    for (const auto& g : generators_) generator_indices_.push_back(index.at(g));
  }

  std::size_t degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<std::size_t> generator_indices_;
  std::vector<Perm> elements_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
};

/// Closes a generating set under composition.
inline GroupPtr close(std::size_t degree, std::vector<Perm> generators,
                      std::size_t cap = kDefaultOrderCap, std::string name = "") {
  if (degree == 0) throw InvalidArgument("degree must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree) {
      std::ostringstream os;
      os << "generator has degree " << g.degree() << ", expected " << degree;
      throw InvalidPermutation(os.str());
    }
  std::set<Perm> seen{Perm::identity(degree)};
  std::deque<Perm> queue{Perm::identity(degree)};
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Perm y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          std::ostringstream os;
          os << "group order exceeds cap " << cap;
          throw OrderCapExceeded(os.str());
        }
        queue.push_back(std::move(y));
      }
    }
  }
  std::shared_ptr<FiniteGroup> group(new FiniteGroup());
  group->degree_ = degree;
  group->name_ = std::move(name);
  group->generators_ = std::move(generators);
  group->elements_.assign(seen.begin(), seen.end());
  group->build_tables();
  return group;
}

/// Wraps an already closed, sorted element list. A small generating set is
/// picked greedily.
inline GroupPtr group_from_elements(std::size_t degree,
                                    std::vector<Perm> sorted_elements,
                                    std::string name = "") {
  std::shared_ptr<FiniteGroup> group(new FiniteGroup());
  group->degree_ = degree;
  group->name_ = std::move(name);
  group->elements_ = std::move(sorted_elements);
  group->generators_.clear();
  group->build_tables();
  // Greedy generating set: add the first element outside the span so far.
  const std::size_t n = group->order();
  std::vector<bool> in(n, false);
  in[0] = true;
  std::vector<std::size_t> span{0};
  for (std::size_t g = 1; g < n; ++g) {
    if (in[g]) continue;
    group->generators_.push_back(group->elements_[g]);
    std::deque<std::size_t> queue(span.begin(), span.end());
    std::vector<std::size_t> gens;
    for (const auto& p : group->generators_) gens.push_back(*group->find(p));
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto s : gens) {
        auto y = group->mul(x, s);
        if (!in[y]) {
          in[y] = true;
          span.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  for (const auto& p : group->generators_)
    group->generator_indices_.push_back(*group->find(p));
  return group;
}

// ---------------------------------------------------------------------------
// Subgroups

/// A subgroup of a fixed parent group, stored as a sorted list of element
/// indices plus a membership mask.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr parent, std::vector<std::size_t> members)
      : parent_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    mask_.assign(parent_->order(), false);
    for (auto m : members_) mask_[m] = true;
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  std::size_t order() const noexcept { return members_.size(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  bool contains(std::size_t g) const { return mask_[g]; }

  bool is_subset_of(const Subgroup& other) const {
    for (auto m : members_)
      if (!other.contains(m)) return false;
    return true;
  }

  std::size_t index_in(const Subgroup& super) const {
    return super.order() / order();
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members_ == b.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<std::size_t> members_;
  std::vector<bool> mask_;
};

/// Ordering used for canonical lists: by order, then element list.
inline bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members() < b.members();
}

/// Smallest subgroup containing `seed`.
inline Subgroup generate_subgroup(const GroupPtr& g,
                                  std::span<const std::size_t> seed) {
  const FiniteGroup& group = *g;
  std::vector<bool> in(group.order(), false);
  std::vector<std::size_t> members{FiniteGroup::identity_index()};
  in[FiniteGroup::identity_index()] = true;
  std::deque<std::size_t> queue{FiniteGroup::identity_index()};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto s : seed) {
      auto y = group.mul(x, s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(members));
}

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<std::size_t> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

inline Subgroup trivial_subgroup(const GroupPtr& g) {
  return Subgroup(g, {FiniteGroup::identity_index()});
}

/// g H g^-1
inline Subgroup conjugate(const Subgroup& h, std::size_t g) {
  std::vector<std::size_t> members;
  members.reserve(h.order());
  for (auto x : h.members()) members.push_back(h.parent()->conj(g, x));
  return Subgroup(h.parent(), std::move(members));
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<std::size_t> members;
  for (auto x : a.members())
    if (b.contains(x)) members.push_back(x);
  return Subgroup(a.parent(), std::move(members));
}

inline Subgroup normalizer(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < g->order(); ++x)
    if (conjugate(h, x) == h) members.push_back(x);
  return Subgroup(g, std::move(members));
}

inline std::size_t weyl_order(const Subgroup& h) {
  return normalizer(h).order() / h.order();
}

/// Conjugacy classes of subgroups, with the subconjugacy partial order.
struct SubgroupTable {
  GroupPtr group;
  /// Every subgroup, sorted canonically (order, then element list).
  std::vector<Subgroup> all_subgroups;
  /// Index into all_subgroups of each class representative (the canonically
  /// smallest member of the class); classes are in canonical order.
  std::vector<std::size_t> class_reps;
  std::vector<std::size_t> class_of;
  /// subconjugacy[k][h]: some conjugate of class k lies inside class h.
  std::vector<std::vector<bool>> subconjugacy;
  /// witness[k][h] = g with g K g^-1 <= H for the representatives, or npos.
  std::vector<std::vector<std::size_t>> witness;

  std::size_t class_count() const noexcept { return class_reps.size(); }
  const Subgroup& rep(std::size_t cls) const {
    return all_subgroups[class_reps[cls]];
  }
  std::size_t index_of(const Subgroup& h) const {
    auto it = lookup_.find(h.mask());
    if (it == lookup_.end()) throw InvalidArgument("subgroup not in table");
    return it->second;
  }
  std::size_t class_index(const Subgroup& h) const {
    return class_of[index_of(h)];
  }
  std::vector<std::size_t> members_of_class(std::size_t cls) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < all_subgroups.size(); ++i)
      if (class_of[i] == cls) out.push_back(i);
    return out;
  }
  /// Index-2 subgroup classes (each such subgroup is normal).
  std::vector<std::size_t> index_two_classes() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < class_count(); ++c)
      if (2 * rep(c).order() == group->order()) out.push_back(c);
    return out;
  }

  std::map<std::vector<bool>, std::size_t> lookup_;
};

/// Enumerates all subgroups by cyclic extension: start from the cyclic
/// subgroups and keep closing H u {g} until nothing new appears.
inline SubgroupTable subgroup_table(const GroupPtr& g,
                                    std::size_t subgroup_cap = kDefaultSubgroupCap) {
  const FiniteGroup& group = *g;
  const std::size_t n = group.order();
  std::map<std::vector<bool>, Subgroup> found;
  std::vector<Subgroup> layer;
  std::vector<std::size_t> cyclic_generators;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t seed[] = {x};
    Subgroup c = generate_subgroup(g, seed);
    if (found.emplace(c.mask(), c).second) {
      layer.push_back(c);
      cyclic_generators.push_back(x);
    }
  }
  while (!layer.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : layer) {
      for (auto x : cyclic_generators) {
        if (h.contains(x)) continue;
        std::vector<std::size_t> seed = h.members();
        seed.push_back(x);
        Subgroup k = generate_subgroup(g, seed);
        if (found.emplace(k.mask(), k).second) {
          if (found.size() > subgroup_cap)
            throw OrderCapExceeded("number of subgroups exceeds cap");
          next.push_back(std::move(k));
        }
      }
    }
    layer = std::move(next);
  }

  SubgroupTable t;
  t.group = g;
  for (auto& [mask, s] : found) t.all_subgroups.push_back(s);
  std::sort(t.all_subgroups.begin(), t.all_subgroups.end(), canonical_less);
  for (std::size_t i = 0; i < t.all_subgroups.size(); ++i)
    t.lookup_.emplace(t.all_subgroups[i].mask(), i);

  t.class_of.assign(t.all_subgroups.size(), npos);
  for (std::size_t i = 0; i < t.all_subgroups.size(); ++i) {
    if (t.class_of[i] != npos) continue;
    const std::size_t cls = t.class_reps.size();
    t.class_reps.push_back(i);
    for (std::size_t x = 0; x < n; ++x)
      t.class_of[t.lookup_.at(conjugate(t.all_subgroups[i], x).mask())] = cls;
  }

  const std::size_t c = t.class_reps.size();
  t.subconjugacy.assign(c, std::vector<bool>(c, false));
  t.witness.assign(c, std::vector<std::size_t>(c, npos));
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t h = 0; h < c; ++h) {
      const Subgroup& kk = t.rep(k);
      const Subgroup& hh = t.rep(h);
      if (kk.order() > hh.order() || hh.order() % kk.order() != 0) continue;
      for (std::size_t x = 0; x < n; ++x)
        if (conjugate(kk, x).is_subset_of(hh)) {
          t.subconjugacy[k][h] = true;
          t.witness[k][h] = x;
          break;
        }
    }
  return t;
}

// ---------------------------------------------------------------------------
// Double cosets

struct DoubleCoset {
  std::size_t representative;  // minimal element index in H g K
  std::size_t size;
  Subgroup intersection;  // H ∩ g K g^-1
};

/// H\G/K, one entry per double coset, ordered by representative.
inline std::vector<DoubleCoset> double_cosets(const Subgroup& h,
                                              const Subgroup& k) {
  const auto& g = h.parent();
  std::vector<bool> seen(g->order(), false);
  std::vector<DoubleCoset> out;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (seen[x]) continue;
    std::size_t size = 0;
    for (auto a : h.members())
      for (auto b : k.members()) {
        auto y = g->mul(g->mul(a, x), b);
        if (!seen[y]) {
          seen[y] = true;
          ++size;
        }
      }
    out.push_back({x, size, intersect(h, conjugate(k, x))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Element conjugacy classes

struct ElementClasses {
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;  // ordered by minimal element
};

inline ElementClasses element_classes(const FiniteGroup& g) {
  ElementClasses ec;
  ec.class_of.assign(g.order(), npos);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (ec.class_of[x] != npos) continue;
    std::set<std::size_t> cls;
    for (std::size_t y = 0; y < g.order(); ++y) cls.insert(g.conj(y, x));
    for (auto m : cls) ec.class_of[m] = ec.classes.size();
    ec.classes.emplace_back(cls.begin(), cls.end());
  }
  return ec;
}

// ---------------------------------------------------------------------------
// Subgroups realized as groups in their own right

/// A subgroup H <= G turned into a standalone FiniteGroup, with the index
/// translation in both directions.
struct Embedding {
  GroupPtr parent;
  GroupPtr group;
  std::vector<std::size_t> to_parent;
  std::vector<std::size_t> from_parent;  // npos outside the image

  Subgroup image() const { return Subgroup(parent, to_parent); }

  /// Pulls a subgroup of the parent contained in the image back to `group`.
  Subgroup pull_back(const Subgroup& s) const {
    std::vector<std::size_t> members;
    for (auto m : s.members()) {
      if (from_parent[m] == npos)
        throw InvalidArgument("subgroup not contained in embedded image");
      members.push_back(from_parent[m]);
    }
    return Subgroup(group, std::move(members));
  }
  Subgroup push_forward(const Subgroup& s) const {
    std::vector<std::size_t> members;
    for (auto m : s.members()) members.push_back(to_parent[m]);
    return Subgroup(parent, std::move(members));
  }
};

inline Embedding embed(const Subgroup& h, std::string name = "") {
  const auto& g = h.parent();
  std::vector<Perm> elements;
  for (auto m : h.members()) elements.push_back(g->element(m));
  Embedding e;
  e.parent = g;
  e.group = group_from_elements(g->degree(), std::move(elements), std::move(name));
  e.to_parent = h.members();  // same lexicographic order
  e.from_parent.assign(g->order(), npos);
  for (std::size_t i = 0; i < e.to_parent.size(); ++i)
    e.from_parent[e.to_parent[i]] = i;
  return e;
}

/// Given embeddings of K and H into the same parent with K <= H, the
/// embedding of K's group into H's group.
inline Embedding nest(const Embedding& outer, const Embedding& inner) {
  Embedding e;
  e.parent = outer.group;
  e.group = inner.group;
  e.from_parent.assign(outer.group->order(), npos);
  for (std::size_t i = 0; i < inner.to_parent.size(); ++i) {
    auto j = outer.from_parent[inner.to_parent[i]];
    if (j == npos) throw InvalidArgument("inner subgroup not contained in outer");
    e.to_parent.push_back(j);
    e.from_parent[j] = i;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Built-in groups

namespace detail {

inline Perm perm(std::initializer_list<std::uint32_t> images) {
  return Perm(std::vector<std::uint32_t>(images));
}

inline GroupPtr quaternion_group() {
  // Left-regular action of Q8 on {±1, ±i, ±j, ±k}; index = 4*sign + unit.
  static constexpr int unit_mul[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto left = [&](int q) {
    std::vector<std::uint32_t> images(8);
    for (int x = 0; x < 8; ++x) {
      int qs = q / 4, qu = q % 4, xs = x / 4, xu = x % 4;
      int s = (qs + xs + sign_mul[qu][xu]) % 2;
      images[x] = static_cast<std::uint32_t>(4 * s + unit_mul[qu][xu]);
    }
    return Perm(std::move(images));
  };
  return close(8, {left(1), left(2)}, kDefaultOrderCap, "Q8");
}

}  // namespace detail

inline GroupPtr cyclic_group(std::size_t n, std::string name = "") {
  if (n == 0) throw InvalidArgument("cyclic group order must be positive");
  if (name.empty()) name = "C" + std::to_string(n);
  if (n == 1) return close(1, {}, kDefaultOrderCap, name);
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i)
    images[i] = static_cast<std::uint32_t>((i + 1) % n);
  return close(n, {Perm(std::move(images))}, kDefaultOrderCap, name);
}

/// C2^n acting on 2n points by independent transpositions.
inline GroupPtr elementary_abelian_2group(std::size_t n, std::string name = "") {
  if (name.empty()) {
    name = "C2";
    for (std::size_t i = 1; i < n; ++i) name += "xC2";
    if (n == 0) name = "C1";
  }
  if (n == 0) return close(1, {}, kDefaultOrderCap, name);
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = Perm::identity(2 * n).images();
    std::swap(p[2 * i], p[2 * i + 1]);
    gens.emplace_back(std::move(p));
  }
  return close(2 * n, std::move(gens), kDefaultOrderCap, name);
}

/// Names: C<n>, C2xC2, C2xC2xC2, S3, D4, Q8, S4, Sigma2, trivial.
inline GroupPtr named_group(const std::string& name) {
  using detail::perm;
  if (name == "trivial" || name == "C1" || name == "e") return cyclic_group(1, "C1");
  if (name == "Sigma2") return cyclic_group(2, "Sigma2");
  if (name == "C2xC2") return elementary_abelian_2group(2);
  if (name == "C2xC2xC2") return elementary_abelian_2group(3);
  if (name == "S3") return close(3, {perm({1, 0, 2}), perm({1, 2, 0})}, kDefaultOrderCap, "S3");
  if (name == "D4")
    return close(4, {perm({1, 2, 3, 0}), perm({0, 3, 2, 1})}, kDefaultOrderCap, "D4");
  if (name == "Q8") return detail::quaternion_group();
  if (name == "S4")
    return close(4, {perm({1, 0, 2, 3}), perm({1, 2, 3, 0})}, kDefaultOrderCap, "S4");
  if (name.size() > 1 && name[0] == 'C' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    auto n = std::stoul(name.substr(1));
    if (n == 0 || n > kDefaultOrderCap) throw InvalidArgument("bad cyclic order in " + name);
    return cyclic_group(n);
  }
  throw InvalidArgument("unknown group name '" + name + "'");
}

}  // namespace eqorient
