#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "eqorient/group.hpp"
#include "eqorient/homs.hpp"
#include "oracles.hpp"

using namespace eqorient;

namespace {

Perm P(std::initializer_list<std::uint32_t> v) {
  return Perm(std::vector<std::uint32_t>(v));
}

const char* kNamed[] = {"C1", "C2", "C3", "C4", "C5", "C8", "C2xC2",
                        "C2xC2xC2", "S3", "D4", "Q8", "S4"};

}  // namespace

TEST(Close, InvolutionGivesOrderTwo) {
  auto g = close(2, {P({1, 0})});
  EXPECT_EQ(g->order(), 2u);
}

TEST(Close, NoGeneratorsGivesTrivialGroup) {
  auto g = close(1, {});
  EXPECT_EQ(g->order(), 1u);
  EXPECT_TRUE(g->element(0).is_identity());
}

TEST(Close, KleinMatchesBruteForce) {
  std::vector<Perm> gens{P({1, 0, 2, 3}), P({0, 1, 3, 2})};
  auto g = close(4, gens);
  auto brute = oracle::brute_closure(4, gens);
  ASSERT_EQ(g->order(), 4u);
  EXPECT_EQ(std::vector<Perm>(brute.begin(), brute.end()), g->elements());
}

TEST(Close, ErrorsOnBadInput) {
  EXPECT_THROW(Perm({0, 0, 1}), InvalidPermutation);
  EXPECT_THROW(Perm({0, 3, 1}), InvalidPermutation);
  EXPECT_THROW(close(3, {P({1, 0})}), InvalidPermutation);
  // S5 has order 120.
  EXPECT_THROW(close(5, {P({1, 0, 2, 3, 4}), P({1, 2, 3, 4, 0})}, 100), OrderCapExceeded);
  EXPECT_NO_THROW(close(5, {P({1, 0, 2, 3, 4}), P({1, 2, 3, 4, 0})}, 120));
}

TEST(Close, ElementsCanonicalAndTableCorrect) {
  for (auto name : kNamed) {
    auto g = named_group(name);
    EXPECT_TRUE(std::is_sorted(g->elements().begin(), g->elements().end())) << name;
    EXPECT_TRUE(g->element(0).is_identity());
    for (std::size_t a = 0; a < g->order(); ++a)
      for (std::size_t b = 0; b < g->order(); ++b)
        ASSERT_EQ(g->element(g->mul(a, b)), g->element(a) * g->element(b));
  }
}

TEST(Close, AssociativityExhaustive) {
  for (auto name : kNamed) {
    auto g = named_group(name);
    ASSERT_LE(g->order(), 64u);
    const auto n = g->order();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          ASSERT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c))) << name;
    for (std::size_t a = 0; a < n; ++a) ASSERT_EQ(g->mul(a, g->inv(a)), 0u);
  }
}

TEST(NamedGroups, Orders) {
  std::map<std::string, std::size_t> expected{
      {"C1", 1},  {"C2", 2},       {"C3", 3},  {"C4", 4},  {"C5", 5},  {"C8", 8},
      {"C2xC2", 4}, {"C2xC2xC2", 8}, {"S3", 6}, {"D4", 8}, {"Q8", 8}, {"S4", 24},
      {"Sigma2", 2}, {"C9", 9}, {"C7", 7}};
  for (const auto& [name, order] : expected) EXPECT_EQ(named_group(name)->order(), order) << name;
  EXPECT_THROW(named_group("nonsense"), InvalidArgument);
  EXPECT_FALSE(named_group("Q8")->is_abelian());
  EXPECT_TRUE(named_group("C2xC2xC2")->is_abelian());
}

TEST(SubgroupTable, C2) {
  auto t = subgroup_table(named_group("C2"));
  EXPECT_EQ(t.all_subgroups.size(), 2u);
  EXPECT_EQ(t.class_count(), 2u);
}

TEST(SubgroupTable, KleinAndS3AgainstBruteForce) {
  struct Case { const char* name; std::size_t subs, classes; };
  for (auto c : {Case{"C2xC2", 5, 5}, Case{"S3", 6, 4}}) {
    auto g = named_group(c.name);
    auto t = subgroup_table(g);
    auto brute = oracle::brute_subgroups(*g);
    EXPECT_EQ(brute.size(), c.subs);
    EXPECT_EQ(oracle::brute_class_count(*g, brute), c.classes);
    EXPECT_EQ(t.all_subgroups.size(), c.subs) << c.name;
    EXPECT_EQ(t.class_count(), c.classes) << c.name;
  }
}

TEST(SubgroupTable, MatchesBruteForceOnSmallGroups) {
  for (auto name : {"C4", "C8", "D4", "Q8", "C2xC2xC2", "C3", "C5"}) {
    auto g = named_group(name);
    auto t = subgroup_table(g);
    auto brute = oracle::brute_subgroups(*g);
    std::set<std::vector<std::size_t>> mine;
    for (const auto& s : t.all_subgroups) mine.insert(s.members());
    EXPECT_EQ(mine, std::set<std::vector<std::size_t>>(brute.begin(), brute.end())) << name;
    EXPECT_EQ(t.class_count(), oracle::brute_class_count(*g, brute)) << name;
  }
  // S4: 30 subgroups in 11 classes (well known).
  auto t = subgroup_table(named_group("S4"));
  EXPECT_EQ(t.all_subgroups.size(), 30u);
  EXPECT_EQ(t.class_count(), 11u);
}

TEST(SubgroupTable, Invariants) {
  for (auto name : kNamed) {
    auto g = named_group(name);
    auto t = subgroup_table(g);
    // conjugation preserves classes
    for (std::size_t i = 0; i < t.all_subgroups.size(); ++i)
      for (std::size_t x = 0; x < g->order(); ++x)
        ASSERT_EQ(t.class_index(conjugate(t.all_subgroups[i], x)), t.class_of[i]);
    // canonical ordering of representatives
    for (std::size_t c = 1; c < t.class_count(); ++c)
      EXPECT_TRUE(canonical_less(t.rep(c - 1), t.rep(c)));
    EXPECT_EQ(t.rep(0).order(), 1u);
    EXPECT_EQ(t.rep(t.class_count() - 1).order(), g->order());
    // subconjugacy, witnesses
    for (std::size_t k = 0; k < t.class_count(); ++k)
      for (std::size_t h = 0; h < t.class_count(); ++h) {
        if (!t.subconjugacy[k][h]) {
          EXPECT_EQ(t.witness[k][h], npos);
          continue;
        }
        EXPECT_LE(t.rep(k).order(), t.rep(h).order());
        EXPECT_TRUE(conjugate(t.rep(k), t.witness[k][h]).is_subset_of(t.rep(h)));
      }
  }
}

TEST(Normalizer, Examples) {
  auto s3 = named_group("S3");
  std::size_t t01 = *s3->find(P({1, 0, 2}));
  std::size_t seed[] = {t01};
  auto h = generate_subgroup(s3, seed);
  EXPECT_EQ(normalizer(h), h);
  EXPECT_EQ(weyl_order(h), 1u);

  for (auto name : kNamed) {
    auto g = named_group(name);
    EXPECT_EQ(normalizer(whole_group(g)).order(), g->order());
    EXPECT_EQ(weyl_order(whole_group(g)), 1u);
  }

  auto v4 = named_group("C2xC2");
  for (const auto& s : subgroup_table(v4).all_subgroups)
    if (s.order() == 2) {
      EXPECT_EQ(normalizer(s).order(), 4u);
      EXPECT_EQ(weyl_order(s), 2u);
    }
}

TEST(DoubleCosets, Examples) {
  auto s3 = named_group("S3");
  auto g = whole_group(s3);
  auto dc = double_cosets(g, g);
  ASSERT_EQ(dc.size(), 1u);
  EXPECT_EQ(dc[0].intersection, g);

  auto c2 = named_group("C2");
  auto e = trivial_subgroup(c2);
  EXPECT_EQ(double_cosets(e, e).size(), 2u);

  std::size_t seed[] = {*s3->find(P({1, 0, 2}))};
  auto h = generate_subgroup(s3, seed);
  auto d = double_cosets(h, h);
  // Brute force: orbits of H x H acting on S3 by (a, b) . x = a x b^-1.
  std::set<std::set<std::size_t>> orbits;
  for (std::size_t x = 0; x < 6; ++x) {
    std::set<std::size_t> o;
    for (auto a : h.members())
      for (auto b : h.members()) o.insert(s3->mul(s3->mul(a, x), s3->inv(b)));
    orbits.insert(o);
  }
  ASSERT_EQ(d.size(), orbits.size());
  ASSERT_EQ(d.size(), 2u);
  std::multiset<std::size_t> orders{d[0].intersection.order(), d[1].intersection.order()};
  EXPECT_EQ(orders, (std::multiset<std::size_t>{1, 2}));
}

TEST(DoubleCosets, SizesSumToGroupOrder) {
  for (auto name : kNamed) {
    auto g = named_group(name);
    auto t = subgroup_table(g);
    for (const auto& h : t.all_subgroups)
      for (const auto& k : t.all_subgroups) {
        std::size_t total = 0;
        for (const auto& dc : double_cosets(h, k)) {
          total += dc.size;
          EXPECT_EQ(dc.size * dc.intersection.order(), h.order() * k.order());
        }
        ASSERT_EQ(total, g->order());
      }
  }
}

TEST(Embedding, SubgroupAsGroup) {
  auto g = named_group("D4");
  auto t = subgroup_table(g);
  for (const auto& s : t.all_subgroups) {
    auto e = embed(s);
    EXPECT_EQ(e.group->order(), s.order());
    for (std::size_t a = 0; a < s.order(); ++a)
      for (std::size_t b = 0; b < s.order(); ++b)
        ASSERT_EQ(e.to_parent[e.group->mul(a, b)], g->mul(e.to_parent[a], e.to_parent[b]));
    EXPECT_EQ(generate_subgroup(e.group, e.group->generator_indices()).order(), s.order());
  }
}

TEST(ElementClasses, S3AndS4) {
  EXPECT_EQ(element_classes(*named_group("S3")).classes.size(), 3u);
  EXPECT_EQ(element_classes(*named_group("S4")).classes.size(), 5u);
  EXPECT_EQ(element_classes(*named_group("Q8")).classes.size(), 5u);
}

// --------------------------------------------------------------------------
// Homomorphisms

TEST(Homs, C2ToSigma2) {
  auto h = named_group("C2");
  auto pi = named_group("Sigma2");
  auto homs = hom_enumerate(h, pi);
  EXPECT_EQ(homs.size(), oracle::brute_homs(*h, *pi).size());
  EXPECT_EQ(homs.size(), 2u);
  auto cls = hom_classes(h, pi);
  ASSERT_EQ(cls.size(), 2u);
  for (const auto& c : cls) EXPECT_EQ(c.centralizer.order(), 2u);
}

TEST(Homs, TrivialSourceAndOddToSigma2) {
  auto pi = named_group("S3");
  auto cls = hom_classes(named_group("C1"), pi);
  ASSERT_EQ(cls.size(), 1u);
  EXPECT_TRUE(cls[0].representative.is_trivial());
  EXPECT_EQ(cls[0].centralizer.order(), 6u);

  auto c3 = hom_classes(named_group("C3"), named_group("Sigma2"));
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_TRUE(c3[0].representative.is_trivial());
}

TEST(Homs, MatchesBruteForceAndPartitions) {
  const char* sources[] = {"C1", "C2", "C3", "C4", "C2xC2", "S3"};
  const char* targets[] = {"Sigma2", "C3", "C4", "S3", "D4"};
  for (auto s : sources)
    for (auto t : targets) {
      auto h = named_group(s);
      auto pi = named_group(t);
      auto homs = hom_enumerate(h, pi);
      auto brute = oracle::brute_homs(*h, *pi);
      std::sort(brute.begin(), brute.end());
      ASSERT_EQ(homs.size(), brute.size()) << s << "->" << t;
      for (std::size_t i = 0; i < homs.size(); ++i) {
        EXPECT_EQ(homs[i].image_of, brute[i]);
        EXPECT_TRUE(is_homomorphism(homs[i]));
      }
      auto cls = hom_classes(h, pi);
      std::size_t total = 0;
      for (const auto& c : cls) {
        total += c.size;
        // orbit-stabilizer: the stabilizer of θ under conjugation is Z(θ)
        EXPECT_EQ(c.size * c.centralizer.order(), pi->order());
      }
      EXPECT_EQ(total, homs.size());
      for (const auto& f : homs) EXPECT_NE(find_hom_class(cls, f), npos);
    }
}
