// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <random>

#include "cw/construct.hpp"
#include "cw/hybrid.hpp"
#include "cw/search.hpp"
#include "cw/structure.hpp"
#include "cw/wreath.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"

using namespace cw;

namespace {

Subgroup subgroup_of_order(const FiniteGroup& g, std::size_t n) {
  for (const auto& s : all_subgroups(g))
    if (s.order() == n) return s;
  throw std::runtime_error("no subgroup of that order");
}

GroupAction regular_z2() { return coset_action(Subgroup::trivial(cyclic(2))); }

// Realized homomorphism of a standard embedding into its realized wreath.
Homomorphism realize(const StandardEmbedding& e, const FiniteGroup& w) {
  std::vector<Elem> t;
  for (Elem g = 0; g < e.action().group().order(); ++g) t.push_back(w.index_of(e.wreath().to_perm(e(g))));
  return Homomorphism::from_table(e.action().group(), w, t);
}

}  // namespace

TEST(Wreath, Orders) {
  Wreath w(cyclic(2), regular_z2());
  EXPECT_EQ(w.order(), std::optional<std::size_t>(8));
  EXPECT_EQ(w.realize().order(), 8u);

  FiniteGroup z3 = cyclic(3), z2 = cyclic(2);
  GroupAction trivial(z2, 1, {Perm{0}});
  FiniteGroup gh = Wreath(z3, trivial).realize();
  EXPECT_EQ(gh.order(), 6u);
  EXPECT_TRUE(find_isomorphism(gh, cyclic(6)).has_value());

  FiniteGroup s3 = symmetric(3);
  Wreath z7wr(cyclic(7), coset_action(subgroup_of_order(s3, 3)));
  EXPECT_EQ(z7wr.points(), 2u);
  FiniteGroup big = z7wr.realize();
  EXPECT_EQ(big.order(), 294u);
  EXPECT_EQ(oracle::closure(big.degree(), [&] {
              std::vector<Perm> g;
              for (Elem s : big.generators()) g.push_back(big.perm_copy(s));
              return g;
            }()).size(),
            294u);
  Bounds b;
  b.enumeration = 100;
  EXPECT_THROW(z7wr.realize(b), Undecided);
}

TEST(Wreath, TwistAndRealizationContracts) {
  std::mt19937 rng(5);
  FiniteGroup s3 = symmetric(3);
  Wreath w(cyclic(4), coset_action(subgroup_of_order(s3, 2)));
  auto rand_elem = [&] {
    WreathElement x;
    for (Point v = 0; v < w.points(); ++v) x.f.push_back(rng() % 4);
    x.top = rng() % 6;
    return x;
  };
  for (int i = 0; i < 200; ++i) {
    WreathElement a = rand_elem(), b = rand_elem();
    EXPECT_EQ(w.to_perm(w.mul(a, b)), perm_mul(w.to_perm(a), w.to_perm(b)));
    EXPECT_EQ(w.from_perm(w.to_perm(a)), a);
    EXPECT_EQ(w.mul(a, w.inv(a)), w.identity());
    // h^-1 (f,1) h = (f^h, 1), and f^h(x) = f(x^{h^-1}).
    WreathElement h = w.top_element(a.top);
    WreathElement t = w.mul(w.mul(w.inv(h), w.base_element(b.f)), h);
    EXPECT_EQ(t, w.base_element(w.twist(b.f, a.top)));
    for (Point x = 0; x < w.points(); ++x)
      EXPECT_EQ(w.twist(b.f, a.top)[x], b.f[w.action().act(x, s3.inv(a.top))]);
  }
}

TEST(Wreath, CosetActions) {
  FiniteGroup s3 = symmetric(3);
  GroupAction a = coset_action(subgroup_of_order(s3, 3));
  EXPECT_EQ(a.degree(), 2u);
  EXPECT_EQ(a.kernel().order(), 3u);
  EXPECT_TRUE(a.is_transitive());
  Subgroup two = subgroup_of_order(s3, 2);
  GroupAction c = coset_action(two);
  EXPECT_EQ(c.degree(), 3u);
  EXPECT_TRUE(c.is_faithful());
  EXPECT_TRUE(c.stabilizer(0) == two);
  GroupAction r = coset_action(Subgroup::trivial(cyclic(4)));
  EXPECT_EQ(r.degree(), 4u);
  EXPECT_TRUE(r.is_faithful());
  EXPECT_THROW(GroupAction(cyclic(3), 2, {Perm{1, 0}}), InvalidArgument);
}

TEST(Wreath, StandardEmbeddingExamples) {
  FiniteGroup z4 = cyclic(4);
  GroupAction a = coset_action(subgroup_of_order(z4, 2));
  StandardEmbedding e(a, default_transversal(a));
  EXPECT_TRUE(e.verify());
  FiniteGroup w = e.wreath().realize();
  EXPECT_EQ(w.order(), 8u);
  Homomorphism h = realize(e, w);
  EXPECT_TRUE(h.is_injective());
  EXPECT_TRUE(oracle::is_hom_all_pairs(h));

  GroupAction reg = coset_action(Subgroup::trivial(symmetric(3)));
  StandardEmbedding er(reg, default_transversal(reg));
  EXPECT_TRUE(er.verify());
  EXPECT_EQ(er.stabilizer().order(), 1u);
  for (Elem g = 0; g < 6; ++g) {
    for (Elem y : er.tuple(g)) EXPECT_EQ(y, 0u);
    EXPECT_EQ(er(g).top, reg.image_map()(g));
  }

  FiniteGroup s3 = symmetric(3);
  GroupAction on3 = coset_action(subgroup_of_order(s3, 2));
  StandardEmbedding e3(on3, default_transversal(on3));
  EXPECT_TRUE(e3.verify());
  EXPECT_EQ(e3.wreath().order(), std::optional<std::size_t>(48));
  EXPECT_TRUE(realize(e3, e3.wreath().realize()).is_injective());

  PermutationTransversal bad = default_transversal(on3);
  bad.reps[1] = bad.reps[2];
  EXPECT_THROW(StandardEmbedding(on3, bad), InvalidArgument);
}

TEST(Wreath, EmbeddingConjugators) {
  FiniteGroup z4 = cyclic(4);
  GroupAction a = coset_action(subgroup_of_order(z4, 2));
  PermutationTransversal t = default_transversal(a);
  StandardEmbedding e(a, t);
  auto same = embedding_conjugator(e, e);
  for (Elem y : same) EXPECT_EQ(y, 0u);

  PermutationTransversal s = t;
  for (Elem g = z4.order(); g-- > 0;)
    if (a.act(0, g) == 1) {
      s.reps[1] = g;
      break;
    }
  ASSERT_NE(s.reps[1], t.reps[1]);
  StandardEmbedding l(a, s);
  auto f = embedding_conjugator(e, l);
  EXPECT_NE(f[1], 0u);
  EXPECT_TRUE(verify_conjugator(e, l, f));
  EXPECT_FALSE(verify_conjugator(e, l, same));

  FiniteGroup s3 = symmetric(3);
  GroupAction on3 = coset_action(subgroup_of_order(s3, 2));
  PermutationTransversal t3 = default_transversal(on3), s3t = t3;
  for (Elem g = 0; g < 6; ++g)
    if (on3.act(0, g) == 2 && g != t3.reps[2]) s3t.reps[2] = g;
  StandardEmbedding i3(on3, t3), l3(on3, s3t);
  auto f3 = embedding_conjugator(i3, l3);
  EXPECT_EQ(std::count_if(f3.begin(), f3.end(), [](Elem y) { return y != 0; }), 1);
  EXPECT_TRUE(verify_conjugator(i3, l3, f3));
}

TEST(Wreath, HomomorphismsOfWreaths) {
  FiniteGroup z4 = cyclic(4), z2 = cyclic(2);
  GroupAction act = regular_z2();
  std::vector<Point> id_phi{0, 1};
  auto id_psi = Homomorphism::identity(act.group());

  Wreath w4(z4, act), w2(z2, act);
  FiniteGroup r4 = w4.realize(), r2 = w2.realize();
  EXPECT_EQ(r4.order(), 32u);
  WreathMap ident = wreath_of_homomorphisms(Homomorphism::identity(z4), w4, w4, id_phi, id_psi);
  EXPECT_TRUE(ident.realize(r4, r4).is_identity());

  auto mod2 = Homomorphism::from_images(z4, z2, std::vector<Elem>{z2.generators()[0]});
  WreathMap m = wreath_of_homomorphisms(mod2, w4, w2, id_phi, id_psi);
  Homomorphism mr = m.realize(r4, r2);
  EXPECT_TRUE(m.is_surjective());
  EXPECT_TRUE(mr.is_surjective());
  EXPECT_TRUE(oracle::is_hom_all_pairs(mr));

  auto emb = Homomorphism::from_images(z2, z4, std::vector<Elem>{z4.pow(z4.generators()[0], 2)});
  WreathMap e = wreath_of_homomorphisms(emb, w2, w4, id_phi, id_psi);
  EXPECT_FALSE(e.is_surjective());
  EXPECT_FALSE(e.realize(r2, r4).is_surjective());

  // Swapping points against the identity psi breaks nothing for a regular
  // Z2, but a non-equivariant phi on S3's three points is rejected.
  FiniteGroup s3 = symmetric(3);
  GroupAction on3 = coset_action(subgroup_of_order(s3, 2));
  Wreath w3(z2, on3);
  EXPECT_THROW(wreath_of_homomorphisms(Homomorphism::identity(z2), w3, w3, {1, 0, 2},
                                       Homomorphism::identity(s3)),
               InvalidArgument);
}

TEST(Wreath, RandomEmbeddingsAreInjectiveAndConjugate) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    GroupAction a = rnd::random_transitive_action(rng, 8);
    Point w = rng() % a.degree();
    StandardEmbedding e(a, rnd::random_transversal(rng, a, w));
    StandardEmbedding l(a, rnd::random_transversal(rng, a, w));
    EXPECT_TRUE(e.verify());
    EXPECT_TRUE(l.verify());
    EXPECT_TRUE(verify_conjugator(e, l, embedding_conjugator(e, l)));
  }
}

namespace {

Homomorphism example_theta() {
  FiniteGroup f21 = group_from_name("F21"), s3 = symmetric(3);
  return rnd::hom_with_image(f21, s3, 3);
}

}  // namespace

TEST(Hybrid, ExampleF21S3) {
  HybridWreath hw = hybrid_wreath(example_theta());
  EXPECT_TRUE(hw.normal);
  EXPECT_EQ(hw.points(), 2u);
  EXPECT_EQ(hw.carrier.order(), 294u);
  EXPECT_EQ(hw.kernel.order(), 49u);
  EXPECT_TRUE(is_elementary_abelian(hw.kernel.group()));
  EXPECT_EQ(hw.base.order(), 147u);
  EXPECT_TRUE(hw.kernel.is_normal());
  EXPECT_TRUE(hw.base.is_normal());
  EXPECT_TRUE(hw.kernel.subset_of(hw.base));

  // BW = {(x, y) : theta(x) = theta(y)^-1}, a proper subdirect subgroup of G^2.
  const FiniteGroup& G = hw.g();
  const FiniteGroup& H = hw.h();
  std::size_t count = 0;
  for (Elem x = 0; x < G.order(); ++x)
    for (Elem y = 0; y < G.order(); ++y) {
      bool in = hw.find({{x, y}, 0}).has_value();
      EXPECT_EQ(in, hw.theta(x) == H.inv(hw.theta(y)));
      count += in;
    }
  EXPECT_EQ(count, 147u);
  for (const auto& p : evaluation_maps(hw)) EXPECT_TRUE(p.is_surjective());
  // iota(a) = (a, a^-1; id) for the transversal {1, b}.
  Elem a = hw.theta_image.generators()[0];
  EXPECT_EQ(hw.iota.tuple(a), (std::vector<Elem>{a, H.inv(a)}));
}

TEST(Hybrid, DegenerateThetas) {
  FiniteGroup s3 = symmetric(3);
  HybridWreath iso = hybrid_wreath(Homomorphism::identity(s3));
  EXPECT_EQ(iso.points(), 1u);
  EXPECT_EQ(iso.carrier.order(), 6u);
  EXPECT_TRUE(find_isomorphism(iso.carrier, s3).has_value());
  auto ev = evaluation_maps(iso);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_TRUE(ev[0].is_bijective());

  FiniteGroup z2 = cyclic(2), z3 = cyclic(3);
  HybridWreath triv = hybrid_wreath(Homomorphism::trivial(z2, z3));
  EXPECT_EQ(triv.points(), 3u);
  EXPECT_EQ(triv.carrier.order(), 24u);  // full Z2 wr Z3
  EXPECT_EQ(triv.wreath.order(), std::optional<std::size_t>(24));
}

TEST(Hybrid, EvaluationsOfZ4OverKlein) {
  FiniteGroup z4 = cyclic(4), k = group_from_name("Z2xZ2");
  HybridWreath hw = hybrid_wreath(rnd::hom_with_image(z4, k, 2));
  EXPECT_EQ(hw.points(), 2u);
  EXPECT_EQ(hw.carrier.order(), 16u);
  EXPECT_EQ(hw.base.order(), 8u);
  for (const auto& p : evaluation_maps(hw)) EXPECT_TRUE(p.is_surjective());
}

TEST(Hybrid, BaseSubgroupIsALimit) {
  HybridWreath hw = hybrid_wreath(example_theta());
  BwLimit bl = bw_as_limit(hw);
  EXPECT_EQ(bl.limit.group.order(), 147u);
  EXPECT_TRUE(verify_bw_limit(hw, bl));

  HybridWreath iso = hybrid_wreath(Homomorphism::identity(cyclic(5)));
  BwLimit bi = bw_as_limit(iso);
  EXPECT_EQ(bi.limit.group.order(), 5u);
  EXPECT_TRUE(verify_bw_limit(iso, bi));

  FiniteGroup s3 = symmetric(3);
  Subgroup two = subgroup_of_order(s3, 2);
  HybridWreath nn = hybrid_wreath(two.inclusion());
  EXPECT_FALSE(nn.normal);
  EXPECT_THROW(bw_as_limit(nn), InvalidArgument);
  EXPECT_THROW(evaluation_maps(nn), InvalidArgument);
}

TEST(Hybrid, TransversalIndependence) {
  Homomorphism theta = example_theta();
  HybridWreath a = hybrid_wreath(theta);
  EXPECT_TRUE(verify_transversal_conjugator(a, a, transversal_independence(a, a)));
  for (Elem y : transversal_independence(a, a)) EXPECT_EQ(y, 0u);

  // Representative ab instead of b for the second coset.
  PermutationTransversal t = a.iota.transversal();
  const FiniteGroup& H = a.h();
  t.reps[1] = H.mul(a.theta_image.generators()[0], t.reps[1]);
  HybridWreath b = hybrid_wreath(theta, {}, t);
  auto x = transversal_independence(a, b);
  EXPECT_NE(x[1], 0u);
  EXPECT_TRUE(verify_transversal_conjugator(a, b, x));

  HybridWreath iso = hybrid_wreath(Homomorphism::identity(cyclic(3)));
  EXPECT_EQ(transversal_independence(iso, iso), (std::vector<Elem>{0}));
}

TEST(Hybrid, RandomNormalHybrids) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Homomorphism theta = rnd::random_normal_hybrid_theta(rng);
    HybridWreath hw = hybrid_wreath(theta);
    std::size_t k = kernel(theta).order(), expect = theta.target().order();
    for (std::size_t i = 0; i < hw.points(); ++i) expect *= k;
    EXPECT_EQ(hw.carrier.order(), expect);
    // 1 <= ker p <= BW <= HW with BW/ker ~ theta(G) and HW/BW ~ H/theta(G).
    EXPECT_TRUE(hw.kernel.is_normal() && hw.base.is_normal());
    EXPECT_EQ(hw.base.order() / hw.kernel.order(), hw.theta_image.order());
    EXPECT_EQ(hw.carrier.order() / hw.base.order(), hw.theta_image.index());
    BwLimit bl = bw_as_limit(hw);
    EXPECT_TRUE(verify_bw_limit(hw, bl));
    PermutationTransversal t = rnd::random_transversal(rng, hw.omega, 0);
    HybridWreath other = hybrid_wreath(theta, {}, t);
    EXPECT_TRUE(verify_transversal_conjugator(hw, other, transversal_independence(hw, other)));
  }
}
