// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cw/construct.hpp"
#include "cw/limits.hpp"
#include "cw/poset.hpp"
#include "cw/search.hpp"
#include "oracle.hpp"
#include "random_instances.hpp"

using namespace cw;

namespace {

Homomorphism mod2(const FiniteGroup& z4, const FiniteGroup& z2) {
  return Homomorphism::from_images(z4, z2, std::vector<Elem>{z2.generators()[0]});
}

struct Z4Star {
  FiniteGroup z4 = cyclic(4);
  FiniteGroup z2 = cyclic(2);
  InverseSystem sys;
  Z4Star() {
    sys = InverseSystem(Poset::star(2), {z2, z4, z4},
                        {{0, 1, mod2(z4, z2)}, {0, 2, mod2(z4, z2)}});
  }
};


}  // namespace

TEST(Poset, Examples) {
  Poset c = Poset::chain(3);
  EXPECT_EQ(c.downset(2), (std::vector<Node>{0, 1, 2}));
  EXPECT_TRUE(c.is_in_forest());
  EXPECT_EQ(c.rank(0), 0u);
  EXPECT_EQ(c.rank(2), 2u);
  EXPECT_EQ(c.meet(1, 2), std::optional<Node>(1));

  Poset s = Poset::star(2);
  EXPECT_TRUE(s.is_in_forest());
  EXPECT_EQ(s.rank(0), 0u);
  EXPECT_EQ(s.rank(1), 1u);
  EXPECT_EQ(s.meet(1, 2), std::optional<Node>(0));

  Poset co(3, {{0, 2}, {1, 2}});
  EXPECT_FALSE(co.is_in_forest());
  EXPECT_THROW(co.rank(2), InvalidArgument);

  Poset two(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(two.rank(1), 1u);
  EXPECT_EQ(two.rank(3), 1u);
  EXPECT_FALSE(two.meet(1, 3).has_value());
  EXPECT_THROW(two.downset(9), InvalidArgument);
  EXPECT_THROW(Poset(2, {{0, 1}, {1, 0}}), InvalidArgument);
}

TEST(Poset, RankAndMeetLawsOnRandomForests) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 8;
    Poset p = rnd::forest_poset(rnd::random_forest(rng, n));
    ASSERT_TRUE(p.is_in_forest());
    for (Node i = 0; i < n; ++i)
      for (Node j = 0; j < n; ++j) {
        if (p.leq(i, j)) EXPECT_LE(p.rank(i), p.rank(j));
        if (p.is_cover(i, j)) EXPECT_EQ(p.rank(j), p.rank(i) + 1);
      }
    // i <= j: either i^k = i or i^k = j^k, and existence agrees.
    for (Node i = 0; i < n; ++i)
      for (Node j = 0; j < n; ++j) {
        if (!p.leq(i, j)) continue;
        for (Node k = 0; k < n; ++k) {
          auto ik = p.meet(i, k), jk = p.meet(j, k);
          EXPECT_EQ(ik.has_value(), jk.has_value());
          if (ik) EXPECT_TRUE(*ik == i || *ik == *jk);
        }
      }
  }
}

TEST(Limits, Z4StarHasOrder8) {
  Z4Star s;
  LimitGroup lim = limit(s.sys);
  EXPECT_EQ(lim.group.order(), 8u);
  EXPECT_EQ(oracle::count_coherent(s.sys), 8u);
  for (Elem e = 0; e < lim.group.order(); ++e)
    EXPECT_EQ(s.sys.map(0, 1)(lim.coord(e, 1)), s.sys.map(0, 2)(lim.coord(e, 2)));
  for (Node i = 0; i < 3; ++i) EXPECT_TRUE(lim.projections[i].is_surjective());
}

TEST(Limits, IdentityTransitionsGiveTheGroup) {
  FiniteGroup s3 = symmetric(3);
  auto id = Homomorphism::identity(s3);
  InverseSystem sys(Poset::chain(3), {s3, s3, s3}, {{0, 1, id}, {1, 2, id}});
  LimitGroup lim = limit(sys);
  EXPECT_EQ(lim.group.order(), 6u);
  EXPECT_TRUE(find_isomorphism(lim.group, s3).has_value());
}

TEST(Limits, SignCompatiblePairsHaveOrder18) {
  FiniteGroup z6 = cyclic(6), s3 = symmetric(3), z2 = cyclic(2);
  auto to_z2 = [&](const FiniteGroup& g) {
    Subgroup d = Subgroup::generated(g, std::vector<Elem>{});
    for (const auto& n : normal_subgroups(g))
      if (n.order() == 3) d = n;
    Quotient q = quotient(d);
    auto iso = find_isomorphism(q.group, z2);
    return compose(*iso, q.map);
  };
  LimitGroup lim = star_limit(z2, {to_z2(z6), to_z2(s3)});
  EXPECT_EQ(lim.group.order(), 18u);
  EXPECT_EQ(oracle::count_coherent(lim.system), 18u);
}

TEST(Limits, MorphismValidationAndUndecided) {
  Z4Star s;
  Bounds b;
  b.enumeration = 5;
  EXPECT_THROW(limit(s.sys, b), Undecided);
  // Non-commuting level maps are rejected.
  FiniteGroup z4 = s.z4;
  Elem g = z4.generators()[0];
  auto triple = Homomorphism::from_images(z4, z4, std::vector<Elem>{z4.pow(g, 3)});
  auto bad = Homomorphism::trivial(z4, z4);
  EXPECT_THROW(SystemMorphism(s.sys, s.sys, {Homomorphism::identity(s.z2), triple, bad}),
               InvalidArgument);
}

TEST(Limits, SubsystemLimits) {
  Z4Star s;
  LimitGroup lim = limit(s.sys);
  EXPECT_EQ(subsystem_limit(lim, Subsystem::full(s.sys)).order(), 8u);
  EXPECT_EQ(subsystem_limit(lim, Subsystem::trivial(s.sys)).order(), 1u);
  Elem two = s.z4.pow(s.z4.generators()[0], 2);
  Subgroup twoz4 = Subgroup::generated(s.z4, std::vector<Elem>{two});
  Subsystem y{{Subgroup::whole(s.z2), twoz4, twoz4}};
  EXPECT_EQ(subsystem_limit(lim, y).order(), 4u);
  Subsystem broken{{Subgroup::trivial(s.z2), Subgroup::whole(s.z4), twoz4}};
  EXPECT_THROW(subsystem_limit(lim, broken), InvalidArgument);
}

TEST(Limits, KernelAndPreimageSystems) {
  Z4Star s;
  SystemMorphism id(s.sys, s.sys,
                    {Homomorphism::identity(s.z2), Homomorphism::identity(s.z4),
                     Homomorphism::identity(s.z4)});
  Subsystem k = kernel_system(id);
  for (const auto& n : k.nodes) EXPECT_EQ(n.order(), 1u);

  FiniteGroup z2 = s.z2;
  auto idz2 = Homomorphism::identity(z2);
  InverseSystem z2star(Poset::star(2), {z2, z2, z2}, {{0, 1, idz2}, {0, 2, idz2}});
  SystemMorphism m(s.sys, z2star, {idz2, mod2(s.z4, z2), mod2(s.z4, z2)});
  Subsystem km = kernel_system(m);
  EXPECT_EQ(km.nodes[0].order(), 1u);
  EXPECT_EQ(km.nodes[1].order(), 2u);
  EXPECT_EQ(km.nodes[2].order(), 2u);
  Subsystem pre = preimage_system(m, Subsystem::full(z2star));
  for (Node i = 0; i < 3; ++i) EXPECT_TRUE(pre.nodes[i].is_whole());
}

TEST(Limits, LimitOfMorphisms) {
  Z4Star s;
  LimitGroup lim = limit(s.sys);
  SystemMorphism id(s.sys, s.sys,
                    {Homomorphism::identity(s.z2), Homomorphism::identity(s.z4),
                     Homomorphism::identity(s.z4)});
  EXPECT_TRUE(limit_of_morphism(id, lim, lim).is_identity());
  Elem g = s.z4.generators()[0];
  auto times3 = Homomorphism::from_images(s.z4, s.z4, std::vector<Elem>{s.z4.pow(g, 3)});
  SystemMorphism m3(s.sys, s.sys, {Homomorphism::identity(s.z2), times3, times3});
  Homomorphism l3 = limit_of_morphism(m3, lim, lim);
  EXPECT_TRUE(oracle::is_bijective_table(l3));
  EXPECT_TRUE(oracle::is_hom_all_pairs(l3));
}

TEST(Limits, SectionOfSetSystems) {
  SetSystem single{Poset::chain(2), {1, 1}, {{0, 1, {0}}}};
  EXPECT_EQ(section_of_set_system(single), (std::vector<std::size_t>{0, 0}));

  Z4Star s;
  SetSystem star{Poset::star(2), {2, 4, 4}, {}};
  for (Node leaf : {1u, 2u}) {
    SetSystem::Map m{0, leaf, {}};
    for (Elem y = 0; y < 4; ++y) m.table.push_back(s.sys.map(0, leaf)(y));
    star.covers.push_back(m);
  }
  auto t = section_of_set_system(star);
  EXPECT_EQ(s.sys.map(0, 1)(static_cast<Elem>(t[1])), s.sys.map(0, 2)(static_cast<Elem>(t[2])));

  SetSystem chain{Poset::chain(3), {2, 4, 8}, {{0, 1, {0, 1, 0, 1}}, {1, 2, {0, 1, 2, 3, 0, 1, 2, 3}}}};
  auto c = section_of_set_system(chain);
  EXPECT_EQ(chain.covers[0].table[c[1]], c[0]);
  EXPECT_EQ(chain.covers[1].table[c[2]], c[1]);

  SetSystem broken{Poset::chain(2), {2, 2}, {{0, 1, {0, 0}}}};
  EXPECT_NO_THROW(section_of_set_system(broken));  // rank-0 choice 0 has a lift
  SetSystem broken2{Poset::chain(2), {2, 2}, {{0, 1, {1, 1}}}};
  EXPECT_THROW(section_of_set_system(broken2), InvalidArgument);
}

TEST(Limits, ProjectionSystems) {
  Z4Star s;
  LimitGroup lim = limit(s.sys);
  for (Node i0 = 0; i0 < 3; ++i0) {
    ProjectionSystem ps = projection_system(s.sys, i0);
    LimitGroup ly = limit(ps.system);
    Homomorphism lp = limit_of_morphism(ps.morphism, lim, ly);
    Homomorphism at = compose(ly.projections[i0], lp);
    for (Elem e = 0; e < lim.group.order(); ++e) EXPECT_EQ(at(e), lim.coord(e, i0));
    EXPECT_TRUE(lim.projections[i0].is_surjective());
    if (i0 == 1) {
      Subgroup kp = kernel(lim.projections[i0]);
      EXPECT_EQ(kp.order(), 2u);
      EXPECT_TRUE(subsystem_limit(lim, kernel_system(ps.morphism)) == kp);
    }
  }
  // Disconnected component is trivial in the projection system.
  FiniteGroup z2 = cyclic(2);
  auto idz2 = Homomorphism::identity(z2);
  InverseSystem two(Poset(4, {{0, 1}, {2, 3}}), {z2, z2, z2, z2}, {{0, 1, idz2}, {2, 3, idz2}});
  ProjectionSystem ps = projection_system(two, 1);
  EXPECT_EQ(ps.system.group(2).order(), 1u);
  EXPECT_EQ(ps.system.group(3).order(), 1u);
}

TEST(Limits, RandomPullbackCommutesAndProjectionsSurject) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto parent = rnd::random_forest(rng, n);
    Poset p = rnd::forest_poset(parent);
    FiniteGroup g = rnd::pick(rng, rnd::names_upto_24());
    auto normals = rnd::random_normals(rng, g, parent);
    auto qx = rnd::system_of_quotients(g, p, normals);
    auto all = normal_subgroups(g);
    Subgroup k = all[rng() % all.size()];
    std::vector<Subgroup> bigger;
    for (const auto& nn : normals) bigger.push_back(join(nn, k));
    auto qy = rnd::system_of_quotients(g, p, bigger);
    std::vector<Homomorphism> level;
    for (Node i = 0; i < n; ++i) {
      std::vector<Elem> imgs;
      for (Elem s : g.generators()) imgs.push_back(qy.quotients[i].map(s));
      level.push_back(Homomorphism::from_images(qx.quotients[i].group, qy.quotients[i].group, imgs));
    }
    SystemMorphism phi(qx.system, qy.system, level);
    auto subs = all_subgroups(g);
    const Subgroup& h = subs[rng() % subs.size()];
    Subsystem z;
    for (Node i = 0; i < n; ++i) z.nodes.push_back(image(qy.quotients[i].map, h));
    LimitGroup lx = limit(qx.system), ly = limit(qy.system);
    Homomorphism lphi = limit_of_morphism(phi, lx, ly);
    Subgroup lhs = subsystem_limit(lx, preimage_system(phi, z));
    Subgroup rhs = preimage(lphi, subsystem_limit(ly, z));
    EXPECT_TRUE(lhs == rhs) << "trial " << trial;
    for (Node i = 0; i < n; ++i) EXPECT_TRUE(lx.projections[i].is_surjective());
    EXPECT_EQ(lx.group.order(), oracle::count_coherent(qx.system));
  }
}
