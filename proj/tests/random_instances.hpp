// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Random instance generators shared by the unit and acceptance suites.

#ifndef CW_TESTS_RANDOM_INSTANCES_HPP_
#define CW_TESTS_RANDOM_INSTANCES_HPP_

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cw/construct.hpp"
#include "cw/limits.hpp"
#include "cw/search.hpp"
#include "cw/structure.hpp"
#include "cw/wreath.hpp"

namespace rnd {

using namespace cw;

inline const std::vector<std::string>& names_upto_24() {
  static const std::vector<std::string> n{
      "Z2",  "Z3",    "Z4",     "Z2xZ2", "Z5",   "Z6",    "S3",    "Z7",    "Z8",
      "Z2xZ4", "Z2^3", "D8",    "Q8",    "Z9",   "Z3xZ3", "D10",   "Z12",   "A4",
      "D12", "Q12",   "Z2xZ6", "Z2xD8", "Z4xZ4", "S3xZ3", "F21",   "S4",    "Z2xA4",
      "D24", "Z3xQ8", "Z2xZ2xS3"};
  return n;
}

inline const std::vector<std::string>& names_upto_60() {
  static const std::vector<std::string> n{
      "Z6", "S3", "D8", "Q8", "A4", "D12", "F21", "S4", "Z2xA4", "F20", "A5",
      "D20", "Z3xS3", "S3xS3", "F55", "Z5xS3", "D30", "Z4xS3", "F42", "Q16"};
  return n;
}

inline FiniteGroup pick(std::mt19937& rng, const std::vector<std::string>& names) {
  static std::map<std::string, FiniteGroup> cache;
  const std::string& n = names[rng() % names.size()];
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, group_from_name(n)).first;
  return it->second;
}

// First homomorphism g -> h with an image of the given order.
inline Homomorphism hom_with_image(const FiniteGroup& g, const FiniteGroup& h,
                                   std::size_t image_order) {
  std::optional<Homomorphism> out;
  for_each_homomorphism(g, h, [&](const Homomorphism& f) {
    if (image(f).order() != image_order) return true;
    out = f;
    return false;
  });
  if (!out) throw std::runtime_error("no such homomorphism");
  return *out;
}

// Random forest on n nodes: parent[i] < i or none (-1).
inline std::vector<long> random_forest(std::mt19937& rng, std::size_t n) {
  std::vector<long> parent(n, -1);
  for (std::size_t i = 1; i < n; ++i)
    if (rng() % 4 != 0) parent[i] = static_cast<long>(rng() % i);
  return parent;
}

inline Poset forest_poset(const std::vector<long>& parent) {
  std::vector<std::pair<Node, Node>> rel;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (parent[i] >= 0) rel.emplace_back(static_cast<Node>(parent[i]), i);
  return Poset(parent.size(), rel);
}

// A surjective system of quotients G/N_i with N_child <= N_parent, together
// with the data used to build it.
struct QuotientSystem {
  FiniteGroup g;
  std::vector<Subgroup> normals;
  std::vector<Quotient> quotients;
  InverseSystem system;
};

inline QuotientSystem system_of_quotients(const FiniteGroup& g, const Poset& poset,
                                          const std::vector<Subgroup>& normals) {
  QuotientSystem qs;
  qs.g = g;
  qs.normals = normals;
  for (const auto& n : normals) qs.quotients.push_back(quotient(n));
  std::vector<FiniteGroup> groups;
  for (const auto& q : qs.quotients) groups.push_back(q.group);
  std::vector<Transition> ts;
  for (Node i = 0; i < poset.size(); ++i)
    for (Node j = 0; j < poset.size(); ++j)
      if (poset.is_cover(i, j)) {
        std::vector<Elem> imgs;
        for (std::size_t k = 0; k < g.generators().size(); ++k)
          imgs.push_back(qs.quotients[i].map(g.generators()[k]));
        ts.push_back({i, j, Homomorphism::from_images(groups[j], groups[i], imgs)});
      }
  qs.system = InverseSystem(poset, groups, ts);
  return qs;
}

// Random normal subgroups decreasing upward along the forest.
inline std::vector<Subgroup> random_normals(std::mt19937& rng, const FiniteGroup& g,
                                            const std::vector<long>& parent) {
  auto all = normal_subgroups(g);
  std::vector<Subgroup> out(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    std::vector<Subgroup> ok;
    for (const auto& n : all)
      if (parent[i] < 0 || n.subset_of(out[parent[i]])) ok.push_back(n);
    out[i] = ok[rng() % ok.size()];
  }
  return out;
}

// Uniformly chosen representatives, identity at the basepoint.
inline PermutationTransversal random_transversal(std::mt19937& rng, const GroupAction& a,
                                                 Point basepoint) {
  std::vector<std::vector<Elem>> by_point(a.degree());
  for (Elem g = 0; g < a.group().order(); ++g) by_point[a.act(basepoint, g)].push_back(g);
  PermutationTransversal t{basepoint, {}};
  for (Point v = 0; v < a.degree(); ++v)
    t.reps.push_back(v == basepoint ? 0 : by_point[v][rng() % by_point[v].size()]);
  return t;
}

// Transitive action of a random group (order <= 60) on the cosets of a random
// subgroup of index <= max_points.
inline GroupAction random_transitive_action(std::mt19937& rng, std::size_t max_points) {
  while (true) {
    FiniteGroup g = pick(rng, names_upto_60());
    std::vector<Subgroup> ok;
    for (const auto& s : all_subgroups(g))
      if (s.index() <= max_points) ok.push_back(s);
    if (!ok.empty()) return coset_action(ok[rng() % ok.size()]);
  }
}

// theta: G -> H with normal image of index <= 3 and |ker theta| <= 8.
inline Homomorphism random_normal_hybrid_theta(std::mt19937& rng) {
  static const std::vector<std::string> small{"1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "Z2^3", "D8"};
  while (true) {
    FiniteGroup h = pick(rng, names_upto_24());
    std::vector<Subgroup> ok;
    for (const auto& n : normal_subgroups(h))
      if (n.index() <= 3) ok.push_back(n);
    const Subgroup& n = ok[rng() % ok.size()];
    if (rng() % 2 == 0) {
      FiniteGroup k = pick(rng, small);
      Product p = direct_product({n.group(), k});
      return compose(n.inclusion(), p.projections[0]);
    }
    FiniteGroup g = pick(rng, names_upto_24());
    if (g.order() % n.order() != 0 || g.order() > 8 * n.order()) continue;
    std::optional<Homomorphism> onto;
    for_each_homomorphism(g, n.group(), [&](const Homomorphism& f) {
      if (!f.is_surjective()) return true;
      onto = f;
      return false;
    });
    if (onto) return compose(n.inclusion(), *onto);
  }
}

}  // namespace rnd

#endif  // CW_TESTS_RANDOM_INSTANCES_HPP_
