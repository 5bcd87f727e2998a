// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/hybrid.hpp"

namespace cw {

namespace {

// pre[y] = least g with theta(g) = y, for y in theta(G).
std::vector<Elem> preimages(const Homomorphism& theta) {
  std::vector<Elem> pre(theta.target().order(), kNoElem);
  for (Elem g = 0; g < theta.source().order(); ++g)
    if (pre[theta(g)] == kNoElem) pre[theta(g)] = g;
  return pre;
}

std::vector<Elem> iota_key(const std::vector<Elem>& tuple, Elem top) {
  std::vector<Elem> k = tuple;
  k.push_back(top);
  return k;
}

}  // namespace

std::optional<Elem> HybridWreath::find(const WreathElement& x) const {
  if (!standard_value(x)) return std::nullopt;
  return carrier.find(wreath.to_perm(x));
}

std::optional<Elem> HybridWreath::standard_value(const WreathElement& x) const {
  CW_REQUIRE(x.f.size() == points(), "hybrid: tuple has wrong length");
  std::vector<Elem> key;
  for (Elem y : x.f) key.push_back(theta(y));
  key.push_back(x.top);
  auto it = iota_index->find(key);
  if (it == iota_index->end()) return std::nullopt;
  return it->second;
}

HybridWreath hybrid_wreath(const Homomorphism& theta, const Bounds& bounds,
                           std::optional<PermutationTransversal> transversal) {
  HybridWreath hw;
  hw.theta = theta;
  const FiniteGroup& G = theta.source();
  const FiniteGroup& H = theta.target();
  hw.theta_image = image(theta);
  hw.normal = hw.theta_image.is_normal();
  hw.omega = coset_action(hw.theta_image);
  const std::size_t n = hw.omega.degree();

  Subgroup ker = cw::kernel(theta);
  unsigned __int128 expected = H.order();
  for (std::size_t i = 0; i < n; ++i) {
    expected *= ker.order();
    if (expected > bounds.enumeration)
      throw Undecided("hybrid wreath product order exceeds enumeration bound " +
                      std::to_string(bounds.enumeration));
  }

  PermutationTransversal t = transversal ? *transversal : default_transversal(hw.omega, 0);
  CW_REQUIRE(t.basepoint == 0, "hybrid: transversal must be based at the coset theta(G)");
  hw.iota = StandardEmbedding(hw.omega, t);
  hw.wreath = Wreath(G, GroupAction::natural(hw.omega.image_map().target()));

  auto index = std::make_shared<std::map<std::vector<Elem>, Elem>>();
  for (Elem h = 0; h < H.order(); ++h)
    index->emplace(iota_key(hw.iota.tuple(h), hw.omega.image_map()(h)), h);
  hw.iota_index = index;

  // Lifts of iota on generators, plus the kernel at every coordinate.
  std::vector<Elem> pre = preimages(theta);
  std::vector<WreathElement> gens;
  for (Elem s : H.generators()) {
    WreathElement x;
    for (Elem y : hw.iota.tuple(s)) x.f.push_back(pre[y]);
    x.top = hw.omega.image_map()(s);
    gens.push_back(std::move(x));
  }
  for (Point v = 0; v < n; ++v)
    for (Elem k : ker.generators()) {
      WreathElement x = hw.wreath.identity();
      x.f[v] = k;
      gens.push_back(std::move(x));
    }
  hw.carrier = hw.wreath.generated(gens, bounds, "HW(" + G.label() + "," + H.label() + ")");
  CW_ASSERT(hw.carrier.order() == static_cast<std::size_t>(expected),
            "hybrid: carrier order differs from |H| |ker theta|^n");

  std::vector<Elem> table(hw.carrier.order());
  for (Elem e = 0; e < table.size(); ++e) {
    auto h = hw.standard_value(hw.element(e));
    CW_ASSERT(h.has_value(), "hybrid: carrier element outside theta~^-1(iota(H))");
    table[e] = *h;
  }
  hw.standard_map = Homomorphism::from_table(hw.carrier, H, std::move(table), "p_theta");
  CW_ASSERT(hw.standard_map.is_surjective(), "hybrid: standard map is not surjective");
  hw.kernel = cw::kernel(hw.standard_map);
  hw.base = preimage(hw.standard_map, hw.theta_image);
  return hw;
}

std::vector<Homomorphism> evaluation_maps(const HybridWreath& hw) {
  CW_REQUIRE(hw.normal, "evaluation maps: hybrid wreath product is not normal");
  const FiniteGroup& bw = hw.base.group();
  std::vector<Homomorphism> out;
  std::vector<WreathElement> elems;
  for (Elem e = 0; e < bw.order(); ++e) {
    elems.push_back(hw.element(hw.base.to_parent(e)));
    CW_ASSERT(elems.back().top == 0, "evaluation maps: base element with nontrivial top");
  }
  for (Point v = 0; v < hw.points(); ++v) {
    std::vector<Elem> t(bw.order());
    for (Elem e = 0; e < t.size(); ++e) t[e] = elems[e].f[v];
    out.push_back(Homomorphism::from_table(bw, hw.g(), std::move(t), "p_" + std::to_string(v)));
    CW_ASSERT(out.back().is_surjective(), "evaluation maps: evaluation is not surjective");
  }
  return out;
}

BwLimit bw_as_limit(const HybridWreath& hw, const Bounds& bounds) {
  CW_REQUIRE(hw.normal, "bw_as_limit: hybrid wreath product is not normal");
  const FiniteGroup& H = hw.h();
  const FiniteGroup& G = hw.g();
  const Subgroup& img = hw.theta_image;
  std::vector<Homomorphism> legs;
  for (Point v = 0; v < hw.points(); ++v) {
    Elem ti = H.inv(hw.transversal()[v]);
    std::vector<Elem> t(G.order());
    for (Elem g = 0; g < G.order(); ++g) t[g] = img.to_local(H.conj(ti, hw.theta(g)));
    legs.push_back(Homomorphism::from_table(G, img.group(), std::move(t)));
  }
  BwLimit out;
  out.limit = star_limit(img.group(), legs, bounds);

  auto evals = evaluation_maps(hw);
  const FiniteGroup& bw = hw.base.group();
  std::vector<Elem> u(bw.order());
  std::vector<Elem> tuple(hw.points() + 1);
  for (Elem e = 0; e < bw.order(); ++e) {
    tuple[0] = img.to_local(hw.standard_map(hw.base.to_parent(e)));
    for (Point v = 0; v < hw.points(); ++v) tuple[v + 1] = evals[v](e);
    auto x = out.limit.find(tuple);
    CW_ASSERT(x.has_value(), "bw_as_limit: base element is not a coherent tuple");
    u[e] = *x;
  }
  out.identification = Homomorphism::from_table(bw, out.limit.group, std::move(u), "u");
  CW_ASSERT(verify_bw_limit(hw, out), "bw_as_limit: identification failed verification");
  return out;
}

bool verify_bw_limit(const HybridWreath& hw, const BwLimit& bl) {
  const Homomorphism& u = bl.identification;
  if (!u.is_bijective()) return false;
  auto evals = evaluation_maps(hw);
  for (Elem e = 0; e < u.source().order(); ++e) {
    Elem l = u(e);
    if (bl.limit.coord(l, 0) != hw.theta_image.to_local(hw.standard_map(hw.base.to_parent(e))))
      return false;
    for (Point v = 0; v < hw.points(); ++v)
      if (bl.limit.coord(l, v + 1) != evals[v](e)) return false;
  }
  return true;
}

std::vector<Elem> transversal_independence(const HybridWreath& a, const HybridWreath& b) {
  CW_REQUIRE(a.theta.equals(b.theta), "transversal independence: different theta");
  std::vector<Elem> x1 = embedding_conjugator(a.iota, b.iota);
  std::vector<Elem> pre = preimages(a.theta);
  std::vector<Elem> x;
  for (Elem y : x1) x.push_back(pre[y]);
  CW_ASSERT(verify_transversal_conjugator(a, b, x),
            "transversal independence: conjugator failed verification");
  return x;
}

bool verify_transversal_conjugator(const HybridWreath& a, const HybridWreath& b,
                                   const std::vector<Elem>& x) {
  if (a.carrier.order() != b.carrier.order() || x.size() != a.points()) return false;
  const Wreath& w = a.wreath;
  WreathElement xe = w.base_element(x);
  WreathElement xi = w.inv(xe);
  for (Elem s : b.carrier.generators())
    if (!a.find(w.mul(w.mul(xi, b.element(s)), xe))) return false;
  return true;
}

}  // namespace cw
