// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/wreath.hpp"

#include <deque>
#include <set>

namespace cw {

namespace {
constexpr Point kUnset = 0xffffffffu;
}

GroupAction::GroupAction(FiniteGroup group, std::size_t degree, const std::vector<Perm>& images)
    : group_(std::move(group)), degree_(degree) {
  CW_REQUIRE(degree >= 1, "action: domain must be nonempty");
  const auto& gens = group_.generators();
  CW_REQUIRE(images.size() == gens.size(), "action: one image per generator required");
  for (const Perm& p : images)
    CW_REQUIRE(p.size() == degree && perm_is_valid(p), "action: generator image is not a permutation");
  table_.assign(group_.order() * degree, kUnset);
  for (Point w = 0; w < degree; ++w) table_[w] = w;
  std::deque<Elem> queue{0};
  std::vector<char> seen(group_.order(), 0);
  seen[0] = 1;
  while (!queue.empty()) {
    Elem e = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Elem e2 = group_.right_gen(e, j);
      for (Point w = 0; w < degree; ++w) {
        Point img = images[j][act(w, e)];
        Point& slot = table_[std::size_t(e2) * degree + w];
        if (slot == kUnset)
          slot = img;
        else
          CW_REQUIRE(slot == img, "action: generator images do not define an action");
      }
      if (!seen[e2]) {
        seen[e2] = 1;
        queue.push_back(e2);
      }
    }
  }
  FiniteGroup img = FiniteGroup::from_generators(degree, images, Bounds{group_.order() + 1, 0, 0, 0, 0});
  std::vector<Elem> rho(group_.order());
  for (Elem g = 0; g < group_.order(); ++g) rho[g] = img.index_of(perm_of(g));
  rho_ = std::make_shared<Homomorphism>(Homomorphism::from_table(group_, img, std::move(rho), "rho"));
}

GroupAction GroupAction::natural(const FiniteGroup& group) {
  std::vector<Perm> images;
  for (Elem s : group.generators()) images.push_back(group.perm_copy(s));
  return GroupAction(group, group.degree(), images);
}

Perm GroupAction::perm_of(Elem g) const {
  Perm p(degree_);
  for (Point w = 0; w < degree_; ++w) p[w] = act(w, g);
  return p;
}

bool GroupAction::is_transitive() const {
  std::vector<char> hit(degree_, 0);
  for (Elem g = 0; g < group_.order(); ++g) hit[act(0, g)] = 1;
  for (char c : hit)
    if (!c) return false;
  return true;
}

bool GroupAction::is_faithful() const { return image_map().is_injective(); }

Subgroup GroupAction::stabilizer(Point w) const {
  CW_REQUIRE(w < degree_, "action: point out of range");
  std::vector<Elem> m;
  for (Elem g = 0; g < group_.order(); ++g)
    if (act(w, g) == w) m.push_back(g);
  return Subgroup::from_members(group_, std::move(m));
}

Subgroup GroupAction::kernel() const { return cw::kernel(image_map()); }

const Homomorphism& GroupAction::image_map() const {
  CW_REQUIRE(rho_ != nullptr, "action: empty action");
  return *rho_;
}

std::vector<Point> right_cosets(const Subgroup& k) {
  const FiniteGroup& h = k.parent();
  std::vector<Point> coset(h.order(), kUnset);
  Point next = 0;
  for (Elem x = 0; x < h.order(); ++x) {
    if (coset[x] != kUnset) continue;
    for (Elem y : k.members()) coset[h.mul(y, x)] = next;
    ++next;
  }
  return coset;
}

GroupAction coset_action(const Subgroup& k) {
  const FiniteGroup& h = k.parent();
  std::vector<Point> coset = right_cosets(k);
  std::size_t n = k.index();
  std::vector<Elem> rep(n, kNoElem);
  for (Elem x = h.order(); x-- > 0;) rep[coset[x]] = x;
  std::vector<Perm> images;
  for (Elem s : h.generators()) {
    Perm p(n);
    for (Point c = 0; c < n; ++c) p[c] = coset[h.mul(rep[c], s)];
    images.push_back(std::move(p));
  }
  return GroupAction(h, n, images);
}

PermutationTransversal default_transversal(const GroupAction& a, Point basepoint) {
  CW_REQUIRE(basepoint < a.degree(), "transversal: basepoint out of range");
  PermutationTransversal t;
  t.basepoint = basepoint;
  t.reps.assign(a.degree(), kNoElem);
  for (Elem g = 0; g < a.group().order(); ++g) {
    Point v = a.act(basepoint, g);
    if (t.reps[v] == kNoElem) t.reps[v] = g;
  }
  for (Elem r : t.reps) CW_REQUIRE(r != kNoElem, "transversal: action is not transitive");
  return t;
}

void validate_transversal(const GroupAction& a, const PermutationTransversal& t) {
  CW_REQUIRE(t.reps.size() == a.degree(), "transversal: wrong number of representatives");
  CW_REQUIRE(t.basepoint < a.degree(), "transversal: basepoint out of range");
  CW_REQUIRE(t.reps[t.basepoint] == a.group().identity(),
             "transversal: basepoint representative must be the identity");
  for (Point v = 0; v < a.degree(); ++v) {
    CW_REQUIRE(t.reps[v] < a.group().order(), "transversal: representative out of range");
    CW_REQUIRE(a.act(t.basepoint, t.reps[v]) == v,
               "transversal: representative does not move the basepoint to its point");
  }
}

Wreath::Wreath(FiniteGroup base, GroupAction top) : base_(std::move(base)), top_(std::move(top)) {}

std::optional<std::size_t> Wreath::order() const {
  unsigned __int128 r = top().order();
  for (std::size_t i = 0; i < points(); ++i) {
    r *= base_.order();
    if (r > static_cast<unsigned __int128>(SIZE_MAX)) return std::nullopt;
  }
  return static_cast<std::size_t>(r);
}

WreathElement Wreath::identity() const { return {std::vector<Elem>(points(), 0), 0}; }

WreathElement Wreath::top_element(Elem h) const { return {std::vector<Elem>(points(), 0), h}; }

WreathElement Wreath::mul(const WreathElement& a, const WreathElement& b) const {
  WreathElement r;
  r.f.resize(points());
  for (Point v = 0; v < points(); ++v) r.f[v] = base_.mul(a.f[v], b.f[top_.act(v, a.top)]);
  r.top = top().mul(a.top, b.top);
  return r;
}

WreathElement Wreath::inv(const WreathElement& a) const {
  WreathElement r;
  r.top = top().inv(a.top);
  r.f.resize(points());
  for (Point v = 0; v < points(); ++v) r.f[v] = base_.inv(a.f[top_.act(v, r.top)]);
  return r;
}

WreathElement Wreath::conj(const WreathElement& x, const WreathElement& a) const {
  return mul(mul(x, a), inv(x));
}

std::vector<Elem> Wreath::twist(const std::vector<Elem>& f, Elem h) const {
  Elem hi = top().inv(h);
  std::vector<Elem> r(points());
  for (Point w = 0; w < points(); ++w) r[w] = f[top_.act(w, hi)];
  return r;
}

std::size_t Wreath::degree() const { return points() * base_.degree() + top().degree(); }

Perm Wreath::to_perm(const WreathElement& x) const {
  CW_REQUIRE(x.f.size() == points(), "wreath: tuple has wrong length");
  const std::size_t d = base_.degree();
  Perm p(degree());
  for (Point v = 0; v < points(); ++v) {
    auto g = base_.perm(x.f[v]);
    std::size_t to = std::size_t(top_.act(v, x.top)) * d;
    for (std::size_t i = 0; i < d; ++i) p[v * d + i] = static_cast<Point>(to + g[i]);
  }
  auto h = top().perm(x.top);
  std::size_t off = points() * d;
  for (std::size_t i = 0; i < h.size(); ++i) p[off + i] = static_cast<Point>(off + h[i]);
  return p;
}

WreathElement Wreath::from_perm(std::span<const Point> p) const {
  CW_REQUIRE(p.size() == degree(), "wreath: permutation has wrong degree");
  const std::size_t d = base_.degree();
  std::size_t off = points() * d;
  Perm h(top().degree());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = static_cast<Point>(p[off + i] - off);
  WreathElement x;
  x.top = top().index_of(h);
  x.f.resize(points());
  Perm g(d);
  for (Point v = 0; v < points(); ++v) {
    std::size_t to = std::size_t(top_.act(v, x.top)) * d;
    for (std::size_t i = 0; i < d; ++i) g[i] = static_cast<Point>(p[v * d + i] - to);
    x.f[v] = base_.index_of(g);
  }
  return x;
}

FiniteGroup Wreath::generated(const std::vector<WreathElement>& gens, const Bounds& bounds,
                              std::string label) const {
  std::vector<Perm> perms;
  for (const auto& x : gens) perms.push_back(to_perm(x));
  return FiniteGroup::from_generators(degree(), perms, bounds, std::move(label));
}

FiniteGroup Wreath::realize(const Bounds& bounds) const {
  auto n = order();
  if (!n || *n > bounds.enumeration)
    throw Undecided("wreath product order exceeds enumeration bound " +
                    std::to_string(bounds.enumeration));
  std::vector<WreathElement> gens;
  for (Point v = 0; v < points(); ++v)
    for (Elem s : base_.generators()) {
      WreathElement x = identity();
      x.f[v] = s;
      gens.push_back(std::move(x));
    }
  for (Elem s : top().generators()) gens.push_back(top_element(s));
  return generated(gens, bounds, base_.label() + " wr " + top().label());
}

StandardEmbedding::StandardEmbedding(GroupAction action, PermutationTransversal transversal)
    : action_(std::move(action)), transversal_(std::move(transversal)) {
  CW_REQUIRE(action_.is_transitive(), "standard embedding: action is not transitive");
  validate_transversal(action_, transversal_);
  stab_ = action_.stabilizer(transversal_.basepoint);
  wreath_ = Wreath(stab_.group(), GroupAction::natural(action_.image_map().target()));
}

std::vector<Elem> StandardEmbedding::tuple(Elem g) const {
  const FiniteGroup& G = action_.group();
  const auto& t = transversal_.reps;
  std::vector<Elem> f(action_.degree());
  for (Point v = 0; v < f.size(); ++v) {
    f[v] = G.mul(G.mul(t[v], g), G.inv(t[action_.act(v, g)]));
    CW_ASSERT(stab_.contains(f[v]), "standard embedding: coordinate leaves the stabilizer");
  }
  return f;
}

WreathElement StandardEmbedding::operator()(Elem g) const {
  WreathElement x;
  for (Elem y : tuple(g)) x.f.push_back(stab_.to_local(y));
  x.top = action_.image_map()(g);
  return x;
}

bool StandardEmbedding::verify() const {
  const FiniteGroup& G = action_.group();
  std::vector<WreathElement> img;
  std::set<std::vector<Elem>> seen;
  for (Elem g = 0; g < G.order(); ++g) {
    img.push_back((*this)(g));
    std::vector<Elem> key = img.back().f;
    key.push_back(img.back().top);
    if (!seen.insert(std::move(key)).second) return false;
  }
  for (Elem g = 0; g < G.order(); ++g)
    for (std::size_t j = 0; j < G.generators().size(); ++j)
      if (wreath_.mul(img[g], img[G.generators()[j]]) != img[G.right_gen(g, j)]) return false;
  return true;
}

std::vector<Elem> embedding_conjugator(const StandardEmbedding& iota,
                                       const StandardEmbedding& lambda) {
  const GroupAction& a = iota.action();
  CW_REQUIRE(a.group().same_as(lambda.action().group()) && a.degree() == lambda.action().degree(),
             "embedding conjugator: embeddings use different actions");
  for (Point v = 0; v < a.degree(); ++v)
    for (Elem s : a.group().generators())
      CW_REQUIRE(a.act(v, s) == lambda.action().act(v, s),
                 "embedding conjugator: embeddings use different actions");
  CW_REQUIRE(iota.transversal().basepoint == lambda.transversal().basepoint,
             "embedding conjugator: basepoints differ");
  const FiniteGroup& G = a.group();
  std::vector<Elem> f(a.degree());
  for (Point v = 0; v < f.size(); ++v)
    f[v] = G.mul(lambda.transversal().reps[v], G.inv(iota.transversal().reps[v]));
  return f;
}

bool verify_conjugator(const StandardEmbedding& iota, const StandardEmbedding& lambda,
                       const std::vector<Elem>& f) {
  const Wreath& w = iota.wreath();
  if (f.size() != w.points()) return false;
  WreathElement x = w.identity();
  for (Point v = 0; v < f.size(); ++v) {
    if (!iota.stabilizer().contains(f[v])) return false;
    x.f[v] = iota.stabilizer().to_local(f[v]);
  }
  for (Elem g = 0; g < iota.action().group().order(); ++g)
    if (w.conj(x, iota(g)) != lambda(g)) return false;
  return true;
}

WreathMap::WreathMap(Homomorphism eta, Wreath source, Wreath target, std::vector<Point> phi,
                     Homomorphism psi)
    : eta_(std::move(eta)),
      src_(std::move(source)),
      dst_(std::move(target)),
      phi_(std::move(phi)),
      psi_(std::move(psi)) {
  CW_REQUIRE(eta_.source().same_as(src_.base()) && eta_.target().same_as(dst_.base()),
             "wreath map: eta does not match the base groups");
  CW_REQUIRE(psi_.source().same_as(src_.top()) && psi_.target().same_as(dst_.top()),
             "wreath map: psi does not match the top groups");
  CW_REQUIRE(psi_.is_bijective(), "wreath map: psi is not an isomorphism");
  const std::size_t n = src_.points();
  CW_REQUIRE(phi_.size() == n && dst_.points() == n, "wreath map: phi is not a bijection");
  phi_inv_.assign(n, kUnset);
  for (Point w = 0; w < n; ++w) {
    CW_REQUIRE(phi_[w] < n && phi_inv_[phi_[w]] == kUnset, "wreath map: phi is not a bijection");
    phi_inv_[phi_[w]] = w;
  }
  for (Elem h = 0; h < src_.top().order(); ++h)
    for (Point w = 0; w < n; ++w)
      CW_REQUIRE(phi_[src_.action().act(w, h)] == dst_.action().act(phi_[w], psi_(h)),
                 "wreath map: (phi, psi) is not an action isomorphism");
}

WreathElement WreathMap::operator()(const WreathElement& x) const {
  WreathElement r;
  r.f.resize(dst_.points());
  for (Point g = 0; g < r.f.size(); ++g) r.f[g] = eta_(x.f[phi_inv_[g]]);
  r.top = psi_(x.top);
  return r;
}

Homomorphism WreathMap::realize(const FiniteGroup& source_group,
                                const FiniteGroup& target_group) const {
  std::vector<Elem> t(source_group.order());
  for (Elem e = 0; e < t.size(); ++e)
    t[e] = target_group.index_of(dst_.to_perm((*this)(src_.from_perm(source_group.perm(e)))));
  return Homomorphism::from_table(source_group, target_group, std::move(t), "wr");
}

WreathMap wreath_of_homomorphisms(const Homomorphism& eta, const Wreath& source,
                                  const Wreath& target, const std::vector<Point>& phi,
                                  const Homomorphism& psi) {
  return WreathMap(eta, source, target, phi, psi);
}

}  // namespace cw
