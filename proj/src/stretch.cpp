// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/stretch.hpp"

#include <algorithm>

#include "cw/numtheory.hpp"

namespace cw {

// ---------------------------------------------------------------------------
// Stabilizer chain

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Perm>& gens)
    : degree_(degree) {
  std::vector<Perm> s;
  for (const Perm& g : gens) {
    CW_REQUIRE(g.size() == degree && perm_is_valid(g), "stabilizer chain: bad generator");
    if (!perm_is_identity(g)) s.push_back(g);
  }
  // Initial base: every generator moves some base point.
  for (const Perm& g : s) {
    bool moves = false;
    for (const Level& l : levels_) moves = moves || g[l.base] != l.base;
    if (moves) continue;
    Point b = 0;
    while (g[b] == b) ++b;
    add_level(b);
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const Perm& g : s) {
      bool fixes = true;
      for (std::size_t j = 0; j < i; ++j) fixes = fixes && g[levels_[j].base] == levels_[j].base;
      if (fixes) levels_[i].gens.push_back(g);
    }
    grow_orbit(i);
  }

  // Schreier generators at each level must sift through the levels below it.
  // Transversal entries never change once set, so a generator that sifted
  // to the identity stays done.
  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool jumped = false;
    for (std::size_t k = 0; !jumped && k < levels_[i].orbit.size(); ++k) {
      for (std::size_t t = 0; t < levels_[i].gens.size(); ++t) {
        Level& lv = levels_[i];
        if (lv.done.count({k, t})) continue;
        Point y = lv.gens[t][lv.orbit[k]];
        Perm h = perm_mul(perm_mul(lv.u[k], lv.gens[t]), lv.uinv[lv.pos[y]]);
        auto [res, j] = strip(std::move(h), i + 1);
        if (perm_is_identity(res)) {
          lv.done.insert({k, t});
          continue;
        }
        if (j == levels_.size()) {
          Point b = 0;
          while (res[b] == b) ++b;
          add_level(b);
        }
        for (std::size_t m = i + 1; m <= j; ++m) {
          levels_[m].gens.push_back(res);
          grow_orbit(m);
        }
        i = j + 1;  // resume at level j
        jumped = true;
        break;
      }
    }
  }
}

void StabilizerChain::add_level(Point base) {
  Level l;
  l.base = base;
  l.pos.assign(degree_, -1);
  l.pos[base] = 0;
  l.orbit.push_back(base);
  l.u.push_back(perm_identity(degree_));
  l.uinv.push_back(perm_identity(degree_));
  levels_.push_back(std::move(l));
}

void StabilizerChain::grow_orbit(std::size_t lvl) {
  Level& l = levels_[lvl];
  for (std::size_t k = 0; k < l.orbit.size(); ++k)
    for (const Perm& g : l.gens) {
      Point y = g[l.orbit[k]];
      if (l.pos[y] >= 0) continue;
      l.pos[y] = static_cast<std::int32_t>(l.orbit.size());
      l.orbit.push_back(y);
      l.u.push_back(perm_mul(l.u[k], g));
      l.uinv.push_back(perm_inv(l.u.back()));
    }
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm p, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& l = levels_[i];
    std::int32_t k = l.pos[p[l.base]];
    if (k < 0) return {std::move(p), i};
    p = perm_mul(p, l.uinv[k]);
  }
  return {std::move(p), levels_.size()};
}

std::uint64_t StabilizerChain::order() const {
  unsigned __int128 n = 1;
  for (const Level& l : levels_) {
    n *= l.orbit.size();
    CW_ASSERT(n <= UINT64_MAX, "stabilizer chain: order overflows 64 bits");
  }
  return static_cast<std::uint64_t>(n);
}

bool StabilizerChain::contains(const Perm& p) const {
  if (p.size() != degree_ || !perm_is_valid(p)) return false;
  return perm_is_identity(strip(p, 0).first);
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const Level& l : levels_) b.push_back(l.base);
  return b;
}

std::size_t StabilizerChain::strong_generators() const {
  std::size_t n = 0;
  for (const Level& l : levels_) n += l.gens.size();
  return n;
}

// ---------------------------------------------------------------------------
// Fiber product

FiberProduct::FiberProduct(Homomorphism f, Homomorphism g) : f_(std::move(f)), g_(std::move(g)) {
  CW_REQUIRE(f_.target().same_as(g_.target()), "fiber product: legs have different targets");
  const std::size_t c = f_.target().order();
  for (int d = 0; d < 2; ++d) {
    fibers_[d].assign(c, {});
    const Homomorphism& h = leg(d);
    for (Elem x = 0; x < h.source().order(); ++x) fibers_[d][h(x)].push_back(x);
  }
  for (Elem a = 0; a < f_.source().order(); ++a)
    if (!fibers_[1][f_(a)].empty()) liftable_.push_back(a);
}

bool FiberProduct::contains(Pair x) const {
  return x.a < side(0).order() && x.b < side(1).order() && f_(x.a) == g_(x.b);
}

Pair FiberProduct::mul(Pair x, Pair y) const {
  return {side(0).mul(x.a, y.a), side(1).mul(x.b, y.b)};
}

Pair FiberProduct::inv(Pair x) const { return {side(0).inv(x.a), side(1).inv(x.b)}; }

std::uint64_t FiberProduct::order() const {
  return static_cast<std::uint64_t>(liftable_.size()) * fibers_[1][0].size();
}

std::vector<Pair> FiberProduct::generators() const {
  std::vector<Pair> out;
  Subgroup kg = kernel(g_);
  for (Elem y : kg.generators()) out.push_back({0, y});
  for (Elem a : side(0).generators())
    if (auto b = lift(1, f_(a))) out.push_back({a, *b});
  return out;
}

std::size_t FiberProduct::degree() const { return side(0).degree() + side(1).degree(); }

Perm FiberProduct::perm(Pair x) const {
  const std::size_t n = side(0).degree();
  Perm p(side(0).perm(x.a).begin(), side(0).perm(x.a).end());
  for (Point v : side(1).perm(x.b)) p.push_back(static_cast<Point>(v + n));
  return p;
}

Pair FiberProduct::random(std::mt19937_64& rng) const {
  Elem a = liftable_[rng() % liftable_.size()];
  return {a, random_partner(0, a, rng)};
}

std::optional<Elem> FiberProduct::lift(int d, Elem c) const {
  const auto& fib = fibers_[d][c];
  if (fib.empty()) return std::nullopt;
  return fib.front();
}

Elem FiberProduct::random_partner(int d, Elem x, std::mt19937_64& rng) const {
  const auto& fib = fibers_[1 - d][leg(d)(x)];
  CW_REQUIRE(!fib.empty(), "fiber product: element has no partner");
  return fib[rng() % fib.size()];
}

// ---------------------------------------------------------------------------
// Certificate

Pair StretchCertificate::kernel_map(Pair x) const { return kernel_map_at(layers.size(), x); }

Pair StretchCertificate::kernel_map_at(std::size_t j, Pair x) const {
  if (j == 0) {
    CW_REQUIRE(x.a == 0, "stretch kernel map: argument is outside ker p1");
    Elem a = leg_kernels[0].to_parent(kinv(leg_kernels[1].to_local(x.b)));
    return {a, 0};
  }
  const StretchLayer& l = layers[j - 1];
  Elem m = l.prev_p[0](x.a);
  Pair d0 = l.sec_prev[0][l.n_prev[0].to_local(m)];
  Pair k = g.mul(g.inv(d0), x);
  Elem m2 = l.kpi[1].to_parent(l.lambda(l.kpi[0].to_local(m)));
  Pair d1 = l.sec_prev[1][l.n_prev[1].to_local(m2)];
  return g.mul(d1, kernel_map_at(j - 1, k));
}

std::vector<Pair> StretchCertificate::kernel_generators(int d) const {
  std::vector<Pair> out;
  Subgroup other = kernel(g.leg(1 - d)), own = kernel(p[d]);
  for (Elem y : other.generators()) out.push_back(d == 0 ? Pair{0, y} : Pair{y, 0});
  for (Elem k : own.generators()) {
    auto partner = g.lift(1 - d, g.leg(d)(k));
    CW_ASSERT(partner.has_value(), "stretch: kernel element without a partner");
    out.push_back(d == 0 ? Pair{k, *partner} : Pair{*partner, k});
  }
  return out;
}

namespace {

Provenance node(std::string kind, std::string label, std::size_t order,
                std::vector<std::string> evidence = {}) {
  Provenance p;
  p.kind = std::move(kind);
  p.label = std::move(label);
  p.order = order;
  p.evidence = std::move(evidence);
  return p;
}

std::vector<Perm> perms_of(const FiberProduct& g, const std::vector<Pair>& xs) {
  std::vector<Perm> out;
  for (Pair x : xs) out.push_back(g.perm(x));
  return out;
}

StretchCertificate stretch_length2(const GroupSequence& s1, const GroupSequence& s2,
                                   const std::vector<Homomorphism>& isos) {
  CW_REQUIRE(isos.size() >= 3, "stretch: need level isomorphisms 1 and 2");
  const Subgroup& k11 = s1.kernel(1);
  const Subgroup& k12 = s2.kernel(1);
  const Homomorphism& sigma = isos[1];
  std::vector<Elem> leg(s1.top().order());
  for (Elem e = 0; e < leg.size(); ++e)
    leg[e] = k12.to_parent(sigma(k11.to_local(s1.map(2)(e))));

  StretchCertificate c;
  c.g = FiberProduct(Homomorphism::from_table(s1.top(), s2.group(1), std::move(leg), "sigma pi"),
                     s2.map(2));
  c.quotients = {s1.top(), s2.top()};
  for (int d = 0; d < 2; ++d) {
    c.p[d] = Homomorphism::identity(c.quotients[d]);
    c.leg_kernels[d] = kernel(c.g.leg(d));
  }
  const Homomorphism& kappa = isos[2];
  CW_REQUIRE(kappa.source().same_as(c.leg_kernels[0].group()) &&
                 kappa.target().same_as(c.leg_kernels[1].group()) && kappa.is_bijective(),
             "stretch: level-2 map is not an isomorphism of the kernels");
  c.kinv = kappa.inverse();
  for (int d = 0; d < 2; ++d) {
    c.good_domain[d] = c.leg_kernels[d];
    for (Elem m : c.leg_kernels[d].members())
      c.good_section[d].push_back(d == 0 ? Pair{m, 0} : Pair{0, m});
  }
  c.provenance = node("length2", "S_{2;1} x_{S_{1;2}} S_{2;2}", c.g.order(),
                      {"stretch: fiber product kept as pairs",
                       "kernel_iso = (1,b) -> (kappa^-1(b),1)"});
  c.provenance.children.push_back(node("limit", "star S_{1;2} <- S_{2;1}, S_{2;2}", c.g.order()));
  return c;
}

// compose_witness on pairs; the kernel decomposition is checked by orders.
void apply_layer(StretchCertificate& c, const std::array<Homomorphism, 2>& pi,
                 const Homomorphism& lambda, const std::array<Section, 2>& pi_sections) {
  StretchLayer l;
  l.prev_p = c.p;
  l.pi = pi;
  l.lambda = lambda;
  l.n_prev = c.good_domain;
  l.sec_prev = c.good_section;
  for (int d = 0; d < 2; ++d) {
    CW_REQUIRE(pi[d].source().same_as(c.quotients[d]), "stretch: pi does not start at L");
    l.kpi[d] = kernel(pi[d]);
    if (!l.kpi[d].subset_of(l.n_prev[d]))
      throw HypothesisRefuted("stretch: ker pi is not inside the designated subgroup");
  }
  CW_REQUIRE(lambda.source().same_as(l.kpi[0].group()) &&
                 lambda.target().same_as(l.kpi[1].group()) && lambda.is_bijective(),
             "stretch: lambda is not an isomorphism ker pi_1 -> ker pi_2");

  // ker q = s(ker pi) x ker p: commuting generators and multiplicative orders.
  for (int d = 0; d < 2; ++d) {
    std::vector<Pair> comp, kp = c.kernel_generators(d);
    for (Elem m : l.kpi[d].generators())
      comp.push_back(l.sec_prev[d][l.n_prev[d].to_local(m)]);
    for (Pair x : comp)
      for (Pair y : kp)
        CW_ASSERT(c.g.mul(x, y) == c.g.mul(y, x), "stretch: complement does not centralize ker p");
    std::vector<Pair> both = comp;
    both.insert(both.end(), kp.begin(), kp.end());
    const std::size_t deg = c.g.degree();
    std::uint64_t n_comp = StabilizerChain(deg, perms_of(c.g, comp)).order();
    std::uint64_t n_kp = StabilizerChain(deg, perms_of(c.g, kp)).order();
    std::uint64_t n_both = StabilizerChain(deg, perms_of(c.g, both)).order();
    CW_ASSERT(n_comp == l.kpi[d].order(), "stretch: section does not embed ker pi");
    CW_ASSERT(n_both == n_comp * n_kp && n_both * pi[d].target().order() == c.g.order(),
              "stretch: ker q is not the product of complement and ker p");
  }

  for (int d = 0; d < 2; ++d) {
    const Section& ps = pi_sections[d];
    CW_REQUIRE(verify_section(pi[d], ps), "stretch: pi section is invalid");
    c.good_domain[d] = ps.domain;
    c.good_section[d].clear();
    for (Elem m = 0; m < ps.domain.order(); ++m) {
      Elem v = ps.map(m);
      CW_REQUIRE(l.n_prev[d].contains(v), "stretch: pi section leaves the designated subgroup");
      c.good_section[d].push_back(l.sec_prev[d][l.n_prev[d].to_local(v)]);
    }
    c.p[d] = compose(pi[d], c.p[d]);
    c.quotients[d] = pi[d].target();
  }
  c.layers.push_back(std::move(l));
}

StretchCertificate stretch_rec(const GroupSequence& s1, const GroupSequence& s2,
                               const CompData& comp, const Bounds& bounds) {
  const std::size_t l = s1.length();
  CW_REQUIRE(l >= 2, "stretch: sequences must have length at least 2");
  if (l == 2) return stretch_length2(s1, s2, comp.sigmas);

  RecursionStep st = build_recursion_step(s1, s2, comp, bounds);
  auto u = reduced_sequences(s1, s2, st);
  StretchCertificate c = stretch_rec(u[0], u[1], reduced_comp_data(comp, st, u), bounds);
  Provenance inner = std::move(c.provenance);
  apply_layer(c, st.pi_next, st.lambda, st.sections);

  Provenance step = node("limit", "recursion step at level " + std::to_string(l),
                         st.top[0].group.order(),
                         {"eta_1, eta_2 bijective", "both squares commute"});
  for (int d = 0; d < 2; ++d) {
    Provenance fib = node("limit", "G x_{S_{l-1}} H", st.top[d].group.order());
    fib.children.push_back(node("limit", "G", st.g[d].group.order()));
    fib.children.push_back(node("hybrid", "H", st.h[d].carrier.order()));
    step.children.push_back(std::move(fib));
  }
  c.provenance = node("induction-compose",
                      "level " + std::to_string(l) + ": compose with pi_{l+1}", c.g.order(),
                      {"ker q_d = s_d(ker pi_d) x ker p_d by stabilizer-chain orders"});
  c.provenance.children.push_back(std::move(step));
  c.provenance.children.push_back(std::move(inner));
  return c;
}

}  // namespace

StretchCertificate build_good_witness_stretch(const GroupSequence& s1, const GroupSequence& s2,
                                              const CompData& comp, const Bounds& bounds) {
  CW_REQUIRE(verify_comp_data(s1, s2, comp), "stretch: comp data fails verification");
  return stretch_rec(s1, s2, comp, bounds);
}

StretchCertificate witness_square_free_stretch(const FiniteGroup& l1, const FiniteGroup& l2,
                                               const Bounds& bounds) {
  if (l1.order() != l2.order()) throw HypothesisRefuted("square-free: orders differ");
  auto [a, b] = pad_series(square_free_series(l1), square_free_series(l2));
  GroupSequence s1 = series_to_sequence(l1, a, bounds);
  GroupSequence s2 = series_to_sequence(l2, b, bounds);
  auto comp = comp_membership(s1, s2, bounds);
  if (!comp) throw HypothesisRefuted("square-free: series fail the Comp condition");
  StretchCertificate c = stretch_rec(s1, s2, *comp, bounds);
  c.provenance.evidence.push_back("square-free series of length " + std::to_string(s1.length()));
  return c;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

// Uniform elements of ker p_d.
class KernelSampler {
 public:
  KernelSampler(const StretchCertificate& c, int d) : c_(c), d_(d), k_(kernel(c.p[d])) {}
  Pair operator()(std::mt19937_64& rng) const {
    Elem x = k_.to_parent(static_cast<Elem>(rng() % k_.order()));
    Elem y = c_.g.random_partner(d_, x, rng);
    return d_ == 0 ? Pair{x, y} : Pair{y, x};
  }

 private:
  const StretchCertificate& c_;
  int d_;
  Subgroup k_;
};

}  // namespace

VerificationReport verify_stretch(const StretchCertificate& cert, const FiniteGroup& l1,
                                  const FiniteGroup& l2, const StretchOptions& options) {
  VerificationReport r;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const FiberProduct& g = cert.g;
  const FiniteGroup* l[2] = {&l1, &l2};
  std::mt19937_64 rng(options.seed);
  const std::size_t deg = g.degree();

  std::vector<Pair> gens = g.generators();
  bool in_g = std::all_of(gens.begin(), gens.end(), [&](Pair x) { return g.contains(x); });
  StabilizerChain chain(deg, perms_of(g, gens));
  add("G order by stabilizer chain", in_g && chain.order() == g.order(),
      std::to_string(chain.order()) + " vs fiber count " + std::to_string(g.order()));

  std::array<std::vector<Pair>, 2> kgens;
  std::array<std::uint64_t, 2> korder{};
  for (int d = 0; d < 2; ++d) {
    const std::string pd = "p" + std::to_string(d + 1);
    const FiniteGroup& q = *l[d];
    bool codomain = cert.quotients[d].same_as(q) && cert.p[d].source().same_as(g.side(d));
    add(pd + " codomain", codomain);
    if (!codomain) continue;

    std::size_t bad = 0;
    for (std::size_t s = 0; s < options.samples; ++s) {
      Pair x = g.random(rng), y = g.random(rng);
      if (cert.project(d, g.mul(x, y)) != q.mul(cert.project(d, x), cert.project(d, y))) ++bad;
    }
    add(pd + " homomorphism (sampled)", bad == 0,
        std::to_string(options.samples) + " pairs, " + std::to_string(bad) + " failures");

    std::vector<Elem> imgs;
    for (Pair x : gens) imgs.push_back(cert.project(d, x));
    add(pd + " surjective", Subgroup::generated(q, imgs).is_whole());

    kgens[d] = cert.kernel_generators(d);
    bool inside = std::all_of(kgens[d].begin(), kgens[d].end(),
                              [&](Pair x) { return g.contains(x) && cert.project(d, x) == 0; });
    korder[d] = StabilizerChain(deg, perms_of(g, kgens[d])).order();
    add(pd + " kernel generators", inside, std::to_string(kgens[d].size()) + " generators");
    add("G/ker " + pd + " has the order of L" + std::to_string(d + 1),
        inside && korder[d] * q.order() == g.order(),
        std::to_string(korder[d]) + " * " + std::to_string(q.order()));
  }
  add("order bookkeeping", korder[0] == korder[1] && korder[0] * l1.order() == g.order());
  if (!r.passed()) return r;

  // kernel_iso on generators, then on random kernel pairs.
  KernelSampler sample(cert, 0);
  bool lands = true;
  std::vector<Pair> images;
  for (Pair x : kgens[0]) {
    Pair y = cert.kernel_map(x);
    lands = lands && g.contains(y) && cert.project(1, y) == 0;
    images.push_back(y);
  }
  std::size_t bad = 0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    Pair x = sample(rng), y = sample(rng);
    Pair fx = cert.kernel_map(x), fy = cert.kernel_map(y);
    lands = lands && g.contains(fx) && cert.project(1, fx) == 0;
    if (cert.kernel_map(g.mul(x, y)) != g.mul(fx, fy)) ++bad;
  }
  add("kernel_iso lands in ker p2", lands);
  add("kernel_iso homomorphism (generators + sampled)", bad == 0,
      std::to_string(options.samples) + " pairs, " + std::to_string(bad) + " failures");
  std::uint64_t img = StabilizerChain(deg, perms_of(g, images)).order();
  add("kernel_iso bijective", img == korder[1] && korder[0] == korder[1],
      "image order " + std::to_string(img));

  for (int d = 0; d < 2; ++d) {
    const Subgroup& n = cert.good_domain[d];
    const auto& s = cert.good_section[d];
    bool ok = n.parent().same_as(*l[d]) && s.size() == n.order();
    for (Elem m = 0; ok && m < n.order(); ++m) {
      ok = g.contains(s[m]) && cert.project(d, s[m]) == n.to_parent(m);
      for (Elem j : n.group().generators())
        ok = ok && s[n.group().mul(m, j)] == g.mul(s[m], s[j]);
    }
    for (Elem m = 0; ok && m < n.order(); ++m)
      for (Pair k : kgens[d]) ok = ok && g.mul(s[m], k) == g.mul(k, s[m]);
    add("good at N" + std::to_string(d + 1), ok, "|N| = " + std::to_string(n.order()));
  }
  return r;
}

}  // namespace cw
