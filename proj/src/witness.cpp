// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/witness.hpp"

#include <algorithm>
#include <functional>

#include "cw/construct.hpp"
#include "cw/numtheory.hpp"
#include "cw/structure.hpp"

namespace cw {

namespace {

std::vector<Elem> kernel_members(const std::vector<Elem>& table) {
  std::vector<Elem> out;
  for (Elem e = 0; e < table.size(); ++e)
    if (table[e] == 0) out.push_back(e);
  return out;
}

// Minimal preimage of every element of pi's target.
std::vector<Elem> minimal_preimages(const Homomorphism& pi) {
  std::vector<Elem> t(pi.target().order(), kNoElem);
  for (Elem e = 0; e < pi.source().order(); ++e)
    if (t[pi(e)] == kNoElem) t[pi(e)] = e;
  return t;
}

// Inn(x)|_K as a table on K's local indices.
std::vector<Elem> inner_restriction(const Subgroup& k, Elem x) {
  const FiniteGroup& g = k.parent();
  std::vector<Elem> r(k.order());
  for (Elem a = 0; a < r.size(); ++a) r[a] = k.to_local(g.conj(x, k.to_parent(a)));
  return r;
}

// s o r o s^-1 for tables on local indices.
std::vector<Elem> transport_table(const Homomorphism& s, const Homomorphism& s_inv,
                                  const std::vector<Elem>& r) {
  std::vector<Elem> out(r.size());
  for (Elem a = 0; a < out.size(); ++a) out[a] = s(r[s_inv(a)]);
  return out;
}

bool kernel_is_central(const GroupSequence& s, std::size_t i) {
  const FiniteGroup& g = s.group(i);
  const Subgroup& k = s.kernel(i);
  std::vector<Elem> kp(k.generators().begin(), k.generators().end());
  return commute_elementwise(g, g.generators(), kp);
}

// S_0 <- ... <- S_{l-1}.
GroupSequence drop_top(const GroupSequence& s) {
  std::vector<FiniteGroup> groups;
  std::vector<Homomorphism> maps;
  for (std::size_t i = 0; i < s.length(); ++i) groups.push_back(s.group(i));
  for (std::size_t i = 1; i < s.length(); ++i) maps.push_back(s.map(i));
  return GroupSequence(std::move(groups), std::move(maps));
}

Provenance node(std::string kind, std::string label, std::size_t order,
                std::vector<std::string> evidence = {}) {
  Provenance p;
  p.kind = std::move(kind);
  p.label = std::move(label);
  p.order = order;
  p.evidence = std::move(evidence);
  return p;
}

std::string lvl(const char* name, std::size_t i, int d) {
  return std::string(name) + "_{" + std::to_string(i) + ";" + std::to_string(d + 1) + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Sequences

GroupSequence::GroupSequence(std::vector<FiniteGroup> groups, std::vector<Homomorphism> maps)
    : groups_(std::move(groups)), maps_(std::move(maps)) {
  CW_REQUIRE(!groups_.empty(), "group sequence: no groups");
  CW_REQUIRE(groups_[0].is_trivial(), "group sequence: S_0 must be trivial");
  CW_REQUIRE(maps_.size() + 1 == groups_.size(), "group sequence: one map per level required");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    CW_REQUIRE(maps_[i].source().same_as(groups_[i + 1]) && maps_[i].target().same_as(groups_[i]),
               "group sequence: map " + std::to_string(i + 1) + " has wrong ends");
    kernels_.push_back(cw::kernel(maps_[i]));
  }
}

bool GroupSequence::is_surjective() const {
  return std::all_of(maps_.begin(), maps_.end(),
                     [](const Homomorphism& m) { return m.is_surjective(); });
}

Homomorphism GroupSequence::down(std::size_t i) const {
  CW_REQUIRE(i <= length(), "group sequence: level out of range");
  Homomorphism acc = Homomorphism::identity(top());
  for (std::size_t j = length(); j > i; --j) acc = compose(map(j), acc);
  return acc;
}

GroupSequence series_to_sequence(const FiniteGroup& l, const std::vector<Subgroup>& chain,
                                 const Bounds& bounds) {
  CW_REQUIRE(chain.size() >= 2, "series: need at least the terms 1 and L");
  CW_REQUIRE(chain.front().is_trivial() && chain.back().is_whole(),
             "series: must run from 1 to L");
  for (std::size_t j = 0; j < chain.size(); ++j) {
    CW_REQUIRE(chain[j].parent().same_as(l), "series: term is not a subgroup of L");
    CW_REQUIRE(chain[j].is_normal(), "series: term " + std::to_string(j) + " is not normal");
    if (j) CW_REQUIRE(chain[j - 1].subset_of(chain[j]), "series: terms are not increasing");
  }
  const std::size_t len = chain.size() - 1;
  std::vector<Homomorphism> q(len + 1);
  for (std::size_t i = 0; i < len; ++i) q[i] = quotient(chain[len - i], bounds).map;
  q[len] = Homomorphism::identity(l);
  std::vector<FiniteGroup> groups;
  for (const auto& m : q) groups.push_back(m.target());
  std::vector<Homomorphism> maps;
  for (std::size_t i = 1; i <= len; ++i) {
    std::vector<Elem> dom, img;
    for (Elem x : l.generators()) {
      dom.push_back(q[i](x));
      img.push_back(q[i - 1](x));
    }
    maps.push_back(Homomorphism::from_assignment(groups[i], groups[i - 1], dom, img,
                                                 "pi_" + std::to_string(i)));
  }
  return GroupSequence(std::move(groups), std::move(maps));
}

std::vector<Subgroup> sequence_to_series(const GroupSequence& s) {
  std::vector<Subgroup> out;
  for (std::size_t j = 0; j <= s.length(); ++j) out.push_back(kernel(s.down(s.length() - j)));
  return out;
}

std::pair<std::vector<Subgroup>, std::vector<Subgroup>> pad_series(std::vector<Subgroup> a,
                                                                  std::vector<Subgroup> b) {
  CW_REQUIRE(!a.empty() && !b.empty(), "pad_series: empty series");
  auto factor = [](const std::vector<Subgroup>& c, std::size_t j) {
    return c[j + 1].order() / c[j].order();
  };
  std::vector<Subgroup> ra{a[0]}, rb{b[0]};
  std::size_t i = 0, j = 0;
  const std::size_t na = a.size() - 1, nb = b.size() - 1;
  while (i < na || j < nb) {
    if (i < na && j < nb && factor(a, i) == factor(b, j)) {
      ra.push_back(a[++i]);
      rb.push_back(b[++j]);
    } else if (i < na && factor(a, i) == 1) {
      ra.push_back(a[++i]);
      rb.push_back(rb.back());
    } else if (j < nb && factor(b, j) == 1) {
      ra.push_back(ra.back());
      rb.push_back(b[++j]);
    } else {
      throw HypothesisRefuted("pad_series: factor orders do not line up");
    }
  }
  return {ra, rb};
}

GroupSequence contraction(const GroupSequence& s) {
  const std::size_t l = s.length();
  CW_REQUIRE(l >= 2, "contraction: length must be at least 2");
  std::vector<FiniteGroup> groups;
  std::vector<Homomorphism> maps;
  for (std::size_t i = 0; i + 2 <= l; ++i) groups.push_back(s.group(i));
  groups.push_back(s.top());
  for (std::size_t i = 1; i + 2 <= l; ++i) maps.push_back(s.map(i));
  maps.push_back(compose(s.map(l - 1), s.map(l)));
  return GroupSequence(std::move(groups), std::move(maps));
}

GroupSequence concatenation(const FiniteGroup& g, const Homomorphism& f, const GroupSequence& s) {
  CW_REQUIRE(f.source().same_as(g) && f.target().same_as(s.top()),
             "concatenation: map must run from G to the top of S");
  std::vector<FiniteGroup> groups;
  std::vector<Homomorphism> maps;
  for (std::size_t i = 0; i <= s.length(); ++i) groups.push_back(s.group(i));
  for (std::size_t i = 1; i <= s.length(); ++i) maps.push_back(s.map(i));
  groups.push_back(g);
  maps.push_back(f);
  return GroupSequence(std::move(groups), std::move(maps));
}

bool almost_equal(const GroupSequence& s, const GroupSequence& t) {
  const std::size_t l = s.length();
  if (l == 0 || t.length() != l) return false;
  for (std::size_t i = 0; i < l; ++i)
    if (!s.group(i).same_as(t.group(i))) return false;
  for (std::size_t i = 1; i < l; ++i)
    if (!s.map(i).equals(t.map(i))) return false;
  return true;
}

GroupSequence sharp(const GroupSequence& s, const GroupSequence& t, const Bounds& bounds) {
  CW_REQUIRE(almost_equal(s, t), "sharp: sequences are not almost equal");
  const std::size_t l = s.length();
  LimitGroup lim = star_limit(s.group(l - 1), {s.map(l), t.map(l)}, bounds);
  return concatenation(lim.group, lim.projections[0], drop_top(s));
}

std::optional<std::vector<Homomorphism>> compatibility_isos(const GroupSequence& s1,
                                                            const GroupSequence& s2,
                                                            const Bounds& bounds) {
  CW_REQUIRE(s1.length() == s2.length(), "compatibility: sequences differ in length");
  std::vector<Homomorphism> out(s1.length() + 1);
  for (std::size_t i = 1; i <= s1.length(); ++i) {
    auto f = find_isomorphism(s1.kernel(i).group(), s2.kernel(i).group(), bounds);
    if (!f) return std::nullopt;
    out[i] = f->relabeled("sigma_" + std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trivial extendability

bool verify_section(const Homomorphism& pi, const Section& s) {
  if (!s.domain.parent().same_as(pi.target())) return false;
  if (!s.map.source().same_as(s.domain.group()) || !s.map.target().same_as(pi.source()))
    return false;
  for (Elem m = 0; m < s.domain.order(); ++m)
    if (pi(s.map(m)) != s.domain.to_parent(m)) return false;
  std::vector<Elem> img;
  for (Elem x : s.domain.group().generators()) img.push_back(s.map(x));
  const Subgroup ker = kernel(pi);
  return commute_elementwise(pi.source(), img, ker.generators());
}

Extendability is_trivially_extendable(const Homomorphism& pi, const Subgroup& n,
                                      const Bounds& bounds) {
  CW_REQUIRE(n.parent().same_as(pi.target()), "trivially extendable: N is not in the target");
  if (n.order() > bounds.isomorphism)
    throw Undecided("trivially extendable: |N| = " + std::to_string(n.order()) +
                    " exceeds the subgroup enumeration bound");
  const FiniteGroup& src = pi.source();
  const Subgroup ker = kernel(pi);
  const Subgroup cent = centralizer(ker);
  Extendability out;
  std::size_t nodes = 0;
  for (const Subgroup& local : all_subgroups(n.group(), bounds.enumeration)) {
    const Subgroup m = image(n.inclusion(), local);
    const Subgroup z = intersect(preimage(pi, m), cent);
    const FiniteGroup& mg = m.group();
    std::vector<Elem> gens(mg.generators().begin(), mg.generators().end());
    std::vector<std::vector<Elem>> cands(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (Elem x : z.members())
        if (pi(x) == m.to_parent(gens[j])) cands[j].push_back(x);
    // Backtrack over lifts of the generators.
    std::vector<Elem> pick(gens.size());
    std::optional<Subgroup> found;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (found) return;
      if (++nodes > bounds.search_nodes)
        throw Undecided("trivially extendable: search node bound exceeded");
      if (j == gens.size()) {
        try {
          auto s = Homomorphism::from_assignment(mg, src, gens, pick);
          found = image(s);
        } catch (const InvalidArgument&) {
        }
        return;
      }
      for (Elem x : cands[j]) {
        pick[j] = x;
        rec(j + 1);
        if (found) return;
      }
    };
    rec(0);
    if (!found) {
      out.failing = m;
      out.complements.clear();
      return out;
    }
    CW_ASSERT(intersect(*found, ker).is_trivial() && found->order() == m.order(),
              "trivially extendable: complement has the wrong shape");
    out.complements.emplace_back(m, *found);
  }
  out.extendable = true;
  return out;
}

// ---------------------------------------------------------------------------
// Comp

std::optional<CompData> comp_membership(const GroupSequence& s1, const GroupSequence& s2,
                                        const Bounds& bounds) {
  const std::size_t l = s1.length();
  CW_REQUIRE(s2.length() == l, "comp: sequences differ in length");
  CW_REQUIRE(s1.is_surjective() && s2.is_surjective(), "comp: sequences must be surjective");
  auto isos = compatibility_isos(s1, s2, bounds);
  if (!isos) throw HypothesisRefuted("comp: sequences are not compatible");
  const GroupSequence* s[2] = {&s1, &s2};

  CompData c;
  c.length = l;
  c.sigmas = std::move(*isos);
  c.central.assign(l + 1, false);
  for (int d = 0; d < 2; ++d) {
    c.taus[d].resize(l + 1);
    c.alphas[d].resize(l + 1);
    for (std::size_t i = 1; i <= l; ++i) c.taus[d][i] = minimal_preimages(s[d]->map(i));
  }

  for (std::size_t i = 2; i + 1 <= l; ++i) {
    const Subgroup* k[2] = {&s1.kernel(i), &s2.kernel(i)};
    c.central[i] = kernel_is_central(s1, i) && kernel_is_central(s2, i);
    if (c.central[i]) {
      // Every restriction is trivial, so any sigma works and alpha = 1.
      for (int d = 0; d < 2; ++d)
        c.alphas[d][i].assign(s[1 - d]->group(i - 1).order(),
                              Homomorphism::identity(s[d]->group(i)));
      continue;
    }
    std::array<AutomorphismSet, 2> stab, rest;
    std::array<std::vector<std::vector<Elem>>, 2> inner;
    for (int d = 0; d < 2; ++d) {
      AutomorphismSet all = automorphism_set(s[d]->group(i), bounds);
      stab[d] = stabilized(all, *k[d]);
      rest[d] = restricted(stab[d], *k[d]);
      for (Elem x : s[d]->group(i).generators()) inner[d].push_back(inner_restriction(*k[d], x));
    }
    std::optional<Homomorphism> chosen;
    for_each_isomorphism(
        k[0]->group(), k[1]->group(),
        [&](const Homomorphism& sig) {
          Homomorphism inv = sig.inverse();
          for (const auto& r : inner[0])
            if (rest[1].find(transport_table(sig, inv, r)) < 0) return true;
          for (const auto& r : inner[1])
            if (rest[0].find(transport_table(inv, sig, r)) < 0) return true;
          chosen = sig;
          return false;
        },
        bounds);
    if (!chosen) return std::nullopt;
    c.sigmas[i] = chosen->relabeled("sigma_" + std::to_string(i));
    const Homomorphism to[2] = {c.sigmas[i].inverse(), c.sigmas[i]};  // K_{1-d} -> K_d

    for (int d = 0; d < 2; ++d) {
      const FiniteGroup& other = s[1 - d]->group(i);
      for (Elem x = 0; x < s[1 - d]->group(i - 1).order(); ++x) {
        Elem t = c.taus[1 - d][i][x];
        auto want = transport_table(to[d], to[1 - d], inner_restriction(*k[1 - d], other.inv(t)));
        if (x == 0) {
          CW_ASSERT(t == 0, "comp: transversal must send 1 to 1");
          c.alphas[d][i].push_back(Homomorphism::identity(s[d]->group(i)));
          continue;
        }
        const Homomorphism* hit = nullptr;
        for (const auto& a : stab[d].autos()) {
          bool ok = true;
          for (Elem y = 0; y < want.size() && ok; ++y)
            ok = k[d]->to_local(a(k[d]->to_parent(y))) == want[y];
          if (ok) {
            hit = &a;
            break;
          }
        }
        CW_ASSERT(hit, "comp: no automorphism realizes a transported restriction");
        c.alphas[d][i].push_back(hit->relabeled("alpha"));
      }
    }
  }
  return c;
}

bool verify_comp_data(const GroupSequence& s1, const GroupSequence& s2, const CompData& c) {
  const std::size_t l = s1.length();
  if (s2.length() != l || c.length != l || c.sigmas.size() != l + 1) return false;
  const GroupSequence* s[2] = {&s1, &s2};
  for (std::size_t i = 1; i <= l; ++i) {
    const Homomorphism& sig = c.sigmas[i];
    if (!sig.source().same_as(s1.kernel(i).group()) ||
        !sig.target().same_as(s2.kernel(i).group()) || !sig.is_bijective())
      return false;
  }
  for (std::size_t i = 2; i + 1 <= l; ++i) {
    const Homomorphism to[2] = {c.sigmas[i].inverse(), c.sigmas[i]};
    for (int d = 0; d < 2; ++d) {
      const Subgroup& kd = s[d]->kernel(i);
      const Subgroup& ko = s[1 - d]->kernel(i);
      const FiniteGroup& other = s[1 - d]->group(i);
      if (c.alphas[d][i].size() != s[1 - d]->group(i - 1).order()) return false;
      for (Elem x = 0; x < c.alphas[d][i].size(); ++x) {
        Elem t = c.taus[1 - d][i][x];
        if (s[1 - d]->map(i)(t) != x) return false;
        const Homomorphism& a = c.alphas[d][i][x];
        if (!a.source().same_as(s[d]->group(i)) || !a.target().same_as(s[d]->group(i)) ||
            !a.is_bijective())
          return false;
        auto want = transport_table(to[d], to[1 - d], inner_restriction(ko, other.inv(t)));
        for (Elem y = 0; y < want.size(); ++y) {
          Elem v = a(kd.to_parent(y));
          if (!kd.contains(v) || kd.to_local(v) != want[y]) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Certificates

Homomorphism WitnessCertificate::projection(int d) const {
  return Homomorphism::from_table(g, quotients[d], p[d], "p" + std::to_string(d + 1));
}

Subgroup WitnessCertificate::kernel(int d) const { return Subgroup::from_members(g, kernels[d]); }

Homomorphism WitnessCertificate::kernel_map() const {
  Subgroup k0 = kernel(0), k1 = kernel(1);
  std::vector<Elem> t(kernel_iso.size());
  for (Elem e = 0; e < t.size(); ++e) t[e] = k1.to_local(kernel_iso[e]);
  return Homomorphism::from_table(k0.group(), k1.group(), std::move(t), "kernel_iso");
}

Section WitnessCertificate::section(int d) const {
  Section s;
  s.domain = Subgroup::from_members(quotients[d], good[d].normal);
  s.map = Homomorphism::from_table(s.domain.group(), g, good[d].section, "s");
  return s;
}

namespace {

Goodness goodness_of(const Section& s) {
  Goodness out;
  out.normal = s.domain.members();
  out.section = s.map.table();
  return out;
}

// Section of a limit projection p_i over ker(leg_i): m -> (1, .., m, .., 1).
Section leaf_section(const LimitGroup& lim, Node leaf) {
  Section s;
  s.domain = kernel(lim.system.map(0, leaf));
  std::vector<Elem> tuple(lim.nodes(), 0), t(s.domain.order());
  for (Elem m = 0; m < t.size(); ++m) {
    tuple[leaf] = s.domain.to_parent(m);
    t[m] = lim.element(tuple);
  }
  s.map = Homomorphism::from_table(s.domain.group(), lim.group, std::move(t), "s");
  return s;
}

}  // namespace

WitnessCertificate build_witness_length2(const GroupSequence& s1, const GroupSequence& s2,
                                         const std::vector<Homomorphism>& isos,
                                         const Bounds& bounds) {
  CW_REQUIRE(s1.length() == 2 && s2.length() == 2, "length2: sequences must have length 2");
  CW_REQUIRE(isos.size() >= 3, "length2: need level isomorphisms 1 and 2");
  const Subgroup& k11 = s1.kernel(1);
  const Subgroup& k12 = s2.kernel(1);
  const Homomorphism& sigma = isos[1];
  CW_REQUIRE(sigma.source().same_as(k11.group()) && sigma.target().same_as(k12.group()) &&
                 sigma.is_bijective(),
             "length2: level-1 map is not an isomorphism of the kernels");
  std::vector<Elem> leg(s1.top().order());
  for (Elem e = 0; e < leg.size(); ++e)
    leg[e] = k12.to_parent(sigma(k11.to_local(s1.map(2)(e))));
  Homomorphism leg1 = Homomorphism::from_table(s1.top(), s2.group(1), std::move(leg), "sigma pi");
  LimitGroup lim = star_limit(s2.group(1), {leg1, s2.map(2)}, bounds);

  WitnessCertificate c;
  c.g = lim.group;
  c.quotients = {s1.top(), s2.top()};
  for (int d = 0; d < 2; ++d) {
    c.p[d] = lim.projections[d + 1].table();
    c.kernels[d] = kernel_members(c.p[d]);
  }
  // ker p1 = {(1, 1, b)} and ker p2 = {(1, a, 1)}; bridge with kappa^-1.
  const Subgroup& k21 = s1.kernel(2);
  const Subgroup& k22 = s2.kernel(2);
  const Homomorphism& kappa = isos[2];
  CW_REQUIRE(kappa.source().same_as(k21.group()) && kappa.target().same_as(k22.group()) &&
                 kappa.is_bijective(),
             "length2: level-2 map is not an isomorphism of the kernels");
  Homomorphism kinv = kappa.inverse();
  for (Elem x : c.kernels[0]) {
    Elem b = lim.coord(x, 2);
    Elem a = k21.to_parent(kinv(k22.to_local(b)));
    c.kernel_iso.push_back(lim.element(std::vector<Elem>{0, a, 0}));
  }
  for (int d = 0; d < 2; ++d) c.good[d] = goodness_of(leaf_section(lim, d + 1));

  c.provenance = node("length2", "S_{2;1} x_{S_{1;2}} S_{2;2}", c.g.order(),
                      {"kernel_iso = (1,1,b) -> (1,kappa^-1(b),1)",
                       "good at (ker pi_{2;1}, ker pi_{2;2}) by leaf sections"});
  c.provenance.children.push_back(node("limit", "star S_{1;2} <- S_{2;1}, S_{2;2}", c.g.order()));
  return c;
}

WitnessCertificate build_witness_length2(const GroupSequence& s1, const GroupSequence& s2,
                                         const Bounds& bounds) {
  auto isos = compatibility_isos(s1, s2, bounds);
  if (!isos) throw HypothesisRefuted("length2: sequences are not compatible");
  return build_witness_length2(s1, s2, *isos, bounds);
}

WitnessCertificate compose_witness(const WitnessCertificate& cert,
                                   const std::array<Homomorphism, 2>& pi,
                                   std::optional<Homomorphism> lambda,
                                   const std::optional<std::array<Section, 2>>& pi_sections,
                                   const Bounds& bounds) {
  const FiniteGroup& g = cert.g;
  std::array<Homomorphism, 2> p, q;
  std::array<Subgroup, 2> kpi, kp, n;
  std::array<Section, 2> sec;
  for (int d = 0; d < 2; ++d) {
    CW_REQUIRE(pi[d].source().same_as(cert.quotients[d]), "compose: pi does not start at L");
    CW_REQUIRE(pi[d].is_surjective(), "compose: pi is not surjective");
    p[d] = cert.projection(d);
    q[d] = compose(pi[d], p[d]);
    kpi[d] = kernel(pi[d]);
    kp[d] = cert.kernel(d);
    sec[d] = cert.section(d);
    n[d] = sec[d].domain;
    if (!kpi[d].subset_of(n[d]))
      throw HypothesisRefuted("compose: ker pi is not inside the designated subgroup");
    CW_ASSERT(verify_section(p[d], sec[d]), "compose: certificate section is invalid");
  }
  if (!lambda) {
    lambda = find_isomorphism(kpi[0].group(), kpi[1].group(), bounds);
    if (!lambda) throw HypothesisRefuted("compose: kernels of pi are not isomorphic");
  }
  CW_REQUIRE(lambda->source().same_as(kpi[0].group()) &&
                 lambda->target().same_as(kpi[1].group()) && lambda->is_bijective(),
             "compose: lambda is not an isomorphism ker pi_1 -> ker pi_2");

  // ker q = s(ker pi) x ker p, internally.
  std::array<std::vector<Elem>, 2> comp;
  for (int d = 0; d < 2; ++d) {
    for (Elem m : kpi[d].members()) comp[d].push_back(sec[d].map(n[d].to_local(m)));
    Subgroup c = Subgroup::from_members(g, comp[d]);
    CW_ASSERT(intersect(c, kp[d]).is_trivial(), "compose: complement meets ker p");
    CW_ASSERT(commute_elementwise(g, c.generators(), kp[d].generators()),
              "compose: complement does not centralize ker p");
    CW_ASSERT(kernel(q[d]).order() == c.order() * kp[d].order(),
              "compose: ker q is not the product of complement and ker p");
  }

  WitnessCertificate out;
  out.g = g;
  for (int d = 0; d < 2; ++d) {
    out.quotients[d] = pi[d].target();
    out.p[d] = q[d].table();
    out.kernels[d] = kernel_members(out.p[d]);
  }
  Homomorphism kmap = cert.kernel_map();
  for (Elem x : out.kernels[0]) {
    Elem m = p[0](x);
    Elem d0 = sec[0].map(n[0].to_local(m));
    Elem k = g.mul(g.inv(d0), x);
    Elem m2 = kpi[1].to_parent((*lambda)(kpi[0].to_local(m)));
    Elem d1 = sec[1].map(n[1].to_local(m2));
    Elem k2 = kp[1].to_parent(kmap(kp[0].to_local(k)));
    out.kernel_iso.push_back(g.mul(d1, k2));
  }
  for (int d = 0; d < 2; ++d) {
    if (!pi_sections) {
      out.good[d].normal = {0};
      out.good[d].section = {0};
      continue;
    }
    const Section& ps = (*pi_sections)[d];
    CW_REQUIRE(verify_section(pi[d], ps), "compose: pi section is invalid");
    out.good[d].normal = ps.domain.members();
    for (Elem m = 0; m < ps.domain.order(); ++m) {
      Elem v = ps.map(m);
      CW_REQUIRE(n[d].contains(v), "compose: pi section leaves the designated subgroup");
      out.good[d].section.push_back(sec[d].map(n[d].to_local(v)));
    }
  }
  out.provenance = node("induction-compose", "(G, pi_1 p_1, pi_2 p_2)", g.order(),
                        {"ker q_d = s_d(ker pi_d) x ker p_d verified",
                         "kernel_iso = s_2 lambda p_1 * kernel_iso(k)"});
  out.provenance.children.push_back(cert.provenance);
  return out;
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

// Table of a map between realized groups, validated as a homomorphism.
Homomorphism tabulate(const FiniteGroup& src, const FiniteGroup& dst,
                      const std::function<Elem(Elem)>& f, std::string label) {
  std::vector<Elem> t(src.order());
  for (Elem e = 0; e < t.size(); ++e) t[e] = f(e);
  return Homomorphism::from_table(src, dst, std::move(t), std::move(label));
}

}  // namespace

RecursionStep build_recursion_step(const GroupSequence& s1, const GroupSequence& s2,
                                   const CompData& comp, const Bounds& bounds) {
  const std::size_t l = s1.length();
  CW_REQUIRE(l >= 3 && s2.length() == l && comp.length == l,
             "recursion step: need two sequences of the same length >= 3 with their data");
  const GroupSequence* s[2] = {&s1, &s2};
  RecursionStep st;
  st.level = l;

  // to[d]: K_{l-1;1-d} -> K_{l-1;d}.
  const Homomorphism to[2] = {comp.sigmas[l - 1].inverse(), comp.sigmas[l - 1]};
  std::array<std::vector<Point>, 2> point_of;  // x in S_{l-2;d} -> coset of K_{l-1;d}

  for (int d = 0; d < 2; ++d) {
    st.t[d] = kernel(compose(s[d]->map(l - 1), s[d]->map(l)));
    CW_REQUIRE(comp.alphas[d][l - 1].size() == s[1 - d]->group(l - 2).order() &&
                   comp.alphas[d][l - 1][0].is_identity(),
               "recursion step: alpha must be tabulated with alpha(1) = 1");
  }
  for (int d = 0; d < 2; ++d) {
    const FiniteGroup& sm = s[d]->group(l - 1);
    const FiniteGroup& lower = s[1 - d]->group(l - 2);
    // G_d: copies of S_{l;d} over S_{l-1;d}, twisted by alpha(x), x in S_{l-2;1-d}.
    std::vector<Homomorphism> legs;
    for (Elem x = 0; x < lower.order(); ++x)
      legs.push_back(compose(comp.alphas[d][l - 1][x], s[d]->map(l)));
    st.g[d] = star_limit(sm, legs, bounds);
    st.g[d].group = st.g[d].group.relabeled(lvl("G", l, d));
    st.rho[d] = st.g[d].projections[1];

    // theta_d: T_{1-d} -> K_{l-1;1-d} -> K_{l-1;d} <= S_{l-1;d}.
    const Subgroup& kd = s[d]->kernel(l - 1);
    const Subgroup& ko = s[1 - d]->kernel(l - 1);
    const Subgroup& to_ = st.t[1 - d];
    const Homomorphism& pio = s[1 - d]->map(l);
    st.theta[d] = tabulate(
        to_.group(), sm,
        [&](Elem e) { return kd.to_parent(to[d](ko.to_local(pio(to_.to_parent(e))))); },
        "theta");
    st.h[d] = hybrid_wreath(st.theta[d], bounds);
    CW_ASSERT(st.h[d].normal, "recursion step: theta image is not normal");
    CW_ASSERT(st.h[d].theta_image.order() == kd.order(), "recursion step: theta is not onto K");
    st.phi[d] = st.h[d].standard_map;

    // Points of H_d correspond to S_{l-2;d} through the canonical transversal.
    std::vector<Point> cosets = right_cosets(st.h[d].theta_image);
    const auto& tau = comp.taus[d][l - 1];
    for (Elem x = 0; x < s[d]->group(l - 2).order(); ++x) {
      Point v = cosets[tau[x]];
      CW_ASSERT(st.h[d].transversal()[v] == tau[x],
                "recursion step: hybrid transversal differs from tau");
      point_of[d].push_back(v);
    }
  }

  for (int d = 0; d < 2; ++d)
    st.eta_target[d] =
        preimage(st.rho[d], st.t[d]);  // ker(pi_{l-1} pi_l rho_d) = rho_d^-1(T_d)

  // eta_d: BW_d -> ker(pi_{l-1;1-d} pi_{l;1-d} rho_{1-d}), the limit of
  // the kernel-system morphism: identity on the legs, sigma at the base.
  for (int d = 0; d < 2; ++d) {
    const HybridWreath& hw = st.h[d];
    const Subgroup& bw = hw.base;
    const Subgroup& kd = s[d]->kernel(l - 1);
    const Subgroup& ko = s[1 - d]->kernel(l - 1);
    const LimitGroup& target = st.g[1 - d];
    auto evals = evaluation_maps(hw);
    std::vector<Elem> tuple(target.nodes());
    st.eta[d] = tabulate(
        bw.group(), st.eta_target[1 - d].group(),
        [&](Elem b) {
          Elem h = bw.to_parent(b);
          tuple[0] = ko.to_parent(to[1 - d](kd.to_local(st.phi[d](h))));
          for (std::size_t j = 0; j < point_of[d].size(); ++j)
            tuple[j + 1] = st.t[1 - d].to_parent(evals[point_of[d][j]](b));
          auto y = target.find(tuple);
          CW_ASSERT(y.has_value(), "recursion step: eta image is not a coherent tuple");
          return st.eta_target[1 - d].to_local(*y);
        },
        "eta");
    CW_ASSERT(st.eta[d].is_bijective(), "recursion step: eta is not bijective");

    // sigma^{+-1} o phi_d == pi_{l;1-d} o rho_{1-d} o eta_d on BW_d.
    bool ok = true;
    for (Elem b = 0; b < bw.order() && ok; ++b) {
      Elem lhs = ko.to_parent(to[1 - d](kd.to_local(st.phi[d](bw.to_parent(b)))));
      Elem rhs = s[1 - d]->map(l)(st.rho[1 - d](st.eta_target[1 - d].to_parent(st.eta[d](b))));
      ok = lhs == rhs;
    }
    st.squares_commute[d] = ok;
    CW_ASSERT(ok, "recursion step: square does not commute");
  }

  // S_{l+1;d} = G_d x_{S_{l-1;d}} H_d.
  for (int d = 0; d < 2; ++d) {
    st.top[d] = star_limit(s[d]->group(l - 1), {compose(s[d]->map(l), st.rho[d]), st.phi[d]},
                           bounds);
    st.top[d].group = st.top[d].group.relabeled(lvl("S", l + 1, d));
    st.pi_next[d] = compose(st.rho[d], st.top[d].projections[1]).relabeled(lvl("pi", l + 1, d));
    // m -> (1, m, 1, ..): coherent because alpha(1) = 1 and m in ker pi_l.
    Section rs;
    rs.domain = s[d]->kernel(l);
    rs.map = tabulate(
        rs.domain.group(), st.g[d].group,
        [&](Elem m) {
          std::vector<Elem> tuple(st.g[d].nodes(), 0);
          tuple[1] = rs.domain.to_parent(m);
          return st.g[d].element(tuple);
        },
        "s_rho");
    st.rho_sections[d] = rs;
    CW_ASSERT(verify_section(st.rho[d], rs), "recursion step: rho section invalid");
    Section ps;
    ps.domain = rs.domain;
    ps.map = tabulate(
        ps.domain.group(), st.top[d].group,
        [&](Elem m) {
          return st.top[d].element(std::vector<Elem>{0, rs.map(m), 0});
        },
        "s_pi");
    st.sections[d] = ps;
    CW_ASSERT(verify_section(st.pi_next[d], ps), "recursion step: pi section invalid");
  }

  // kappa: ker u_1 -> ker u_2, (c, g, h) -> (., eta_1(h), eta_2^-1(g)).
  {
    std::array<Subgroup, 2> ku;
    for (int d = 0; d < 2; ++d)
      ku[d] = kernel(compose(s[d]->map(l - 1), compose(s[d]->map(l), st.pi_next[d])));
    Homomorphism eta1_inv = st.eta[1].inverse();
    st.kappa = tabulate(
        ku[0].group(), ku[1].group(),
        [&](Elem e) {
          Elem x = ku[0].to_parent(e);
          Elem gc = st.top[0].coord(x, 1);
          Elem hc = st.top[0].coord(x, 2);
          Elem g2 = st.eta_target[1].to_parent(st.eta[0](st.h[0].base.to_local(hc)));
          Elem h2 = st.h[1].base.to_parent(eta1_inv(st.eta_target[0].to_local(gc)));
          Elem c2 = s2.map(l)(st.rho[1](g2));
          auto y = st.top[1].find(std::vector<Elem>{c2, g2, h2});
          CW_ASSERT(y.has_value(), "recursion step: kappa image is not coherent");
          return ku[1].to_local(*y);
        },
        "kappa");
    CW_ASSERT(st.kappa.is_bijective(), "recursion step: kappa is not bijective");
  }

  // The chain ker pi_{l+1;1} -> ... -> ker pi_{l+1;2}, one explicit map per link.
  {
    std::array<Subgroup, 2> kr, kf, kpr, kp, kn;
    for (int d = 0; d < 2; ++d) {
      kr[d] = kernel(st.rho[d]);
      kf[d] = kernel(st.phi[d]);
      kpr[d] = kernel(compose(s[d]->map(l), st.rho[d]));
      kp[d] = s[d]->kernel(l);
      kn[d] = kernel(st.pi_next[d]);
    }
    const FiniteGroup& g0 = st.g[0].group;
    const FiniteGroup& g1 = st.g[1].group;
    const Subgroup& bw0 = st.h[0].base;
    const Subgroup& bw1 = st.h[1].base;
    Homomorphism eta1_inv = st.eta[1].inverse();
    Homomorphism sig_inv = comp.sigmas[l].inverse();
    Product p1 = direct_product({kr[0].group(), kf[0].group()}, bounds);
    Product p2 = direct_product({kr[0].group(), kpr[1].group()}, bounds);
    Product p3 = direct_product({kr[0].group(), kp[1].group(), kr[1].group()}, bounds);
    Product p4 = direct_product({kr[0].group(), kp[0].group(), kr[1].group()}, bounds);
    Product p5 = direct_product({kpr[0].group(), kr[1].group()}, bounds);
    Product p6 = direct_product({kf[1].group(), kr[1].group()}, bounds);
    auto co = [](const Product& p, Elem e, std::size_t i) { return p.projections[i](e); };

    st.chain.push_back(tabulate(
        kn[0].group(), p1.group,
        [&](Elem e) {
          Elem x = kn[0].to_parent(e);
          std::vector<Elem> c{kr[0].to_local(st.top[0].coord(x, 1)),
                              kf[0].to_local(st.top[0].coord(x, 2))};
          return p1.element(c);
        },
        "ker pi_next = ker rho x ker phi"));
    st.chain.push_back(tabulate(
        p1.group, p2.group,
        [&](Elem e) {
          Elem h = kf[0].to_parent(co(p1, e, 1));
          Elem y = st.eta_target[1].to_parent(st.eta[0](bw0.to_local(h)));
          std::vector<Elem> c{co(p1, e, 0), kpr[1].to_local(y)};
          return p2.element(c);
        },
        "eta_1 on ker phi_1"));
    st.chain.push_back(tabulate(
        p2.group, p3.group,
        [&](Elem e) {
          Elem y = kpr[1].to_parent(co(p2, e, 1));
          Elem m = st.rho[1](y);
          Elem c = st.rho_sections[1].map(kp[1].to_local(m));
          Elem k2 = g1.mul(g1.inv(c), y);
          std::vector<Elem> v{co(p2, e, 0), kp[1].to_local(m), kr[1].to_local(k2)};
          return p3.element(v);
        },
        "split ker(pi rho_2)"));
    st.chain.push_back(tabulate(
        p3.group, p4.group,
        [&](Elem e) {
          std::vector<Elem> v{co(p3, e, 0), sig_inv(co(p3, e, 1)), co(p3, e, 2)};
          return p4.element(v);
        },
        "sigma_l^-1"));
    st.chain.push_back(tabulate(
        p4.group, p5.group,
        [&](Elem e) {
          Elem z = g0.mul(st.rho_sections[0].map(co(p4, e, 1)), kr[0].to_parent(co(p4, e, 0)));
          std::vector<Elem> v{kpr[0].to_local(z), co(p4, e, 2)};
          return p5.element(v);
        },
        "join ker(pi rho_1)"));
    st.chain.push_back(tabulate(
        p5.group, p6.group,
        [&](Elem e) {
          Elem z = kpr[0].to_parent(co(p5, e, 0));
          Elem h = bw1.to_parent(eta1_inv(st.eta_target[0].to_local(z)));
          std::vector<Elem> v{kf[1].to_local(h), co(p5, e, 1)};
          return p6.element(v);
        },
        "eta_2^-1"));
    st.chain.push_back(tabulate(
        p6.group, kn[1].group(),
        [&](Elem e) {
          std::vector<Elem> t{0, kr[1].to_parent(co(p6, e, 1)), kf[1].to_parent(co(p6, e, 0))};
          auto y = st.top[1].find(t);
          CW_ASSERT(y.has_value(), "recursion step: chain end is not coherent");
          return kn[1].to_local(*y);
        },
        "ker phi x ker rho = ker pi_next"));
    Homomorphism acc = st.chain.front();
    for (std::size_t i = 1; i < st.chain.size(); ++i) acc = compose(st.chain[i], acc);
    st.lambda = acc.relabeled("lambda");
    for (const auto& link : st.chain)
      CW_ASSERT(link.is_bijective(), "recursion step: chain link " + link.label() +
                                         " is not bijective");
  }
  return st;
}

std::array<GroupSequence, 2> reduced_sequences(const GroupSequence& s1, const GroupSequence& s2,
                                               const RecursionStep& step) {
  const std::size_t l = step.level;
  const GroupSequence* s[2] = {&s1, &s2};
  std::array<GroupSequence, 2> out;
  for (int d = 0; d < 2; ++d) {
    std::vector<FiniteGroup> groups;
    std::vector<Homomorphism> maps;
    for (std::size_t i = 0; i + 2 <= l; ++i) groups.push_back(s[d]->group(i));
    for (std::size_t i = 1; i + 2 <= l; ++i) maps.push_back(s[d]->map(i));
    groups.push_back(step.top[d].group);
    maps.push_back(compose(s[d]->map(l - 1), compose(s[d]->map(l), step.pi_next[d])));
    out[d] = GroupSequence(std::move(groups), std::move(maps));
  }
  return out;
}

CompData reduced_comp_data(const CompData& comp, const RecursionStep& step,
                           const std::array<GroupSequence, 2>& reduced) {
  const std::size_t l = step.level;
  CompData next;
  next.length = l - 1;
  next.sigmas.assign(comp.sigmas.begin(), comp.sigmas.begin() + (l - 1));
  next.sigmas.push_back(step.kappa);
  next.central.assign(comp.central.begin(), comp.central.begin() + l);
  for (int d = 0; d < 2; ++d) {
    next.taus[d].assign(comp.taus[d].begin(), comp.taus[d].begin() + (l - 1));
    next.taus[d].push_back(minimal_preimages(reduced[d].map(l - 1)));
    next.alphas[d].assign(comp.alphas[d].begin(), comp.alphas[d].begin() + (l - 1));
    next.alphas[d].emplace_back();
  }
  return next;
}

namespace {

WitnessCertificate witness_length1(const GroupSequence& s1, const GroupSequence& s2,
                                   const std::vector<Homomorphism>& isos) {
  // S_1 = K_1 on both sides: G = S_{1;1}, p2 = sigma_1.
  const FiniteGroup& g = s1.top();
  const Subgroup& k1 = s1.kernel(1);
  const Subgroup& k2 = s2.kernel(1);
  WitnessCertificate c;
  c.g = g;
  c.quotients = {g, s2.top()};
  c.p[0] = Homomorphism::identity(g).table();
  for (Elem e = 0; e < g.order(); ++e) c.p[1].push_back(k2.to_parent(isos[1](k1.to_local(e))));
  c.kernels = {std::vector<Elem>{0}, std::vector<Elem>{0}};
  c.kernel_iso = {0};
  Homomorphism inv = isos[1].inverse();
  c.good[0].normal = k1.members();
  c.good[0].section = c.good[0].normal;
  c.good[1].normal = k2.members();
  for (Elem m : k2.members()) c.good[1].section.push_back(k1.to_parent(inv(k2.to_local(m))));
  c.provenance = node("length2", "S_{1;1} = S_{1;2}", g.order(), {"length 1: G = S_1"});
  return c;
}

WitnessCertificate good_witness_rec(const GroupSequence& s1, const GroupSequence& s2,
                                    const CompData& comp, const Bounds& bounds) {
  const std::size_t l = s1.length();
  if (l == 1) return witness_length1(s1, s2, comp.sigmas);
  if (l == 2) return build_witness_length2(s1, s2, comp.sigmas, bounds);

  RecursionStep st = build_recursion_step(s1, s2, comp, bounds);
  auto u = reduced_sequences(s1, s2, st);

  CompData next = reduced_comp_data(comp, st, u);
  WitnessCertificate inner = good_witness_rec(u[0], u[1], next, bounds);
  WitnessCertificate out = compose_witness(inner, st.pi_next, st.lambda, st.sections, bounds);

  Provenance step = node("limit", "recursion step at level " + std::to_string(l),
                         st.top[0].group.order(),
                         {"eta_1, eta_2 bijective", "both squares commute",
                          "kappa = limit of the kernel-system morphism",
                          "lambda = composite of " + std::to_string(st.chain.size()) +
                              " chain links"});
  for (int d = 0; d < 2; ++d) {
    Provenance fib = node("limit", lvl("S", l + 1, d) + " = G x_{S_{l-1}} H",
                          st.top[d].group.order());
    fib.children.push_back(node("limit", lvl("G", l, d), st.g[d].group.order(),
                                {"rho section over ker pi_l verified"}));
    fib.children.push_back(node("hybrid", lvl("H", l, d), st.h[d].carrier.order(),
                                {"BW order " + std::to_string(st.h[d].base.order())}));
    step.children.push_back(std::move(fib));
  }
  Provenance top = out.provenance;  // induction-compose over inner
  top.label = "level " + std::to_string(l) + ": compose with pi_{l+1}";
  top.children.insert(top.children.begin(), std::move(step));
  out.provenance = std::move(top);
  return out;
}

}  // namespace

WitnessCertificate build_good_witness(const GroupSequence& s1, const GroupSequence& s2,
                                      const CompData& comp, const Bounds& bounds) {
  CW_REQUIRE(verify_comp_data(s1, s2, comp), "good witness: comp data fails verification");
  return good_witness_rec(s1, s2, comp, bounds);
}

WitnessCertificate build_good_witness(const GroupSequence& s1, const GroupSequence& s2,
                                      const Bounds& bounds) {
  auto comp = comp_membership(s1, s2, bounds);
  if (!comp) throw HypothesisRefuted("good witness: sequences fail the Comp condition");
  return good_witness_rec(s1, s2, *comp, bounds);
}

// ---------------------------------------------------------------------------
// Series

std::vector<Subgroup> central_series(const FiniteGroup& l) {
  std::vector<Subgroup> chain{Subgroup::trivial(l)};
  Homomorphism q = Homomorphism::identity(l);
  while (!chain.back().is_whole()) {
    const FiniteGroup& top = q.target();
    std::size_t p = prime_divisors(top.order()).front();
    Subgroup z = central_subgroup_of_order_p(top, p);
    chain.push_back(preimage(q, z));
    q = quotient(chain.back()).map;
  }
  return chain;
}

std::vector<Subgroup> square_free_series(const FiniteGroup& l) {
  if (!is_square_free(l.order()))
    throw HypothesisRefuted("order " + std::to_string(l.order()) + " is not square-free");
  std::vector<Subgroup> chain{Subgroup::trivial(l)};
  Homomorphism q = Homomorphism::identity(l);
  while (!chain.back().is_whole()) {
    Subgroup p = normal_sylow_and_complement(q.target()).first;
    chain.push_back(preimage(q, p));
    q = quotient(chain.back()).map;
  }
  return chain;
}

namespace {

WitnessCertificate witness_from_series(const FiniteGroup& l1, const FiniteGroup& l2,
                                       std::vector<Subgroup> c1, std::vector<Subgroup> c2,
                                       const Bounds& bounds, const char* what) {
  auto [a, b] = pad_series(std::move(c1), std::move(c2));
  GroupSequence s1 = series_to_sequence(l1, a, bounds);
  GroupSequence s2 = series_to_sequence(l2, b, bounds);
  auto comp = comp_membership(s1, s2, bounds);
  CW_ASSERT(comp.has_value(), std::string(what) + ": series fails the Comp condition");
  WitnessCertificate c = good_witness_rec(s1, s2, *comp, bounds);
  c.provenance.evidence.push_back(std::string(what) + " series of length " +
                                  std::to_string(s1.length()));
  return c;
}

}  // namespace

WitnessCertificate witness_nilpotent(const FiniteGroup& l1, const FiniteGroup& l2,
                                     const Bounds& bounds) {
  if (l1.order() != l2.order()) throw HypothesisRefuted("nilpotent: orders differ");
  if (!is_nilpotent(l1) || !is_nilpotent(l2))
    throw HypothesisRefuted("nilpotent: input group is not nilpotent");
  return witness_from_series(l1, l2, central_series(l1), central_series(l2), bounds, "central");
}

WitnessCertificate witness_square_free(const FiniteGroup& l1, const FiniteGroup& l2,
                                       const Bounds& bounds) {
  if (l1.order() != l2.order()) throw HypothesisRefuted("square-free: orders differ");
  return witness_from_series(l1, l2, square_free_series(l1), square_free_series(l2), bounds,
                             "square-free");
}

WitnessCertificate goodwit_certificate(std::size_t p, std::size_t n) {
  CW_REQUIRE(is_prime(p) && n >= 1, "goodwit: need a prime p and n >= 1");
  std::vector<FiniteGroup> factors, ones;
  std::size_t pn = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    pn *= p;
    factors.push_back(cyclic(pn));
    ones.push_back(cyclic(p));
  }
  Product g = direct_product(factors);
  Product l1 = direct_product(ones);
  FiniteGroup l2 = cyclic(pn);
  const Elem y = l2.generators().front();
  std::vector<Elem> a, x, img2;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(g.injections[i](factors[i].generators().front()));
    x.push_back(l1.injections[i](ones[i].generators().front()));
    img2.push_back(i + 1 == n ? y : 0);
  }
  Homomorphism p1 = Homomorphism::from_assignment(g.group, l1.group, a, x, "p1");
  Homomorphism p2 = Homomorphism::from_assignment(g.group, l2, a, img2, "p2");

  WitnessCertificate c;
  c.g = g.group;
  c.quotients = {l1.group, l2};
  c.p = {p1.table(), p2.table()};
  for (int d = 0; d < 2; ++d) c.kernels[d] = kernel_members(c.p[d]);
  // ker p1 = <a_{i+1}^p> and ker p2 = <a_1..a_{n-1}>; a_{i+1}^p -> a_i.
  Subgroup k1 = Subgroup::from_members(g.group, c.kernels[0]);
  Subgroup k2 = Subgroup::from_members(g.group, c.kernels[1]);
  if (n == 1) {
    c.kernel_iso = {0};
  } else {
    std::vector<Elem> dom, img;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      dom.push_back(k1.to_local(g.group.pow(a[i + 1], static_cast<long long>(p))));
      img.push_back(k2.to_local(a[i]));
    }
    Homomorphism k = Homomorphism::from_assignment(k1.group(), k2.group(), dom, img);
    for (Elem e = 0; e < k1.order(); ++e) c.kernel_iso.push_back(k2.to_parent(k(e)));
  }
  // Good at <x_1> and <y^{p^{n-1}}>.
  const long long top = static_cast<long long>(pn / p);
  for (long long k = 0; k < static_cast<long long>(p); ++k) {
    c.good[0].normal.push_back(l1.group.pow(x[0], k));
    c.good[0].section.push_back(g.group.pow(a[0], k));
    c.good[1].normal.push_back(l2.pow(y, k * top));
    c.good[1].section.push_back(g.group.pow(a[n - 1], k * top));
  }
  for (int d = 0; d < 2; ++d) {
    auto& gd = c.good[d];
    std::vector<std::size_t> idx(gd.normal.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t u, std::size_t v) { return gd.normal[u] < gd.normal[v]; });
    Goodness sorted;
    for (std::size_t i : idx) {
      sorted.normal.push_back(gd.normal[i]);
      sorted.section.push_back(gd.section[i]);
    }
    gd = std::move(sorted);
  }
  c.provenance = node("hand", "Z_p x ... x Z_{p^n} with p = " + std::to_string(p) +
                                  ", n = " + std::to_string(n),
                      c.g.order(), {"good at (<x_1>, <y^{p^{n-1}}>)"});
  return c;
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// f(x g_j) = f(x) f(g_j) over all x and generators of src: a complete test.
bool is_hom_table(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<Elem>& f) {
  if (f.size() != src.order()) return false;
  for (Elem v : f)
    if (v >= dst.order()) return false;
  if (f[0] != 0) return false;
  const auto& gens = src.generators();
  for (Elem x = 0; x < src.order(); ++x)
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (f[src.right_gen(x, j)] != dst.mul(f[x], f[gens[j]])) return false;
  return true;
}

std::size_t image_size(const std::vector<Elem>& f, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::size_t k = 0;
  for (Elem v : f)
    if (v < n && !seen[v]) {
      seen[v] = true;
      ++k;
    }
  return k;
}

}  // namespace

VerificationReport verify_witness(const WitnessCertificate& cert, const FiniteGroup& l1,
                                  const FiniteGroup& l2, const Bounds& bounds) {
  VerificationReport r;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const FiniteGroup& g = cert.g;
  const FiniteGroup* l[2] = {&l1, &l2};
  bool homs = true;
  std::array<std::vector<Elem>, 2> ker;
  for (int d = 0; d < 2; ++d) {
    const std::string tag = "p" + std::to_string(d + 1);
    add(tag + " codomain", cert.quotients[d].same_as(*l[d]));
    bool hom = is_hom_table(g, *l[d], cert.p[d]);
    homs = homs && hom;
    add(tag + " homomorphism", hom);
    if (!hom) continue;
    std::size_t im = image_size(cert.p[d], l[d]->order());
    add(tag + " surjective", im == l[d]->order(),
        "image " + std::to_string(im) + " of " + std::to_string(l[d]->order()));
    ker[d] = kernel_members(cert.p[d]);
    add(tag + " kernel recorded", ker[d] == cert.kernels[d]);
    if (l[d]->order() <= bounds.isomorphism && im == l[d]->order()) {
      Quotient q = quotient(Subgroup::from_members(g, ker[d]), bounds);
      bool iso = find_isomorphism(q.group, *l[d], bounds).has_value();
      add("G/ker " + tag + " isomorphic to L" + std::to_string(d + 1), iso, "brute-force search");
    } else {
      add("G/ker " + tag + " isomorphic to L" + std::to_string(d + 1), im == l[d]->order(),
          "first isomorphism theorem only");
    }
  }
  if (!homs) return r;

  add("order bookkeeping",
      g.order() == l1.order() * ker[0].size() && g.order() == l2.order() * ker[1].size(),
      std::to_string(g.order()) + " = " + std::to_string(l1.order()) + "*" +
          std::to_string(ker[0].size()) + " = " + std::to_string(l2.order()) + "*" +
          std::to_string(ker[1].size()));

  // kernel_iso: local indices of ker p1 -> elements of ker p2.
  Subgroup k0 = Subgroup::from_members(g, ker[0]);
  Subgroup k1 = Subgroup::from_members(g, ker[1]);
  bool in_range = cert.kernel_iso.size() == k0.order() &&
                  std::all_of(cert.kernel_iso.begin(), cert.kernel_iso.end(),
                              [&](Elem v) { return v < g.order() && k1.contains(v); });
  add("kernel_iso lands in ker p2", in_range);
  if (in_range) {
    std::vector<Elem> local;
    for (Elem v : cert.kernel_iso) local.push_back(k1.to_local(v));
    add("kernel_iso homomorphism", is_hom_table(k0.group(), k1.group(), local));
    add("kernel_iso bijective",
        k0.order() == k1.order() && image_size(local, k1.order()) == k1.order());
  }
  if (k0.order() <= bounds.isomorphism) {
    add("kernels isomorphic by search",
        find_isomorphism(k0.group(), k1.group(), bounds).has_value(), "independent search");
  }

  for (int d = 0; d < 2; ++d) {
    const std::string tag = "good at N" + std::to_string(d + 1);
    const Goodness& gd = cert.good[d];
    bool shape = !gd.normal.empty() && gd.normal.size() == gd.section.size() &&
                 std::is_sorted(gd.normal.begin(), gd.normal.end()) &&
                 std::all_of(gd.normal.begin(), gd.normal.end(),
                             [&](Elem v) { return v < l[d]->order(); }) &&
                 std::all_of(gd.section.begin(), gd.section.end(),
                             [&](Elem v) { return v < g.order(); });
    if (!shape) {
      add(tag, false, "malformed evidence");
      continue;
    }
    Subgroup n;
    try {
      n = Subgroup::from_members(*l[d], gd.normal);
    } catch (const Error&) {
      add(tag, false, "N is not a subgroup");
      continue;
    }
    bool ok = n.is_normal();
    std::string why = ok ? "" : "N not normal";
    if (ok && !is_hom_table(n.group(), g, gd.section)) ok = false, why = "section not a homomorphism";
    for (Elem m = 0; ok && m < n.order(); ++m)
      if (cert.p[d][gd.section[m]] != gd.normal[m]) ok = false, why = "section does not split p";
    if (ok) {
      std::vector<Elem> img;
      for (Elem x : n.group().generators()) img.push_back(gd.section[x]);
      Subgroup kd = Subgroup::from_members(g, ker[d]);
      if (!commute_elementwise(g, img, kd.generators()))
        ok = false, why = "section does not centralize ker p";
    }
    add(tag, ok, ok ? "|N| = " + std::to_string(n.order()) : why);
  }
  return r;
}

}  // namespace cw
