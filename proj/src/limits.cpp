// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/limits.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace cw {

InverseSystem::InverseSystem(Poset poset, std::vector<FiniteGroup> groups,
                             const std::vector<Transition>& transitions)
    : poset_(std::move(poset)), groups_(std::move(groups)) {
  const std::size_t n = poset_.size();
  CW_REQUIRE(n >= 1, "inverse system over an empty poset");
  CW_REQUIRE(groups_.size() == n, "inverse system: one group per node required");
  maps_.resize(n * n);
  for (Node i = 0; i < n; ++i) maps_[i * n + i] = Homomorphism::identity(groups_[i]);
  for (const auto& t : transitions) {
    CW_REQUIRE(t.lower < n && t.upper < n && poset_.less(t.lower, t.upper),
               "transition between non-comparable nodes");
    CW_REQUIRE(t.map.source().same_as(groups_[t.upper]) &&
                   t.map.target().same_as(groups_[t.lower]),
               "transition " + poset_.name(t.upper) + " -> " + poset_.name(t.lower) +
                   " has the wrong source or target");
    maps_[t.lower * n + t.upper] = t.map;
  }
  std::vector<std::tuple<std::size_t, Node, Node>> pairs;
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (poset_.less(i, j)) {
        std::size_t len = 0;
        for (Node k = 0; k < n; ++k) len += poset_.leq(i, k) && poset_.leq(k, j);
        pairs.emplace_back(len, i, j);
      }
  std::sort(pairs.begin(), pairs.end());
  for (auto [len, i, j] : pairs) {
    if (maps_[i * n + j].valid()) continue;
    CW_REQUIRE(!poset_.is_cover(i, j), "missing transition for cover " + poset_.name(i) +
                                            " < " + poset_.name(j));
    for (Node k : poset_.lower_covers(j))
      if (poset_.leq(i, k)) {
        maps_[i * n + j] = compose(maps_[i * n + k], maps_[k * n + j]);
        break;
      }
  }
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j) {
      if (!poset_.leq(i, j)) continue;
      for (Node k = 0; k < n; ++k) {
        if (!poset_.leq(j, k)) continue;
        const auto& fij = maps_[i * n + j];
        const auto& fjk = maps_[j * n + k];
        const auto& fik = maps_[i * n + k];
        for (Elem x = 0; x < groups_[k].order(); ++x)
          CW_REQUIRE(fij(fjk(x)) == fik(x),
                     "transitions do not compose coherently at " + poset_.name(i) + " <= " +
                         poset_.name(j) + " <= " + poset_.name(k));
      }
    }
}

const Homomorphism& InverseSystem::map(Node i, Node j) const {
  CW_REQUIRE(poset_.leq(i, j), "map(i, j) requires i <= j");
  return maps_[i * poset_.size() + j];
}

bool InverseSystem::is_surjective() const {
  const std::size_t n = poset_.size();
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (poset_.is_cover(i, j) && !maps_[i * n + j].is_surjective()) return false;
  return true;
}

SystemMorphism::SystemMorphism(InverseSystem source, InverseSystem target,
                               std::vector<Homomorphism> level)
    : src_(std::move(source)), dst_(std::move(target)), level_(std::move(level)) {
  const std::size_t n = src_.size();
  CW_REQUIRE(dst_.size() == n && level_.size() == n, "system morphism: size mismatch");
  for (Node i = 0; i < n; ++i) {
    CW_REQUIRE(level_[i].source().same_as(src_.group(i)) &&
                   level_[i].target().same_as(dst_.group(i)),
               "system morphism: level map " + std::to_string(i) + " has wrong endpoints");
    for (Node j = 0; j < n; ++j) {
      if (!src_.poset().leq(i, j)) continue;
      CW_REQUIRE(dst_.poset().leq(i, j), "system morphism: posets differ");
      const auto& f = src_.map(i, j);
      const auto& g = dst_.map(i, j);
      for (Elem x = 0; x < src_.group(j).order(); ++x)
        CW_REQUIRE(g(level_[j](x)) == level_[i](f(x)),
                   "system morphism does not commute with transitions");
    }
  }
}

Subsystem Subsystem::full(const InverseSystem& x) {
  Subsystem s;
  for (Node i = 0; i < x.size(); ++i) s.nodes.push_back(Subgroup::whole(x.group(i)));
  return s;
}

Subsystem Subsystem::trivial(const InverseSystem& x) {
  Subsystem s;
  for (Node i = 0; i < x.size(); ++i) s.nodes.push_back(Subgroup::trivial(x.group(i)));
  return s;
}

void Subsystem::validate(const InverseSystem& x) const {
  CW_REQUIRE(nodes.size() == x.size(), "subsystem: node count mismatch");
  for (Node i = 0; i < x.size(); ++i)
    CW_REQUIRE(nodes[i].parent().same_as(x.group(i)), "subsystem: subgroup of wrong group");
  for (Node i = 0; i < x.size(); ++i)
    for (Node j = 0; j < x.size(); ++j) {
      if (!x.poset().less(i, j)) continue;
      for (Elem g : nodes[j].generators())
        CW_REQUIRE(nodes[i].contains(x.map(i, j)(g)),
                   "subsystem: f_ij(Y_j) is not contained in Y_i");
    }
}

InverseSystem Subsystem::as_system(const InverseSystem& x) const {
  validate(x);
  std::vector<FiniteGroup> groups;
  for (const auto& s : nodes) groups.push_back(s.group());
  std::vector<Transition> ts;
  for (Node i = 0; i < x.size(); ++i)
    for (Node j = 0; j < x.size(); ++j)
      if (x.poset().is_cover(i, j))
        ts.push_back({i, j, restrict(x.map(i, j), nodes[j], nodes[i])});
  return InverseSystem(x.poset(), std::move(groups), ts);
}

std::optional<Elem> LimitGroup::find(std::span<const Elem> tuple) const {
  if (tuple.size() != system.size()) return std::nullopt;
  for (Node i = 0; i < system.size(); ++i)
    for (Node j = 0; j < system.size(); ++j)
      if (system.poset().less(i, j) && system.map(i, j)(tuple[j]) != tuple[i])
        return std::nullopt;
  Perm p(group.degree());
  for (std::size_t k = 0; k < maximal.size(); ++k) {
    auto q = system.group(maximal[k]).perm(tuple[maximal[k]]);
    for (std::size_t x = 0; x < q.size(); ++x)
      p[offsets[k] + x] = static_cast<Point>(offsets[k] + q[x]);
  }
  return group.find(p);
}

Elem LimitGroup::element(std::span<const Elem> tuple) const {
  auto e = find(tuple);
  CW_REQUIRE(e.has_value(), "tuple is not a coherent element of the limit");
  return *e;
}

LimitGroup limit(const InverseSystem& x, const Bounds& bounds) {
  const Poset& P = x.poset();
  const std::size_t n = P.size();
  LimitGroup out;
  out.system = x;
  out.maximal = P.maximal();
  std::size_t degree = 0;
  for (Node m : out.maximal) {
    out.offsets.push_back(degree);
    degree += x.group(m).degree();
  }

  // fibers[k][i][v]: elements of X_{m_k} over v in X_i.
  std::vector<std::vector<Node>> below(out.maximal.size());
  std::vector<std::vector<std::vector<std::vector<Elem>>>> fibers(out.maximal.size());
  for (std::size_t k = 0; k < out.maximal.size(); ++k) {
    Node m = out.maximal[k];
    below[k] = P.downset(m);
    fibers[k].resize(n);
    for (Node i : below[k]) {
      if (i == m) continue;
      auto& f = fibers[k][i];
      f.resize(x.group(i).order());
      const auto& t = x.map(i, m);
      for (Elem y = 0; y < x.group(m).order(); ++y) f[t(y)].push_back(y);
    }
  }

  std::vector<Elem> val(n, kNoElem);
  std::vector<Elem> found;  // flat tuples over maximal nodes
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == out.maximal.size()) {
      if (++count > bounds.enumeration)
        throw Undecided("limit order exceeds enumeration bound " +
                        std::to_string(bounds.enumeration));
      for (Node m : out.maximal) found.push_back(val[m]);
      return;
    }
    Node m = out.maximal[k];
    const std::vector<Elem>* cands = nullptr;
    for (Node i : below[k]) {
      if (i == m || val[i] == kNoElem) continue;
      const auto& f = fibers[k][i][val[i]];
      if (!cands || f.size() < cands->size()) cands = &f;
    }
    std::vector<Elem> all;
    if (!cands) {
      all.resize(x.group(m).order());
      for (Elem y = 0; y < all.size(); ++y) all[y] = y;
      cands = &all;
    }
    std::vector<Node> newly;
    for (Elem y : *cands) {
      newly.clear();
      bool ok = true;
      for (Node i : below[k]) {
        Elem v = x.map(i, m)(y);
        if (val[i] == kNoElem) {
          val[i] = v;
          newly.push_back(i);
        } else if (val[i] != v) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
      for (Node i : newly) val[i] = kNoElem;
    }
  };
  rec(0);

  const std::size_t nm = out.maximal.size();
  std::vector<Perm> perms;
  perms.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    Perm p(degree);
    for (std::size_t k = 0; k < nm; ++k) {
      auto q = x.group(out.maximal[k]).perm(found[t * nm + k]);
      for (std::size_t a = 0; a < q.size(); ++a)
        p[out.offsets[k] + a] = static_cast<Point>(out.offsets[k] + q[a]);
    }
    perms.push_back(std::move(p));
  }
  found.clear();
  out.group = FiniteGroup::from_elements(degree, std::move(perms), "lim");

  // Coordinates of each element at every node.
  std::vector<std::vector<Elem>> cols(n, std::vector<Elem>(out.group.order()));
  std::vector<std::size_t> owner(n, 0);
  for (Node i = 0; i < n; ++i)
    for (std::size_t k = 0; k < nm; ++k)
      if (P.leq(i, out.maximal[k])) {
        owner[i] = k;
        break;
      }
  for (Elem e = 0; e < out.group.order(); ++e) {
    auto p = out.group.perm(e);
    std::vector<Elem> mv(nm);
    for (std::size_t k = 0; k < nm; ++k) {
      const auto& g = x.group(out.maximal[k]);
      Perm seg(g.degree());
      for (std::size_t a = 0; a < seg.size(); ++a)
        seg[a] = static_cast<Point>(p[out.offsets[k] + a] - out.offsets[k]);
      mv[k] = g.index_of(seg);
    }
    for (Node i = 0; i < n; ++i) cols[i][e] = x.map(i, out.maximal[owner[i]])(mv[owner[i]]);
  }
  for (Node i = 0; i < n; ++i)
    out.projections.push_back(Homomorphism::from_table(out.group, x.group(i), std::move(cols[i]),
                                                       "p" + P.name(i)));
  return out;
}

Subgroup subsystem_limit(const LimitGroup& lim, const Subsystem& y) {
  y.validate(lim.system);
  std::vector<Elem> m;
  for (Elem e = 0; e < lim.group.order(); ++e) {
    bool in = true;
    for (Node i = 0; i < lim.nodes() && in; ++i) in = y.nodes[i].contains(lim.coord(e, i));
    if (in) m.push_back(e);
  }
  return Subgroup::from_members(lim.group, std::move(m));
}

Subsystem preimage_system(const SystemMorphism& phi, const Subsystem& z) {
  z.validate(phi.target());
  Subsystem s;
  for (Node i = 0; i < phi.source().size(); ++i)
    s.nodes.push_back(preimage(phi.level(i), z.nodes[i]));
  s.validate(phi.source());
  return s;
}

Subsystem kernel_system(const SystemMorphism& phi) {
  return preimage_system(phi, Subsystem::trivial(phi.target()));
}

Homomorphism limit_of_morphism(const SystemMorphism& phi, const LimitGroup& src,
                               const LimitGroup& dst) {
  const std::size_t n = phi.source().size();
  CW_REQUIRE(src.nodes() == n && dst.nodes() == n, "limit_of_morphism: size mismatch");
  for (Node i = 0; i < n; ++i)
    CW_REQUIRE(src.projections[i].target().same_as(phi.source().group(i)) &&
                   dst.projections[i].target().same_as(phi.target().group(i)),
               "limit_of_morphism: limits do not match the morphism");
  std::vector<Elem> table(src.group.order());
  std::vector<Elem> tuple(n);
  for (Elem e = 0; e < src.group.order(); ++e) {
    for (Node i = 0; i < n; ++i) tuple[i] = phi.level(i)(src.coord(e, i));
    table[e] = dst.element(tuple);
  }
  return Homomorphism::from_table(src.group, dst.group, std::move(table), "lim(phi)");
}

std::vector<std::size_t> section_of_set_system(const SetSystem& x) {
  const Poset& P = x.poset;
  CW_REQUIRE(P.is_in_forest(), "section_of_set_system: poset is not in-forest");
  CW_REQUIRE(x.sizes.size() == P.size(), "section_of_set_system: size mismatch");
  std::vector<const SetSystem::Map*> cover_of(P.size(), nullptr);
  for (const auto& m : x.covers) {
    CW_REQUIRE(P.is_cover(m.lower, m.upper), "section_of_set_system: map is not on a cover");
    CW_REQUIRE(m.table.size() == x.sizes[m.upper], "section_of_set_system: map has wrong size");
    for (std::size_t v : m.table)
      CW_REQUIRE(v < x.sizes[m.lower], "section_of_set_system: map value out of range");
    cover_of[m.upper] = &m;
  }
  std::vector<Node> order(P.size());
  for (Node i = 0; i < P.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Node a, Node b) { return P.rank(a) < P.rank(b); });
  std::vector<std::size_t> out(P.size(), 0);
  for (Node i : order) {
    CW_REQUIRE(x.sizes[i] > 0, "section_of_set_system: empty set at node " + P.name(i));
    auto lc = P.lower_covers(i);
    if (lc.empty()) {
      out[i] = 0;
      continue;
    }
    CW_REQUIRE(cover_of[i] && cover_of[i]->lower == lc[0],
               "section_of_set_system: missing cover map into " + P.name(i));
    bool found = false;
    for (std::size_t y = 0; y < x.sizes[i]; ++y)
      if (cover_of[i]->table[y] == out[lc[0]]) {
        out[i] = y;
        found = true;
        break;
      }
    CW_REQUIRE(found, "section_of_set_system: surjectivity violated at node " + P.name(i));
  }
  return out;
}

ProjectionSystem projection_system(const InverseSystem& x, Node i0) {
  const Poset& P = x.poset();
  CW_REQUIRE(P.is_in_forest(), "projection_system: poset is not in-forest");
  const std::size_t n = P.size();
  std::vector<std::optional<Node>> mt(n);
  std::vector<FiniteGroup> groups;
  for (Node i = 0; i < n; ++i) {
    mt[i] = P.meet(i, i0);
    groups.push_back(mt[i] ? x.group(*mt[i]) : FiniteGroup());
  }
  std::vector<Transition> ts;
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j) {
      if (!P.is_cover(i, j)) continue;
      Homomorphism f;
      if (mt[i]) f = x.map(*mt[i], *mt[j]);
      else f = Homomorphism::trivial(groups[j], groups[i]);
      ts.push_back({i, j, f});
    }
  InverseSystem y(P, groups, ts);
  std::vector<Homomorphism> level;
  for (Node i = 0; i < n; ++i)
    level.push_back(mt[i] ? x.map(*mt[i], i) : Homomorphism::trivial(x.group(i), groups[i]));
  return ProjectionSystem{y, SystemMorphism(x, y, std::move(level))};
}

LimitGroup star_limit(const FiniteGroup& base, const std::vector<Homomorphism>& legs,
                      const Bounds& bounds) {
  std::vector<FiniteGroup> groups{base};
  std::vector<Transition> ts;
  for (std::size_t k = 0; k < legs.size(); ++k) {
    CW_REQUIRE(legs[k].target().same_as(base), "star_limit: leg does not end at the base");
    groups.push_back(legs[k].source());
    ts.push_back({0, k + 1, legs[k]});
  }
  return limit(InverseSystem(Poset::star(legs.size()), std::move(groups), ts), bounds);
}

}  // namespace cw
