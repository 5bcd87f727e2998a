// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/structure.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cw/numtheory.hpp"

namespace cw {

namespace {

// Closure of `seed` under conjugation by `conjugators`, then generated.
Subgroup conjugation_closure(const FiniteGroup& g, std::vector<Elem> seed,
                             std::span<const Elem> conjugators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> set;
  for (Elem x : seed)
    if (!in[x]) {
      in[x] = true;
      set.push_back(x);
    }
  for (std::size_t i = 0; i < set.size(); ++i)
    for (Elem s : conjugators) {
      Elem y = g.conj(s, set[i]);
      if (!in[y]) {
        in[y] = true;
        set.push_back(y);
      }
    }
  return Subgroup::generated(g, set);
}

std::uint64_t members_hash(const std::vector<Elem>& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem x : m) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> m;
  const auto& gens = g.generators();
  for (Elem x = 0; x < g.order(); ++x) {
    bool c = true;
    for (Elem s : gens)
      if (g.mul(x, s) != g.mul(s, x)) {
        c = false;
        break;
      }
    if (c) m.push_back(x);
  }
  return Subgroup::from_members(g, std::move(m));
}

Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> elems) {
  std::vector<Elem> m;
  for (Elem x = 0; x < g.order(); ++x) {
    bool c = true;
    for (Elem s : elems)
      if (g.mul(x, s) != g.mul(s, x)) {
        c = false;
        break;
      }
    if (c) m.push_back(x);
  }
  return Subgroup::from_members(g, std::move(m));
}

Subgroup centralizer(const Subgroup& s) {
  return centralizer(s.parent(), s.generators());
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  return conjugation_closure(g, std::vector<Elem>(elems.begin(), elems.end()),
                             g.generators());
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  CW_REQUIRE(a.parent().same_as(b.parent()), "commutator of subgroups of different groups");
  const FiniteGroup& g = a.parent();
  std::vector<Elem> seed;
  for (Elem x : a.generators())
    for (Elem y : b.generators()) seed.push_back(g.commutator(x, y));
  std::vector<Elem> conj = a.generators();
  conj.insert(conj.end(), b.generators().begin(), b.generators().end());
  return conjugation_closure(g, std::move(seed), conj);
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  Subgroup w = Subgroup::whole(g);
  return commutator_subgroup(w, w);
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> out{Subgroup::whole(g)};
  Subgroup w = out.front();
  while (true) {
    Subgroup next = commutator_subgroup(out.back(), w);
    if (next.order() == out.back().order()) break;
    out.push_back(next);
  }
  return out;
}

bool is_nilpotent(const FiniteGroup& g) {
  return lower_central_series(g).back().order() == 1;
}

std::map<std::size_t, std::size_t> order_histogram(const FiniteGroup& g) {
  std::map<std::size_t, std::size_t> h;
  for (Elem x = 0; x < g.order(); ++x) ++h[g.elem_order(x)];
  return h;
}

std::size_t exponent(const FiniteGroup& g) {
  std::size_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, g.elem_order(x));
  return e;
}

bool is_elementary_abelian(const FiniteGroup& g) {
  if (!g.is_abelian()) return false;
  if (g.order() == 1) return true;
  std::size_t e = exponent(g);
  return is_prime(e);
}

std::vector<std::size_t> conjugacy_class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> size(g.order(), 0);
  std::vector<Elem> cls;
  std::vector<bool> in(g.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (size[x]) continue;
    cls.assign(1, x);
    in[x] = true;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem s : g.generators()) {
        Elem y = g.conj(s, cls[i]);
        if (!in[y]) {
          in[y] = true;
          cls.push_back(y);
        }
      }
    for (Elem y : cls) size[y] = cls.size();
  }
  return size;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t limit) {
  std::vector<Subgroup> list;
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  auto add = [&](Subgroup s) {
    std::uint64_t h = members_hash(s.members());
    auto range = seen.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (list[it->second].members() == s.members()) return false;
    seen.emplace(h, list.size());
    list.push_back(std::move(s));
    if (list.size() > limit)
      throw Undecided("subgroup enumeration exceeds bound " + std::to_string(limit));
    return true;
  };
  for (Elem x = 0; x < g.order(); ++x) add(Subgroup::generated(g, std::vector<Elem>{x}));
  std::vector<Subgroup> cyclics = list;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (const auto& c : cyclics) {
      if (list[i].contains(c.generators().empty() ? 0 : c.generators()[0])) continue;
      Subgroup j = join(list[i], c);
      add(std::move(j));
    }
  }
  std::sort(list.begin(), list.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return list;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, std::size_t limit) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g, limit))
    if (s.is_normal()) out.push_back(std::move(s));
  return out;
}

Subgroup central_subgroup_of_order_p(const FiniteGroup& g, std::size_t p) {
  CW_REQUIRE(is_prime(p), "central_subgroup_of_order_p: p must be prime");
  Subgroup z = center(g);
  if (z.order() % p != 0)
    throw HypothesisRefuted("p = " + std::to_string(p) + " does not divide |Z(G)| = " +
                            std::to_string(z.order()) + " (group not nilpotent?)");
  for (Elem x : z.members())
    if (g.elem_order(x) == p) return Subgroup::generated(g, std::vector<Elem>{x});
  throw InternalError("central_subgroup_of_order_p: Cauchy scan failed");
}

std::pair<Subgroup, Subgroup> normal_sylow_and_complement(const FiniteGroup& g) {
  if (!is_square_free(g.order()))
    throw HypothesisRefuted("group order " + std::to_string(g.order()) + " is not square-free");
  if (g.order() == 1) return {Subgroup::trivial(g), Subgroup::trivial(g)};
  std::size_t p = prime_divisors(g.order()).back();
  std::vector<Elem> of_order_p;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.elem_order(x) == p) of_order_p.push_back(x);
  if (of_order_p.size() != p - 1)
    throw HypothesisRefuted("Sylow " + std::to_string(p) + "-subgroup is not normal");
  Subgroup sylow = Subgroup::generated(g, std::vector<Elem>{of_order_p.front()});
  CW_ASSERT(sylow.is_normal(), "unique Sylow subgroup must be normal");
  std::size_t m = g.order() / p;
  for (auto& s : all_subgroups(g))
    if (s.order() == m) return {sylow, s};
  throw HypothesisRefuted("no complement to the normal Sylow subgroup");
}

bool commute_elementwise(const FiniteGroup& g, std::span<const Elem> a,
                         std::span<const Elem> b) {
  for (Elem x : a)
    for (Elem y : b)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

}  // namespace cw
