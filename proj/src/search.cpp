// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cw/numtheory.hpp"
#include "cw/structure.hpp"

namespace cw {

namespace {

using Signature = std::vector<std::size_t>;

// Per element: order, conjugacy class size, and the number of p-th roots for
// each prime p dividing |G|. All are automorphism invariants.
std::vector<Signature> signatures(const FiniteGroup& g) {
  auto primes = prime_divisors(g.order());
  auto cls = conjugacy_class_sizes(g);
  std::vector<Signature> sig(g.order());
  std::vector<std::vector<std::size_t>> roots(primes.size(),
                                              std::vector<std::size_t>(g.order(), 0));
  for (Elem y = 0; y < g.order(); ++y)
    for (std::size_t k = 0; k < primes.size(); ++k)
      ++roots[k][g.pow(y, static_cast<long long>(primes[k]))];
  for (Elem x = 0; x < g.order(); ++x) {
    sig[x].push_back(g.elem_order(x));
    sig[x].push_back(cls[x]);
    for (std::size_t k = 0; k < primes.size(); ++k) sig[x].push_back(roots[k][x]);
  }
  return sig;
}

struct ClassIds {
  std::vector<std::size_t> g, h;
  std::size_t count = 0;
};

ClassIds joint_classes(const std::vector<Signature>& sg, const std::vector<Signature>& sh) {
  std::map<Signature, std::size_t> ids;
  for (const auto& s : sg) ids.emplace(s, 0);
  for (const auto& s : sh) ids.emplace(s, 0);
  std::size_t n = 0;
  for (auto& [k, v] : ids) v = n++;
  ClassIds c;
  c.count = n;
  for (const auto& s : sg) c.g.push_back(ids[s]);
  for (const auto& s : sh) c.h.push_back(ids[s]);
  return c;
}

// Greedy chain x_1, x_2, ... with x_j outside <x_1..x_{j-1}>, visiting
// candidates in the given priority order.
std::vector<Elem> generator_chain(const FiniteGroup& g, const std::vector<Elem>& priority) {
  std::vector<Elem> chain;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  std::vector<Elem> closure{0};
  for (Elem cand : priority) {
    if (closure.size() == g.order()) break;
    if (in[cand]) continue;
    chain.push_back(cand);
    for (std::size_t i = 0; i < closure.size(); ++i)
      for (Elem s : chain) {
        Elem y = g.mul(closure[i], s);
        if (!in[y]) {
          in[y] = true;
          closure.push_back(y);
        }
      }
  }
  return chain;
}

class HomSearch {
 public:
  HomSearch(const FiniteGroup& g, const FiniteGroup& h, std::vector<Elem> chain,
            std::vector<std::vector<Elem>> cands, bool injective, std::size_t max_nodes)
      : g_(g), h_(h), chain_(std::move(chain)), cands_(std::move(cands)),
        injective_(injective), max_nodes_(max_nodes),
        table_(g.order(), kNoElem), used_(h.order(), 0), imgs_(chain_.size(), 0) {
    table_[0] = 0;
    used_[0] = 1;
    assigned_.push_back(0);
  }

  void run(const std::function<bool(const std::vector<Elem>&)>& leaf) {
    leaf_ = &leaf;
    stop_ = false;
    recurse(0);
  }

 private:
  void recurse(std::size_t j) {
    if (stop_) return;
    if (j == chain_.size()) {
      CW_ASSERT(assigned_.size() == g_.order(), "generator chain does not generate");
      if (!(*leaf_)(table_)) stop_ = true;
      return;
    }
    for (Elem c : cands_[j]) {
      if (++nodes_ > max_nodes_)
        throw Undecided("homomorphism search exceeded node budget " +
                        std::to_string(max_nodes_));
      std::size_t mark = assigned_.size();
      if (extend(j, c, mark)) recurse(j + 1);
      undo(mark);
      if (stop_) return;
    }
  }

  bool extend(std::size_t j, Elem c, std::size_t mark) {
    imgs_[j] = c;
    for (std::size_t idx = 0; idx < assigned_.size(); ++idx) {
      Elem x = assigned_[idx];
      std::size_t lo = idx < mark ? j : 0;
      for (std::size_t i = lo; i <= j; ++i) {
        Elem y = g_.mul(x, chain_[i]);
        Elem v = h_.mul(table_[x], imgs_[i]);
        if (table_[y] == kNoElem) {
          if (injective_) {
            if (used_[v]) return false;
            used_[v] = 1;
          }
          table_[y] = v;
          assigned_.push_back(y);
        } else if (table_[y] != v) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (assigned_.size() > mark) {
      Elem y = assigned_.back();
      assigned_.pop_back();
      if (injective_) used_[table_[y]] = 0;
      table_[y] = kNoElem;
    }
  }

  const FiniteGroup& g_;
  const FiniteGroup& h_;
  std::vector<Elem> chain_;
  std::vector<std::vector<Elem>> cands_;
  bool injective_;
  std::size_t max_nodes_;
  std::size_t nodes_ = 0;
  std::vector<Elem> table_;
  std::vector<std::uint8_t> used_;
  std::vector<Elem> imgs_;
  std::vector<Elem> assigned_;
  const std::function<bool(const std::vector<Elem>&)>* leaf_ = nullptr;
  bool stop_ = false;
};

std::uint64_t table_hash(const std::vector<Elem>& t) {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem x : t) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ScreenResult isomorphism_screen(const FiniteGroup& g, const FiniteGroup& h) {
  ScreenResult r;
  auto fail = [&](std::string why) {
    r.passed = false;
    r.reason = std::move(why);
    return r;
  };
  if (g.order() != h.order()) return fail("orders differ");
  if (g.is_abelian() != h.is_abelian()) return fail("abelianness differs");
  if (order_histogram(g) != order_histogram(h)) return fail("element-order histograms differ");
  if (center(g).order() != center(h).order()) return fail("center orders differ");
  if (derived_subgroup(g).order() != derived_subgroup(h).order())
    return fail("derived-subgroup orders differ");
  auto sg = signatures(g), sh = signatures(h);
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return fail("element signature multisets differ");
  return r;
}

void for_each_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                          const std::function<bool(const Homomorphism&)>& visit,
                          const Bounds& bounds) {
  if (g.order() != h.order()) return;
  if (g.order() > bounds.isomorphism)
    throw Undecided("isomorphism search: order " + std::to_string(g.order()) +
                    " exceeds bound " + std::to_string(bounds.isomorphism));
  if (!isomorphism_screen(g, h).passed) return;
  auto cid = joint_classes(signatures(g), signatures(h));
  std::vector<std::size_t> hcount(cid.count, 0);
  for (std::size_t c : cid.h) ++hcount[c];
  std::vector<Elem> priority(g.order());
  std::iota(priority.begin(), priority.end(), Elem{0});
  std::stable_sort(priority.begin(), priority.end(), [&](Elem a, Elem b) {
    std::size_t ca = hcount[cid.g[a]], cb = hcount[cid.g[b]];
    if (ca != cb) return ca < cb;
    return g.elem_order(a) > g.elem_order(b);
  });
  auto chain = generator_chain(g, priority);
  std::vector<std::vector<Elem>> cands(chain.size());
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (Elem y = 0; y < h.order(); ++y)
      if (cid.h[y] == cid.g[chain[j]]) cands[j].push_back(y);
  HomSearch s(g, h, chain, cands, true, bounds.search_nodes);
  std::function<bool(const std::vector<Elem>&)> leaf = [&](const std::vector<Elem>& t) {
    return visit(Homomorphism::from_table(g, h, t, "iso"));
  };
  s.run(leaf);
}

std::optional<Homomorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                             const Bounds& bounds) {
  std::optional<Homomorphism> out;
  for_each_isomorphism(
      g, h,
      [&](const Homomorphism& f) {
        out = f;
        return false;
      },
      bounds);
  return out;
}

void for_each_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                           const std::function<bool(const Homomorphism&)>& visit,
                           const Bounds& bounds) {
  if (g.order() > bounds.isomorphism || h.order() > bounds.isomorphism)
    throw Undecided("homomorphism search exceeds isomorphism bound");
  std::vector<Elem> priority(g.order());
  std::iota(priority.begin(), priority.end(), Elem{0});
  std::stable_sort(priority.begin(), priority.end(),
                   [&](Elem a, Elem b) { return g.elem_order(a) > g.elem_order(b); });
  auto chain = generator_chain(g, priority);
  std::vector<std::vector<Elem>> cands(chain.size());
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (Elem y = 0; y < h.order(); ++y)
      if (g.elem_order(chain[j]) % h.elem_order(y) == 0) cands[j].push_back(y);
  HomSearch s(g, h, chain, cands, false, bounds.search_nodes);
  std::function<bool(const std::vector<Elem>&)> leaf = [&](const std::vector<Elem>& t) {
    return visit(Homomorphism::from_table(g, h, t, "hom"));
  };
  s.run(leaf);
}

Homomorphism inner_automorphism(const FiniteGroup& g, Elem x) {
  std::vector<Elem> t(g.order());
  for (Elem y = 0; y < g.order(); ++y) t[y] = g.conj(x, y);
  return Homomorphism::from_table(g, g, std::move(t), "Inn");
}

Homomorphism restrict_automorphism(const Homomorphism& sigma, const Subgroup& h) {
  CW_REQUIRE(h.parent().same_as(sigma.source()) && sigma.source().same_as(sigma.target()),
             "restrict_automorphism: subgroup of wrong group");
  std::vector<Elem> t(h.order());
  for (Elem i = 0; i < h.order(); ++i) {
    Elem y = sigma(h.to_parent(i));
    CW_REQUIRE(h.contains(y), "restrict_automorphism: subgroup is not invariant");
    t[i] = h.to_local(y);
  }
  return Homomorphism::from_table(h.group(), h.group(), std::move(t), sigma.label());
}

Homomorphism transport(const Homomorphism& sigma, const Homomorphism& f) {
  CW_REQUIRE(f.source().same_as(sigma.source()), "transport: domain mismatch");
  const auto& ft = f.table();
  std::vector<Elem> t(f.target().order());
  for (Elem x = 0; x < ft.size(); ++x) t[ft[x]] = ft[sigma(x)];
  return Homomorphism::from_table(f.target(), f.target(), std::move(t), sigma.label());
}

AutomorphismSet::AutomorphismSet(FiniteGroup g, std::vector<Homomorphism> autos, bool complete)
    : g_(std::move(g)), complete_(complete) {
  for (auto& a : autos) {
    CW_REQUIRE(a.source().same_as(g_) && a.target().same_as(g_),
               "automorphism set member acts on a different group");
    if (find(a.table()) >= 0) continue;
    CW_REQUIRE(a.is_bijective(), "automorphism set member is not bijective");
    index_.emplace(table_hash(a.table()), autos_.size());
    autos_.push_back(std::move(a));
  }
}

long AutomorphismSet::find(const std::vector<Elem>& table) const {
  auto range = index_.equal_range(table_hash(table));
  for (auto it = range.first; it != range.second; ++it)
    if (autos_[it->second].table() == table) return static_cast<long>(it->second);
  return -1;
}

bool AutomorphismSet::is_closed() const {
  for (const auto& a : autos_) {
    std::vector<Elem> inv(g_.order());
    for (Elem x = 0; x < g_.order(); ++x) inv[a(x)] = x;
    if (find(inv) < 0) return false;
    for (const auto& b : autos_) {
      std::vector<Elem> ab(g_.order());
      for (Elem x = 0; x < g_.order(); ++x) ab[x] = a(b(x));
      if (find(ab) < 0) return false;
    }
  }
  return true;
}

AutomorphismSet automorphism_set(const FiniteGroup& g, const Bounds& bounds) {
  if (g.order() > bounds.automorphism)
    throw Undecided("automorphism enumeration: order " + std::to_string(g.order()) +
                    " exceeds bound " + std::to_string(bounds.automorphism));
  Bounds b = bounds;
  b.isomorphism = std::max(b.isomorphism, g.order());
  std::vector<Homomorphism> autos;
  for_each_isomorphism(
      g, g,
      [&](const Homomorphism& f) {
        autos.push_back(f.relabeled("aut"));
        if (autos.size() > bounds.max_automorphisms)
          throw Undecided("automorphism count exceeds bound " +
                          std::to_string(bounds.max_automorphisms));
        return true;
      },
      b);
  std::sort(autos.begin(), autos.end(), [](const Homomorphism& x, const Homomorphism& y) {
    return x.table() < y.table();
  });
  return AutomorphismSet(g, std::move(autos), true);
}

AutomorphismSet inner_automorphisms(const FiniteGroup& g) {
  std::vector<Homomorphism> autos;
  for (Elem x = 0; x < g.order(); ++x) autos.push_back(inner_automorphism(g, x));
  std::sort(autos.begin(), autos.end(), [](const Homomorphism& x, const Homomorphism& y) {
    return x.table() < y.table();
  });
  return AutomorphismSet(g, std::move(autos), true);
}

AutomorphismSet stabilized(const AutomorphismSet& a, const Subgroup& h) {
  CW_REQUIRE(h.parent().same_as(a.group()), "stabilized: subgroup of wrong group");
  std::vector<Homomorphism> out;
  for (const auto& s : a.autos()) {
    bool ok = true;
    for (Elem x : h.generators())
      if (!h.contains(s(x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(s);
  }
  return AutomorphismSet(a.group(), std::move(out), a.complete());
}

AutomorphismSet restricted(const AutomorphismSet& a_h, const Subgroup& h) {
  std::vector<Homomorphism> out;
  for (const auto& s : a_h.autos()) out.push_back(restrict_automorphism(s, h));
  std::sort(out.begin(), out.end(), [](const Homomorphism& x, const Homomorphism& y) {
    return x.table() < y.table();
  });
  return AutomorphismSet(h.group(), std::move(out), a_h.complete());
}

AutomorphismSet conjugate_transport(const AutomorphismSet& a, const Homomorphism& f) {
  CW_REQUIRE(f.is_bijective(), "conjugate_transport: map is not bijective");
  std::vector<Homomorphism> out;
  for (const auto& s : a.autos()) out.push_back(transport(s, f));
  return AutomorphismSet(f.target(), std::move(out), a.complete());
}

}  // namespace cw
