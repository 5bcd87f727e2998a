// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/construct.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "cw/numtheory.hpp"

namespace cw {

FiniteGroup cyclic(std::size_t n) {
  CW_REQUIRE(n >= 1, "cyclic: n must be positive");
  std::string label = "Z" + std::to_string(n);
  if (n == 1) return FiniteGroup().relabeled(label);
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Point>((i + 1) % n);
  Bounds b;
  b.enumeration = std::max(b.enumeration, n);
  return FiniteGroup::from_generators(n, {r}, b, label);
}

FiniteGroup symmetric(std::size_t n) {
  CW_REQUIRE(n >= 1, "symmetric: n must be positive");
  std::string label = "S" + std::to_string(n);
  if (n == 1) return FiniteGroup().relabeled(label);
  CW_REQUIRE(n <= 7, "symmetric: degree too large to enumerate");
  Perm t = perm_identity(n);
  std::swap(t[0], t[1]);
  std::vector<Perm> gens{t};
  if (n >= 3) {
    Perm c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    gens.push_back(c);
  }
  Bounds b;
  b.enumeration = 5040;
  return FiniteGroup::from_generators(n, gens, b, label);
}

FiniteGroup alternating(std::size_t n) {
  CW_REQUIRE(n >= 1, "alternating: n must be positive");
  std::string label = "A" + std::to_string(n);
  CW_REQUIRE(n <= 8, "alternating: degree too large to enumerate");
  if (n < 3) return FiniteGroup::from_generators(n, {}, {}, label);
  std::vector<Perm> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Perm c = perm_identity(n);
    c[0] = 1;
    c[1] = static_cast<Point>(i);
    c[i] = 0;
    gens.push_back(c);
  }
  Bounds b;
  b.enumeration = 20160;
  return FiniteGroup::from_generators(n, gens, b, label);
}

FiniteGroup dihedral(std::size_t order) {
  CW_REQUIRE(order >= 2 && order % 2 == 0, "dihedral: order must be even and positive");
  std::string label = "D" + std::to_string(order);
  std::size_t m = order / 2;
  if (m == 1) return FiniteGroup::from_generators(2, {Perm{1, 0}}, {}, label);
  if (m == 2)
    return FiniteGroup::from_generators(4, {Perm{1, 0, 3, 2}, Perm{2, 3, 0, 1}}, {}, label);
  Perm r(m), s(m);
  for (std::size_t i = 0; i < m; ++i) {
    r[i] = static_cast<Point>((i + 1) % m);
    s[i] = static_cast<Point>((m - i) % m);
  }
  Bounds b;
  b.enumeration = std::max(b.enumeration, order);
  return FiniteGroup::from_generators(m, {r, s}, b, label);
}

FiniteGroup dicyclic(std::size_t order) {
  CW_REQUIRE(order >= 4 && order % 4 == 0, "dicyclic: order must be a positive multiple of 4");
  std::size_t n = order / 4;
  std::size_t two_n = 2 * n;
  auto mul = [n, two_n](std::size_t a, std::size_t b) {
    std::size_t k1 = a % two_n, e1 = a / two_n;
    std::size_t k2 = b % two_n, e2 = b / two_n;
    std::size_t k = (k1 + (e1 ? two_n - k2 : k2)) % two_n;
    std::size_t e = e1 + e2;
    if (e == 2) {
      e = 0;
      k = (k + n) % two_n;
    }
    return k + two_n * e;
  };
  return from_multiplication(order, mul, {1, two_n}, order == 8 ? "Q8" : "Dic" + std::to_string(order));
}

FiniteGroup elementary_abelian(std::size_t p, std::size_t k) {
  CW_REQUIRE(is_prime(p), "elementary_abelian: p must be prime");
  std::string label = "Z" + std::to_string(p) + "^" + std::to_string(k);
  if (k == 0) return FiniteGroup().relabeled(label);
  std::vector<FiniteGroup> f(k, cyclic(p));
  Bounds b;
  return direct_product(f, b).group.relabeled(label);
}

FiniteGroup frobenius(std::size_t p, std::size_t d) {
  CW_REQUIRE(is_prime(p), "frobenius: p must be prime");
  CW_REQUIRE(d >= 1 && (p - 1) % d == 0, "frobenius: d must divide p-1");
  std::size_t u = 1;
  for (std::size_t c = 1; c < p; ++c) {
    std::size_t x = c, ord = 1;
    while (x != 1) {
      x = x * c % p;
      ++ord;
    }
    if (ord == d) {
      u = c;
      break;
    }
  }
  Perm t(p), m(p);
  for (std::size_t i = 0; i < p; ++i) {
    t[i] = static_cast<Point>((i + 1) % p);
    m[i] = static_cast<Point>(i * u % p);
  }
  return FiniteGroup::from_generators(p, {t, m}, {}, "F" + std::to_string(p * d));
}

FiniteGroup from_multiplication(std::size_t n,
                                const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                                const std::vector<std::size_t>& gens,
                                std::string label) {
  std::vector<Perm> perms;
  for (std::size_t g : gens) {
    Perm q(n);
    for (std::size_t x = 0; x < n; ++x) q[x] = static_cast<Point>(mul(x, g));
    CW_REQUIRE(perm_is_valid(q), "multiplication rule is not a group law");
    perms.push_back(std::move(q));
  }
  Bounds b;
  b.enumeration = std::max(b.enumeration, n);
  FiniteGroup g = FiniteGroup::from_generators(n, perms, b, std::move(label));
  CW_REQUIRE(g.order() == n, "multiplication rule generators do not give a regular group");
  return g;
}

Elem Product::element(std::span<const Elem> coords) const {
  CW_REQUIRE(coords.size() == projections.size(), "product coordinate count mismatch");
  Perm p(group.degree());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    auto q = projections[i].target().perm(coords[i]);
    for (std::size_t x = 0; x < q.size(); ++x)
      p[offsets[i] + x] = static_cast<Point>(offsets[i] + q[x]);
  }
  return group.index_of(p);
}

Product direct_product(const std::vector<FiniteGroup>& factors, const Bounds& bounds) {
  CW_REQUIRE(!factors.empty(), "direct_product: no factors");
  Product out;
  std::size_t degree = 0;
  for (const auto& f : factors) {
    out.offsets.push_back(degree);
    degree += f.degree();
  }
  std::vector<Perm> gens;
  std::vector<std::pair<std::size_t, Elem>> origin;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (Elem g : factors[i].generators()) {
      Perm p = perm_identity(degree);
      auto q = factors[i].perm(g);
      for (std::size_t x = 0; x < q.size(); ++x)
        p[out.offsets[i] + x] = static_cast<Point>(out.offsets[i] + q[x]);
      gens.push_back(std::move(p));
      origin.emplace_back(i, g);
    }
  }
  std::string label;
  for (std::size_t i = 0; i < factors.size(); ++i)
    label += (i ? "x" : "") + factors[i].label();
  out.group = FiniteGroup::from_generators(degree, gens, bounds, label);
  const auto& pg = out.group.generators();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<Elem> imgs;
    for (const auto& [k, g] : origin) imgs.push_back(k == i ? g : 0);
    out.projections.push_back(
        Homomorphism::from_images(out.group, factors[i], imgs, "pr" + std::to_string(i + 1)));
    std::vector<Elem> inj;
    for (std::size_t j = 0; j < origin.size(); ++j)
      if (origin[j].first == i) inj.push_back(pg[j]);
    out.injections.push_back(
        Homomorphism::from_images(factors[i], out.group, inj, "in" + std::to_string(i + 1)));
  }
  return out;
}

Quotient quotient(const Subgroup& normal, const Bounds& bounds) {
  CW_REQUIRE(normal.is_normal(), "quotient: subgroup is not normal");
  const FiniteGroup& g = normal.parent();
  std::vector<Elem> coset(g.order(), kNoElem);
  std::vector<Elem> rep;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset[x] != kNoElem) continue;
    Elem c = static_cast<Elem>(rep.size());
    rep.push_back(x);
    for (Elem n : normal.members()) coset[g.mul(n, x)] = c;
  }
  std::size_t m = rep.size();
  std::vector<Perm> gens;
  for (Elem s : g.generators()) {
    Perm p(m);
    for (std::size_t c = 0; c < m; ++c) p[c] = coset[g.mul(rep[c], s)];
    gens.push_back(std::move(p));
  }
  Quotient q;
  q.normal = normal;
  q.group = FiniteGroup::from_generators(m, gens, bounds,
                                         g.label().empty() ? "" : g.label() + "/N");
  q.map = Homomorphism::from_images(g, q.group, q.group.generators(), "quot");
  CW_ASSERT(kernel(q.map) == normal, "quotient: kernel differs from N");
  return q;
}

Semidirect semidirect(const FiniteGroup& p, const FiniteGroup& q,
                      const std::vector<Homomorphism>& action, const Bounds& bounds) {
  CW_REQUIRE(action.size() == q.generators().size(),
             "semidirect: need one automorphism per generator of Q");
  std::vector<Perm> inv_perms;
  for (const auto& a : action) {
    CW_REQUIRE(a.source().same_as(p) && a.target().same_as(p) && a.is_bijective(),
               "semidirect: action entries must be automorphisms of P");
    Perm t(p.order());
    for (Elem x = 0; x < p.order(); ++x) t[a(x)] = x;
    inv_perms.push_back(std::move(t));
  }
  Bounds ab = bounds;
  ab.enumeration = std::max<std::size_t>(ab.enumeration, 1);
  FiniteGroup aut = FiniteGroup::from_generators(p.order(), inv_perms, ab, "Aut");
  // Verifies that the generator assignment is a homomorphism Q -> Aut(P).
  Homomorphism psi = Homomorphism::from_images(q, aut, aut.generators(), "phi");
  bool faithful = psi.is_injective();
  std::size_t degree = p.order() + (faithful ? 0 : q.degree());

  std::vector<Perm> gens;
  for (Elem s : p.generators()) {
    Perm g = perm_identity(degree);
    Elem si = p.inv(s);
    for (Elem x = 0; x < p.order(); ++x) g[x] = p.mul(si, x);
    gens.push_back(std::move(g));
  }
  for (std::size_t j = 0; j < q.generators().size(); ++j) {
    Perm g = perm_identity(degree);
    for (Elem x = 0; x < p.order(); ++x) g[x] = inv_perms[j][x];
    if (!faithful) {
      auto qp = q.perm(q.generators()[j]);
      for (std::size_t y = 0; y < qp.size(); ++y)
        g[p.order() + y] = static_cast<Point>(p.order() + qp[y]);
    }
    gens.push_back(std::move(g));
  }
  Semidirect out;
  out.group = FiniteGroup::from_generators(degree, gens, bounds, p.label() + ":" + q.label());
  CW_ASSERT(out.group.order() == p.order() * q.order(), "semidirect: unexpected order");
  const auto& sg = out.group.generators();
  std::size_t np = p.generators().size();
  out.embed_normal = Homomorphism::from_images(
      p, out.group, std::vector<Elem>(sg.begin(), sg.begin() + np), "inP");
  out.embed_complement = Homomorphism::from_images(
      q, out.group, std::vector<Elem>(sg.begin() + np, sg.end()), "inQ");
  std::vector<Elem> pr(np, 0);
  pr.insert(pr.end(), q.generators().begin(), q.generators().end());
  out.project = Homomorphism::from_images(out.group, q, pr, "prQ");
  return out;
}

namespace {

FiniteGroup factor_from_name(const std::string& tok) {
  CW_REQUIRE(!tok.empty(), "empty group name factor");
  if (tok == "1") return FiniteGroup();
  std::string base = tok;
  std::size_t power = 1;
  if (auto caret = tok.find('^'); caret != std::string::npos) {
    base = tok.substr(0, caret);
    std::string e = tok.substr(caret + 1);
    CW_REQUIRE(!e.empty() && std::all_of(e.begin(), e.end(), ::isdigit),
               "bad exponent in group name: " + tok);
    power = std::stoul(e);
  }
  char kind = base[0];
  std::string num = base.substr(1);
  CW_REQUIRE(!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit),
             "unrecognized group name: " + tok);
  std::size_t n = std::stoul(num);
  FiniteGroup g;
  switch (kind) {
    case 'Z':
    case 'C':
      g = cyclic(n);
      break;
    case 'S':
      g = symmetric(n);
      break;
    case 'A':
      g = alternating(n);
      break;
    case 'D':
      g = dihedral(n);
      break;
    case 'Q':
      g = dicyclic(n);
      break;
    case 'E': {
      auto f = factorize(n);
      CW_REQUIRE(f.size() == 1, "E<n> needs a prime power: " + tok);
      g = elementary_abelian(f[0].first, f[0].second);
      break;
    }
    case 'F': {
      bool found = false;
      auto f = factorize(n);
      for (auto it = f.rbegin(); it != f.rend() && !found; ++it) {
        std::size_t p = it->first;
        if (it->second != 1) continue;
        std::size_t d = n / p;
        if ((p - 1) % d == 0) {
          g = frobenius(p, d);
          found = true;
        }
      }
      CW_REQUIRE(found, "no Frobenius group of order " + num);
      break;
    }
    default:
      throw InvalidArgument("unrecognized group name: " + tok);
  }
  if (power == 1) return g;
  CW_REQUIRE(power >= 1, "exponent must be positive: " + tok);
  return direct_product(std::vector<FiniteGroup>(power, g)).group.relabeled(tok);
}

}  // namespace

FiniteGroup group_from_name(const std::string& name, const Bounds& bounds) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : name) {
    if (c == 'x' || c == '*') {
      toks.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  toks.push_back(cur);
  std::vector<FiniteGroup> fs;
  for (const auto& t : toks) fs.push_back(factor_from_name(t));
  if (fs.size() == 1) return fs[0].relabeled(name);
  return direct_product(fs, bounds).group.relabeled(name);
}

}  // namespace cw
