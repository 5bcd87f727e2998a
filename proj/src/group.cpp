// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/group.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <deque>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cw {

// ---------------------------------------------------------------------------
// Permutations

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), Point{0});
  return p;
}

Perm perm_mul(std::span<const Point> a, std::span<const Point> b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm perm_inv(std::span<const Point> a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<Point>(i);
  return r;
}

bool perm_is_identity(std::span<const Point> a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

bool perm_is_valid(std::span<const Point> a) {
  std::vector<bool> seen(a.size(), false);
  for (Point x : a) {
    if (x >= a.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::string perm_to_cycles(std::span<const Point> a) {
  std::vector<bool> seen(a.size(), false);
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == i) continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
      j = a[j];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

namespace {

std::uint64_t hash_points(const Point* p, std::size_t n) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h ^ (h >> 29);
}

std::size_t table_size_for(std::size_t n) {
  std::size_t s = 16;
  while (s < 2 * n + 1) s <<= 1;
  return s;
}

// Open-addressing set of permutations over a flat store; used for closures.
class PermSet {
 public:
  explicit PermSet(std::size_t degree) : degree_(degree), slots_(64, kNoElem) {}

  std::size_t size() const { return count_; }
  const Point* at(std::size_t i) const { return store_.data() + i * degree_; }

  // Returns index and whether it was newly inserted.
  std::pair<std::size_t, bool> insert(const Point* p) {
    if (2 * (count_ + 1) > slots_.size()) rehash(slots_.size() * 2);
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_points(p, degree_) & mask;
    while (slots_[s] != kNoElem) {
      if (std::memcmp(at(slots_[s]), p, degree_ * sizeof(Point)) == 0)
        return {slots_[s], false};
      s = (s + 1) & mask;
    }
    slots_[s] = static_cast<Elem>(count_);
    store_.insert(store_.end(), p, p + degree_);
    return {count_++, true};
  }

 private:
  void rehash(std::size_t n) {
    std::vector<Elem> fresh(n, kNoElem);
    std::size_t mask = n - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t s = hash_points(at(i), degree_) & mask;
      while (fresh[s] != kNoElem) s = (s + 1) & mask;
      fresh[s] = static_cast<Elem>(i);
    }
    slots_.swap(fresh);
  }

  std::size_t degree_;
  std::size_t count_ = 0;
  std::vector<Point> store_;
  std::vector<Elem> slots_;
};

std::atomic<std::uint64_t> g_next_group_id{1};

constexpr std::size_t kCayleyLimit = 1024;

}  // namespace

// ---------------------------------------------------------------------------
// Group data

namespace detail {

struct GroupData {
  std::uint64_t id = 0;
  std::size_t degree = 1;
  std::size_t order = 1;
  std::vector<Point> elems;
  std::vector<Elem> gens;
  std::vector<Point> base;
  std::vector<Elem> slots;
  std::vector<Elem> right;
  std::vector<Elem> inverse;
  std::vector<Elem> cayley;
  bool abelian = true;
  mutable std::once_flag orders_once;
  mutable std::vector<std::uint32_t> orders;

  const Point* p(Elem e) const { return elems.data() + std::size_t(e) * degree; }

  Elem lookup_base(const Point* imgs) const {
    std::size_t mask = slots.size() - 1;
    std::size_t s = hash_points(imgs, base.size()) & mask;
    while (slots[s] != kNoElem) {
      const Point* q = p(slots[s]);
      bool eq = true;
      for (std::size_t k = 0; k < base.size(); ++k) {
        if (q[base[k]] != imgs[k]) {
          eq = false;
          break;
        }
      }
      if (eq) return slots[s];
      s = (s + 1) & mask;
    }
    return kNoElem;
  }

  Elem mul_slow(Elem a, Elem b) const {
    const Point* pa = p(a);
    const Point* pb = p(b);
    Point buf[64];
    std::vector<Point> big;
    Point* imgs = buf;
    if (base.size() > 64) {
      big.resize(base.size());
      imgs = big.data();
    }
    for (std::size_t k = 0; k < base.size(); ++k) imgs[k] = pb[pa[base[k]]];
    return lookup_base(imgs);
  }

  Elem find(const Point* q) const {
    Point buf[64];
    std::vector<Point> big;
    Point* imgs = buf;
    if (base.size() > 64) {
      big.resize(base.size());
      imgs = big.data();
    }
    for (std::size_t k = 0; k < base.size(); ++k) imgs[k] = q[base[k]];
    Elem e = lookup_base(imgs);
    if (e == kNoElem) return kNoElem;
    if (std::memcmp(p(e), q, degree * sizeof(Point)) != 0) return kNoElem;
    return e;
  }
};

}  // namespace detail

FiniteGroup::FiniteGroup() {
  static const std::shared_ptr<const detail::GroupData> trivial = [] {
    return build(1, {Perm{0}}, {}, false, "1").d_;
  }();
  d_ = trivial;
  label_ = "1";
}

FiniteGroup::FiniteGroup(std::shared_ptr<const detail::GroupData> d,
                         std::string label)
    : d_(std::move(d)), label_(std::move(label)) {}

FiniteGroup FiniteGroup::build(std::size_t degree, std::vector<Perm> sorted,
                               std::vector<Perm> gens, bool choose_gens,
                               std::string label) {
  auto d = std::make_shared<detail::GroupData>();
  d->id = g_next_group_id.fetch_add(1);
  d->degree = degree;
  d->order = sorted.size();
  CW_REQUIRE(!sorted.empty() && perm_is_identity(sorted.front()),
             "group element list must contain the identity");
  d->elems.reserve(d->order * degree);
  for (const Perm& q : sorted) d->elems.insert(d->elems.end(), q.begin(), q.end());
  sorted.clear();
  sorted.shrink_to_fit();

  // Base: points whose images separate all elements.
  {
    std::vector<std::uint32_t> cls(d->order, 0);
    std::size_t classes = 1;
    for (Point x = 0; x < degree && classes < d->order; ++x) {
      std::vector<std::pair<std::uint64_t, Elem>> keys(d->order);
      for (Elem e = 0; e < d->order; ++e)
        keys[e] = {(std::uint64_t(cls[e]) << 32) | d->p(e)[x], e};
      std::sort(keys.begin(), keys.end());
      std::vector<std::uint32_t> ncls(d->order);
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i > 0 && keys[i].first != keys[i - 1].first) ++c;
        ncls[keys[i].second] = c;
      }
      if (c + 1 > classes) {
        classes = c + 1;
        cls.swap(ncls);
        d->base.push_back(x);
      }
    }
    CW_REQUIRE(classes == d->order, "duplicate elements in group element list");
    if (d->base.empty()) d->base.push_back(0);
  }

  d->slots.assign(table_size_for(d->order), kNoElem);
  {
    std::size_t mask = d->slots.size() - 1;
    std::vector<Point> imgs(d->base.size());
    for (Elem e = 0; e < d->order; ++e) {
      for (std::size_t k = 0; k < d->base.size(); ++k) imgs[k] = d->p(e)[d->base[k]];
      std::size_t s = hash_points(imgs.data(), imgs.size()) & mask;
      while (d->slots[s] != kNoElem) s = (s + 1) & mask;
      d->slots[s] = e;
    }
  }

  auto product = [&](Elem a, Elem b) { return d->mul_slow(a, b); };

  if (choose_gens) {
    // Greedy generating set in canonical order; also verifies closure.
    std::vector<bool> in(d->order, false);
    in[0] = true;
    std::vector<Elem> closure{0};
    for (Elem cand = 1; cand < d->order; ++cand) {
      if (in[cand]) continue;
      d->gens.push_back(cand);
      std::fill(in.begin(), in.end(), false);
      closure.assign(1, 0);
      in[0] = true;
      for (std::size_t i = 0; i < closure.size(); ++i) {
        for (Elem g : d->gens) {
          Elem y = product(closure[i], g);
          if (y == kNoElem)
            throw InvalidArgument("element list is not closed under multiplication");
          if (!in[y]) {
            in[y] = true;
            closure.push_back(y);
          }
        }
      }
    }
  } else {
    for (const Perm& g : gens) {
      CW_REQUIRE(g.size() == degree, "generator degree mismatch");
      Elem e = d->find(g.data());
      CW_REQUIRE(e != kNoElem, "generator is not in the element list");
      d->gens.push_back(e);
    }
  }

  const std::size_t ng = d->gens.size();
  d->right.resize(d->order * ng);
  for (Elem e = 0; e < d->order; ++e) {
    for (std::size_t j = 0; j < ng; ++j) {
      Elem y = product(e, d->gens[j]);
      if (y == kNoElem)
        throw InvalidArgument("element list is not closed under multiplication");
      d->right[std::size_t(e) * ng + j] = y;
    }
  }

  d->inverse.resize(d->order);
  {
    Perm q(degree);
    for (Elem e = 0; e < d->order; ++e) {
      const Point* pe = d->p(e);
      for (std::size_t i = 0; i < degree; ++i) q[pe[i]] = static_cast<Point>(i);
      Elem y = d->find(q.data());
      if (y == kNoElem)
        throw InvalidArgument("element list is not closed under inversion");
      d->inverse[e] = y;
    }
  }

  for (std::size_t i = 0; i < ng && d->abelian; ++i)
    for (std::size_t j = i + 1; j < ng && d->abelian; ++j)
      if (product(d->gens[i], d->gens[j]) != product(d->gens[j], d->gens[i]))
        d->abelian = false;

  if (d->order <= kCayleyLimit) {
    d->cayley.resize(d->order * d->order);
    for (Elem a = 0; a < d->order; ++a)
      for (Elem b = 0; b < d->order; ++b)
        d->cayley[std::size_t(a) * d->order + b] = product(a, b);
  }
  return FiniteGroup(std::move(d), std::move(label));
}

FiniteGroup FiniteGroup::from_generators(std::size_t degree,
                                         const std::vector<Perm>& generators,
                                         const Bounds& bounds,
                                         std::string label) {
  CW_REQUIRE(degree >= 1, "degree must be positive");
  for (const Perm& g : generators) {
    CW_REQUIRE(g.size() == degree, "generator has wrong degree");
    CW_REQUIRE(perm_is_valid(g), "generator is not a permutation");
  }
  PermSet set(degree);
  Perm id = perm_identity(degree);
  set.insert(id.data());
  Perm tmp(degree);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (const Perm& g : generators) {
      const Point* a = set.at(i);
      for (std::size_t x = 0; x < degree; ++x) tmp[x] = g[a[x]];
      if (set.insert(tmp.data()).second && set.size() > bounds.enumeration)
        throw Undecided("group order exceeds enumeration bound " +
                        std::to_string(bounds.enumeration));
    }
  }
  std::vector<Perm> elems(set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    elems[i].assign(set.at(i), set.at(i) + degree);
  std::sort(elems.begin(), elems.end());
  return build(degree, std::move(elems), generators, false, std::move(label));
}

FiniteGroup FiniteGroup::from_elements(std::size_t degree,
                                       std::vector<Perm> elements,
                                       std::string label) {
  CW_REQUIRE(degree >= 1, "degree must be positive");
  for (const Perm& g : elements) {
    CW_REQUIRE(g.size() == degree, "element has wrong degree");
    CW_REQUIRE(perm_is_valid(g), "element is not a permutation");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return build(degree, std::move(elements), {}, true, std::move(label));
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  return FiniteGroup(d_, std::move(label));
}

std::size_t FiniteGroup::order() const { return d_->order; }
std::size_t FiniteGroup::degree() const { return d_->degree; }

std::span<const Point> FiniteGroup::perm(Elem e) const {
  return {d_->p(e), d_->degree};
}

Perm FiniteGroup::perm_copy(Elem e) const {
  auto s = perm(e);
  return Perm(s.begin(), s.end());
}

Elem FiniteGroup::mul(Elem a, Elem b) const {
  if (!d_->cayley.empty()) return d_->cayley[std::size_t(a) * d_->order + b];
  if (a == 0) return b;
  if (b == 0) return a;
  return d_->mul_slow(a, b);
}

Elem FiniteGroup::inv(Elem a) const { return d_->inverse[a]; }

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = 0;
  Elem b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

Elem FiniteGroup::conj(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }

Elem FiniteGroup::commutator(Elem a, Elem b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

std::size_t FiniteGroup::elem_order(Elem a) const {
  std::call_once(d_->orders_once, [this] {
    auto& ord = d_->orders;
    ord.assign(d_->order, 0);
    for (Elem e = 0; e < d_->order; ++e) {
      if (ord[e]) continue;
      // Walk the cyclic subgroup once and fill all its elements.
      std::vector<Elem> cyc{0};
      Elem x = e;
      while (x != 0) {
        cyc.push_back(x);
        x = mul(x, e);
      }
      std::size_t n = cyc.size();
      for (std::size_t k = 1; k < n; ++k)
        if (!ord[cyc[k]]) ord[cyc[k]] = static_cast<std::uint32_t>(n / std::gcd(k, n));
      ord[0] = 1;
    }
  });
  return d_->orders[a];
}

std::optional<Elem> FiniteGroup::find(std::span<const Point> p) const {
  if (p.size() != d_->degree) return std::nullopt;
  Elem e = d_->find(p.data());
  if (e == kNoElem) return std::nullopt;
  return e;
}

Elem FiniteGroup::index_of(std::span<const Point> p) const {
  auto e = find(p);
  if (!e) throw InvalidArgument("permutation " + perm_to_cycles(p) +
                                " is not an element of " + describe());
  return *e;
}

const std::vector<Elem>& FiniteGroup::generators() const { return d_->gens; }

Elem FiniteGroup::right_gen(Elem e, std::size_t j) const {
  return d_->right[std::size_t(e) * d_->gens.size() + j];
}

bool FiniteGroup::is_abelian() const { return d_->abelian; }

bool FiniteGroup::same_as(const FiniteGroup& other) const {
  if (d_ == other.d_) return true;
  return d_->degree == other.d_->degree && d_->order == other.d_->order &&
         d_->elems == other.d_->elems;
}

std::string FiniteGroup::describe() const {
  std::ostringstream os;
  os << (label_.empty() ? std::string("group") : label_) << " (order "
     << order() << ", degree " << degree() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Homomorphisms

Homomorphism Homomorphism::from_images(const FiniteGroup& src,
                                       const FiniteGroup& dst,
                                       std::span<const Elem> images,
                                       std::string label) {
  return from_assignment(src, dst, src.generators(), images, std::move(label));
}

Homomorphism Homomorphism::from_assignment(const FiniteGroup& src,
                                           const FiniteGroup& dst,
                                           std::span<const Elem> domain_gens,
                                           std::span<const Elem> images,
                                           std::string label) {
  CW_REQUIRE(domain_gens.size() == images.size(),
             "generator image count mismatch");
  for (Elem y : images) CW_REQUIRE(y < dst.order(), "image out of range");
  for (Elem x : domain_gens) CW_REQUIRE(x < src.order(), "generator out of range");
  std::vector<Elem> table(src.order(), kNoElem);
  table[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem x = queue[i];
    for (std::size_t j = 0; j < domain_gens.size(); ++j) {
      Elem y = src.mul(x, domain_gens[j]);
      Elem v = dst.mul(table[x], images[j]);
      if (table[y] == kNoElem) {
        table[y] = v;
        queue.push_back(y);
      } else if (table[y] != v) {
        throw InvalidArgument("generator assignment does not extend to a homomorphism" +
                              (label.empty() ? std::string() : " (" + label + ")"));
      }
    }
  }
  CW_REQUIRE(queue.size() == src.order(),
             "assigned elements do not generate the source group");
  Homomorphism h;
  h.src_ = src;
  h.dst_ = dst;
  h.table_ = std::make_shared<const std::vector<Elem>>(std::move(table));
  h.label_ = std::move(label);
  return h;
}

Homomorphism Homomorphism::from_table(const FiniteGroup& src,
                                      const FiniteGroup& dst,
                                      std::vector<Elem> table,
                                      std::string label) {
  CW_REQUIRE(table.size() == src.order(), "homomorphism table has wrong size");
  for (Elem y : table) CW_REQUIRE(y < dst.order(), "homomorphism table entry out of range");
  CW_REQUIRE(table[0] == 0, "homomorphism must map identity to identity");
  const auto& gens = src.generators();
  for (Elem x = 0; x < src.order(); ++x) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (table[src.right_gen(x, j)] != dst.mul(table[x], table[gens[j]]))
        throw InvalidArgument("map is not a homomorphism" +
                              (label.empty() ? std::string() : " (" + label + ")"));
    }
  }
  Homomorphism h;
  h.src_ = src;
  h.dst_ = dst;
  h.table_ = std::make_shared<const std::vector<Elem>>(std::move(table));
  h.label_ = std::move(label);
  return h;
}

Homomorphism Homomorphism::identity(const FiniteGroup& g) {
  std::vector<Elem> t(g.order());
  std::iota(t.begin(), t.end(), Elem{0});
  Homomorphism h;
  h.src_ = g;
  h.dst_ = g;
  h.table_ = std::make_shared<const std::vector<Elem>>(std::move(t));
  h.label_ = "id";
  return h;
}

Homomorphism Homomorphism::trivial(const FiniteGroup& src, const FiniteGroup& dst) {
  Homomorphism h;
  h.src_ = src;
  h.dst_ = dst;
  h.table_ = std::make_shared<const std::vector<Elem>>(src.order(), Elem{0});
  h.label_ = "1";
  return h;
}

Homomorphism Homomorphism::relabeled(std::string label) const {
  Homomorphism h = *this;
  h.label_ = std::move(label);
  return h;
}

bool Homomorphism::is_injective() const {
  return kernel(*this).order() == 1;
}

bool Homomorphism::is_surjective() const {
  std::vector<bool> hit(dst_.order(), false);
  std::size_t n = 0;
  for (Elem y : *table_)
    if (!hit[y]) {
      hit[y] = true;
      ++n;
    }
  return n == dst_.order();
}

bool Homomorphism::is_identity() const {
  if (!src_.same_as(dst_)) return false;
  for (Elem x = 0; x < table_->size(); ++x)
    if ((*table_)[x] != x) return false;
  return true;
}

Homomorphism Homomorphism::inverse() const {
  CW_REQUIRE(src_.order() == dst_.order() && is_injective(),
             "inverse of a non-bijective homomorphism");
  std::vector<Elem> t(dst_.order());
  for (Elem x = 0; x < table_->size(); ++x) t[(*table_)[x]] = x;
  return from_table(dst_, src_, std::move(t),
                    label_.empty() ? std::string() : label_ + "^-1");
}

bool Homomorphism::equals(const Homomorphism& other) const {
  return src_.same_as(other.src_) && dst_.same_as(other.dst_) &&
         *table_ == *other.table_;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  CW_REQUIRE(inner.target().same_as(outer.source()),
             "compose: target of inner map (" + inner.target().describe() +
                 ") differs from source of outer map (" +
                 outer.source().describe() + ")");
  std::vector<Elem> t(inner.source().order());
  for (Elem x = 0; x < t.size(); ++x) t[x] = outer(inner(x));
  std::string label;
  if (!outer.label().empty() && !inner.label().empty())
    label = outer.label() + "." + inner.label();
  return Homomorphism::from_table(inner.source(), outer.target(), std::move(t),
                                  std::move(label));
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup::Data {
  FiniteGroup parent;
  std::vector<Elem> members;
  std::vector<Elem> gens;
  std::vector<Elem> pos;
  std::once_flag realized_once;
  FiniteGroup realized;
};

Subgroup Subgroup::generated(const FiniteGroup& parent, std::span<const Elem> gens) {
  std::vector<Elem> g;
  for (Elem x : gens) {
    CW_REQUIRE(x < parent.order(), "subgroup generator out of range");
    if (x != 0 && std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
  }
  std::vector<bool> in(parent.order(), false);
  std::vector<Elem> closure{0};
  in[0] = true;
  for (std::size_t i = 0; i < closure.size(); ++i)
    for (Elem s : g) {
      Elem y = parent.mul(closure[i], s);
      if (!in[y]) {
        in[y] = true;
        closure.push_back(y);
      }
    }
  std::sort(closure.begin(), closure.end());
  Subgroup r;
  r.d_ = std::make_shared<Data>();
  r.d_->parent = parent;
  r.d_->members = std::move(closure);
  r.d_->gens = std::move(g);
  r.d_->pos.assign(parent.order(), kNoElem);
  for (std::size_t i = 0; i < r.d_->members.size(); ++i)
    r.d_->pos[r.d_->members[i]] = static_cast<Elem>(i);
  return r;
}

Subgroup Subgroup::from_members(const FiniteGroup& parent, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  CW_REQUIRE(!members.empty() && members.front() == 0,
             "subgroup must contain the identity");
  for (Elem x : members) CW_REQUIRE(x < parent.order(), "subgroup member out of range");
  std::vector<Elem> pos(parent.order(), kNoElem);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<Elem>(i);
  // Greedy generators; closure must stay inside the member set.
  std::vector<Elem> gens;
  std::vector<bool> in(parent.order(), false);
  in[0] = true;
  std::vector<Elem> closure{0};
  for (Elem cand : members) {
    if (in[cand]) continue;
    gens.push_back(cand);
    for (std::size_t i = 0; i < closure.size(); ++i) {
      // Re-close with all generators (new generator applies to old elements).
      for (Elem s : gens) {
        Elem y = parent.mul(closure[i], s);
        if (pos[y] == kNoElem) throw InvalidArgument("member set is not a subgroup");
        if (!in[y]) {
          in[y] = true;
          closure.push_back(y);
        }
      }
    }
  }
  Subgroup r;
  r.d_ = std::make_shared<Data>();
  r.d_->parent = parent;
  r.d_->members = std::move(members);
  r.d_->gens = std::move(gens);
  r.d_->pos = std::move(pos);
  return r;
}

Subgroup Subgroup::whole(const FiniteGroup& parent) {
  Subgroup r;
  r.d_ = std::make_shared<Data>();
  r.d_->parent = parent;
  r.d_->members.resize(parent.order());
  std::iota(r.d_->members.begin(), r.d_->members.end(), Elem{0});
  r.d_->pos = r.d_->members;
  r.d_->gens = parent.generators();
  return r;
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) {
  return generated(parent, {});
}

const FiniteGroup& Subgroup::parent() const { return d_->parent; }
std::size_t Subgroup::order() const { return d_->members.size(); }
const std::vector<Elem>& Subgroup::members() const { return d_->members; }
const std::vector<Elem>& Subgroup::generators() const { return d_->gens; }

bool Subgroup::contains(Elem e) const {
  return e < d_->pos.size() && d_->pos[e] != kNoElem;
}

Elem Subgroup::to_local(Elem e) const {
  CW_REQUIRE(contains(e), "element is not in the subgroup");
  return d_->pos[e];
}

const FiniteGroup& Subgroup::group() const {
  std::call_once(d_->realized_once, [this] {
    if (is_whole()) {
      d_->realized = d_->parent;
      return;
    }
    const FiniteGroup& p = d_->parent;
    std::vector<Perm> elems;
    elems.reserve(order());
    for (Elem m : d_->members) elems.push_back(p.perm_copy(m));
    std::vector<Perm> gens;
    for (Elem g : d_->gens) gens.push_back(p.perm_copy(g));
    d_->realized = FiniteGroup::build(p.degree(), std::move(elems), std::move(gens),
                                      false, p.label().empty() ? "" : "sub(" + p.label() + ")");
  });
  return d_->realized;
}

Homomorphism Subgroup::inclusion() const {
  return Homomorphism::from_table(group(), parent(), members(), "incl");
}

bool Subgroup::is_normal() const {
  const FiniteGroup& p = parent();
  for (Elem g : p.generators())
    for (Elem n : d_->gens)
      if (!contains(p.conj(g, n))) return false;
  return true;
}

bool Subgroup::subset_of(const Subgroup& other) const {
  if (!parent().same_as(other.parent())) return false;
  for (Elem m : members())
    if (!other.contains(m)) return false;
  return true;
}

bool Subgroup::operator==(const Subgroup& other) const {
  return parent().same_as(other.parent()) && members() == other.members();
}

Subgroup kernel(const Homomorphism& f) {
  std::vector<Elem> m;
  for (Elem x = 0; x < f.source().order(); ++x)
    if (f(x) == 0) m.push_back(x);
  return Subgroup::from_members(f.source(), std::move(m));
}

Subgroup image(const Homomorphism& f) {
  std::vector<Elem> imgs;
  for (Elem g : f.source().generators()) imgs.push_back(f(g));
  return Subgroup::generated(f.target(), imgs);
}

Subgroup image(const Homomorphism& f, const Subgroup& a) {
  CW_REQUIRE(a.parent().same_as(f.source()), "image: subgroup of wrong group");
  std::vector<Elem> imgs;
  for (Elem g : a.generators()) imgs.push_back(f(g));
  return Subgroup::generated(f.target(), imgs);
}

Subgroup preimage(const Homomorphism& f, const Subgroup& b) {
  CW_REQUIRE(b.parent().same_as(f.target()), "preimage: subgroup of wrong group");
  std::vector<Elem> m;
  for (Elem x = 0; x < f.source().order(); ++x)
    if (b.contains(f(x))) m.push_back(x);
  return Subgroup::from_members(f.source(), std::move(m));
}

Homomorphism restrict(const Homomorphism& f, const Subgroup& a) {
  CW_REQUIRE(a.parent().same_as(f.source()), "restrict: subgroup of wrong group");
  std::vector<Elem> t(a.order());
  for (Elem i = 0; i < t.size(); ++i) t[i] = f(a.to_parent(i));
  return Homomorphism::from_table(a.group(), f.target(), std::move(t), f.label());
}

Homomorphism corestrict(const Homomorphism& f, const Subgroup& b) {
  CW_REQUIRE(b.parent().same_as(f.target()), "corestrict: subgroup of wrong group");
  std::vector<Elem> t(f.source().order());
  for (Elem x = 0; x < t.size(); ++x) {
    Elem y = f(x);
    CW_REQUIRE(b.contains(y), "corestrict: image leaves the subgroup");
    t[x] = b.to_local(y);
  }
  return Homomorphism::from_table(f.source(), b.group(), std::move(t), f.label());
}

Homomorphism restrict(const Homomorphism& f, const Subgroup& a, const Subgroup& b) {
  return corestrict(restrict(f, a), b);
}

Subgroup lift(const Subgroup& inner, const Subgroup& outer) {
  CW_REQUIRE(inner.parent().same_as(outer.group()), "lift: subgroup of wrong group");
  std::vector<Elem> gens;
  for (Elem g : inner.generators()) gens.push_back(outer.to_parent(g));
  return Subgroup::generated(outer.parent(), gens);
}

Subgroup descend(const Subgroup& s, const Subgroup& outer) {
  CW_REQUIRE(s.subset_of(outer), "descend: subgroup is not contained in the target");
  std::vector<Elem> gens;
  for (Elem g : s.generators()) gens.push_back(outer.to_local(g));
  return Subgroup::generated(outer.group(), gens);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  CW_REQUIRE(a.parent().same_as(b.parent()), "join: subgroups of different groups");
  std::vector<Elem> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Subgroup::generated(a.parent(), gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  CW_REQUIRE(a.parent().same_as(b.parent()), "intersect: subgroups of different groups");
  std::vector<Elem> m;
  for (Elem x : a.members())
    if (b.contains(x)) m.push_back(x);
  return Subgroup::from_members(a.parent(), std::move(m));
}

}  // namespace cw
