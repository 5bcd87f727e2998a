// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_GROUP_HPP_
#define CW_GROUP_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cw/error.hpp"

namespace cw {

using Point = std::uint32_t;
using Elem = std::uint32_t;
using Perm = std::vector<Point>;

inline constexpr Elem kNoElem = 0xffffffffu;

// Permutations act on the right: (a*b)[x] = b[a[x]].
Perm perm_identity(std::size_t degree);
Perm perm_mul(std::span<const Point> a, std::span<const Point> b);
Perm perm_inv(std::span<const Point> a);
bool perm_is_identity(std::span<const Point> a);
bool perm_is_valid(std::span<const Point> a);
std::string perm_to_cycles(std::span<const Point> a);

namespace detail {
struct GroupData;
}

// A finite permutation group with all elements enumerated and sorted
// lexicographically by image list. Elements are addressed by index; the
// identity is always index 0. Copies share the underlying data.
class FiniteGroup {
 public:
  // Trivial group of degree 1.
  FiniteGroup();

  static FiniteGroup from_generators(std::size_t degree,
                                     const std::vector<Perm>& generators,
                                     const Bounds& bounds,
                                     std::string label = "");

  // `elements` must be closed under multiplication; this is verified.
  static FiniteGroup from_elements(std::size_t degree,
                                   std::vector<Perm> elements,
                                   std::string label = "");

  std::size_t order() const;
  std::size_t degree() const;
  const std::string& label() const { return label_; }
  FiniteGroup relabeled(std::string label) const;

  std::span<const Point> perm(Elem e) const;
  Perm perm_copy(Elem e) const;

  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long k) const;
  // Inn(g)(h) = g h g^-1.
  Elem conj(Elem g, Elem h) const;
  // [a,b] = a^-1 b^-1 a b.
  Elem commutator(Elem a, Elem b) const;
  std::size_t elem_order(Elem a) const;

  std::optional<Elem> find(std::span<const Point> p) const;
  Elem index_of(std::span<const Point> p) const;

  const std::vector<Elem>& generators() const;
  // e * generators()[j], tabulated.
  Elem right_gen(Elem e, std::size_t j) const;

  bool is_abelian() const;
  bool is_trivial() const { return order() == 1; }
  // Same element list (by identity or by content).
  bool same_as(const FiniteGroup& other) const;

  std::string describe() const;

 private:
  explicit FiniteGroup(std::shared_ptr<const detail::GroupData> d,
                       std::string label);
  static FiniteGroup build(std::size_t degree, std::vector<Perm> sorted,
                           std::vector<Perm> gens, bool choose_gens,
                           std::string label);
  friend class Subgroup;

  std::shared_ptr<const detail::GroupData> d_;
  std::string label_;
};

class Subgroup;

// A group homomorphism stored as a total table. Every constructor validates
// the homomorphism property on all (element, generator) pairs.
class Homomorphism {
 public:
  Homomorphism() = default;

  // Images of src.generators(), in order.
  static Homomorphism from_images(const FiniteGroup& src,
                                  const FiniteGroup& dst,
                                  std::span<const Elem> images,
                                  std::string label = "");
  // Images of an arbitrary generating list of src.
  static Homomorphism from_assignment(const FiniteGroup& src,
                                      const FiniteGroup& dst,
                                      std::span<const Elem> domain_gens,
                                      std::span<const Elem> images,
                                      std::string label = "");
  static Homomorphism from_table(const FiniteGroup& src,
                                 const FiniteGroup& dst,
                                 std::vector<Elem> table,
                                 std::string label = "");
  static Homomorphism identity(const FiniteGroup& g);
  static Homomorphism trivial(const FiniteGroup& src, const FiniteGroup& dst);

  const FiniteGroup& source() const { return src_; }
  const FiniteGroup& target() const { return dst_; }
  const std::string& label() const { return label_; }
  Homomorphism relabeled(std::string label) const;

  Elem operator()(Elem x) const { return (*table_)[x]; }
  const std::vector<Elem>& table() const { return *table_; }
  bool valid() const { return static_cast<bool>(table_); }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  bool is_identity() const;
  Homomorphism inverse() const;

  bool equals(const Homomorphism& other) const;

 private:
  FiniteGroup src_;
  FiniteGroup dst_;
  std::shared_ptr<const std::vector<Elem>> table_;
  std::string label_;
};

// outer o inner.
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

// A subgroup of a FiniteGroup, with a lazily realized FiniteGroup whose
// element i is members()[i].
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated(const FiniteGroup& parent,
                            std::span<const Elem> gens);
  static Subgroup from_members(const FiniteGroup& parent,
                               std::vector<Elem> members);
  static Subgroup whole(const FiniteGroup& parent);
  static Subgroup trivial(const FiniteGroup& parent);

  const FiniteGroup& parent() const;
  std::size_t order() const;
  std::size_t index() const { return parent().order() / order(); }
  const std::vector<Elem>& members() const;
  const std::vector<Elem>& generators() const;
  bool contains(Elem parent_elem) const;

  const FiniteGroup& group() const;
  Elem to_parent(Elem local) const { return members()[local]; }
  Elem to_local(Elem parent_elem) const;
  Homomorphism inclusion() const;

  bool is_normal() const;
  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == parent().order(); }
  bool subset_of(const Subgroup& other) const;
  bool operator==(const Subgroup& other) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

// Restrictions and images.
Subgroup kernel(const Homomorphism& f);
Subgroup image(const Homomorphism& f);
Subgroup image(const Homomorphism& f, const Subgroup& a);
Subgroup preimage(const Homomorphism& f, const Subgroup& b);
// f restricted to a (a <= source).
Homomorphism restrict(const Homomorphism& f, const Subgroup& a);
// f with codomain narrowed to b (image must lie in b).
Homomorphism corestrict(const Homomorphism& f, const Subgroup& b);
Homomorphism restrict(const Homomorphism& f, const Subgroup& a,
                      const Subgroup& b);
// Subgroup of a realized subgroup pushed up to the ambient group.
Subgroup lift(const Subgroup& inner, const Subgroup& outer);
// Subgroup of `outer`'s parent contained in outer, as a subgroup of outer.
Subgroup descend(const Subgroup& s, const Subgroup& outer);

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

}  // namespace cw

#endif  // CW_GROUP_HPP_
