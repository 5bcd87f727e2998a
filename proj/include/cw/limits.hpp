// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_LIMITS_HPP_
#define CW_LIMITS_HPP_

#include <vector>

#include "cw/group.hpp"
#include "cw/poset.hpp"

namespace cw {

// Map X_upper -> X_lower for lower <= upper.
struct Transition {
  Node lower;
  Node upper;
  Homomorphism map;
};

// Groups indexed by a poset with coherent transitions. Missing non-cover
// transitions are composed from covers; every triple is checked.
class InverseSystem {
 public:
  InverseSystem() = default;
  InverseSystem(Poset poset, std::vector<FiniteGroup> groups,
                const std::vector<Transition>& transitions);

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return groups_.size(); }
  const FiniteGroup& group(Node i) const { return groups_.at(i); }
  // f_{ij}: X_j -> X_i, requires i <= j.
  const Homomorphism& map(Node i, Node j) const;
  bool is_surjective() const;

 private:
  Poset poset_;
  std::vector<FiniteGroup> groups_;
  std::vector<Homomorphism> maps_;  // n*n, valid where i <= j
};

// Level maps phi_i: X_i -> Y_i with g_ij o phi_j = phi_i o f_ij.
class SystemMorphism {
 public:
  SystemMorphism(InverseSystem source, InverseSystem target,
                 std::vector<Homomorphism> level);
  const InverseSystem& source() const { return src_; }
  const InverseSystem& target() const { return dst_; }
  const Homomorphism& level(Node i) const { return level_.at(i); }

 private:
  InverseSystem src_;
  InverseSystem dst_;
  std::vector<Homomorphism> level_;
};

// Subgroups Y_i <= X_i with f_ij(Y_j) <= Y_i.
struct Subsystem {
  std::vector<Subgroup> nodes;

  static Subsystem full(const InverseSystem& x);
  static Subsystem trivial(const InverseSystem& x);
  // Throws InvalidArgument unless this is a subsystem of x.
  void validate(const InverseSystem& x) const;
  // The subsystem as an inverse system in its own right.
  InverseSystem as_system(const InverseSystem& x) const;
};

class LimitGroup {
 public:
  FiniteGroup group;
  std::vector<Homomorphism> projections;  // p_i: limit -> X_i

  std::size_t nodes() const { return projections.size(); }
  Elem coord(Elem e, Node i) const { return projections[i](e); }
  // Element with the given coherent tuple.
  Elem element(std::span<const Elem> tuple) const;
  std::optional<Elem> find(std::span<const Elem> tuple) const;

  std::vector<Node> maximal;       // realized coordinates
  std::vector<std::size_t> offsets;  // point offsets of maximal coordinates
  InverseSystem system;
};

// Coherent-tuple subgroup realized on the disjoint union of the maximal
// nodes' domains. Throws Undecided past bounds.enumeration.
LimitGroup limit(const InverseSystem& x, const Bounds& bounds = {});

Subgroup subsystem_limit(const LimitGroup& lim, const Subsystem& y);
Subsystem preimage_system(const SystemMorphism& phi, const Subsystem& z);
Subsystem kernel_system(const SystemMorphism& phi);
Homomorphism limit_of_morphism(const SystemMorphism& phi, const LimitGroup& src,
                               const LimitGroup& dst);

// Finite sets X_i (sizes) with cover maps f_ij given as tables X_j -> X_i.
struct SetSystem {
  Poset poset;
  std::vector<std::size_t> sizes;
  struct Map {
    Node lower;
    Node upper;
    std::vector<std::size_t> table;
  };
  std::vector<Map> covers;
};

// One coherent tuple, chosen at rank 0 and lifted along unique lower covers.
std::vector<std::size_t> section_of_set_system(const SetSystem& x);

struct ProjectionSystem {
  InverseSystem system;   // X_{i0}
  SystemMorphism morphism;  // X -> X_{i0}
};
ProjectionSystem projection_system(const InverseSystem& x, Node i0);

// Convenience: limit of the star b <- a_1, ..., a_n.
LimitGroup star_limit(const FiniteGroup& base, const std::vector<Homomorphism>& legs,
                      const Bounds& bounds = {});

}  // namespace cw

#endif  // CW_LIMITS_HPP_
