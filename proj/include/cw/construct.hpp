// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_CONSTRUCT_HPP_
#define CW_CONSTRUCT_HPP_

#include <functional>
#include <string>
#include <vector>

#include "cw/group.hpp"

namespace cw {

FiniteGroup cyclic(std::size_t n);
FiniteGroup symmetric(std::size_t n);
FiniteGroup alternating(std::size_t n);
// Dihedral group of the given order (order 2n, symmetries of an n-gon).
FiniteGroup dihedral(std::size_t order);
// Dicyclic group of the given order (a multiple of 4); order 8 is Q8.
FiniteGroup dicyclic(std::size_t order);
FiniteGroup elementary_abelian(std::size_t p, std::size_t k);
// Z_p x| Z_d with d | p-1 acting faithfully by multiplication.
FiniteGroup frobenius(std::size_t p, std::size_t d);

// Right regular representation of a group given by a multiplication rule on
// {0..n-1} with identity 0. The listed elements are used as generators.
FiniteGroup from_multiplication(std::size_t n,
                                const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                                const std::vector<std::size_t>& gens,
                                std::string label);

struct Product {
  FiniteGroup group;
  std::vector<Homomorphism> projections;
  std::vector<Homomorphism> injections;
  std::vector<std::size_t> offsets;  // point offset of each factor

  // Element with the given coordinates.
  Elem element(std::span<const Elem> coords) const;
};

// External direct product on the disjoint union of the factor domains.
Product direct_product(const std::vector<FiniteGroup>& factors,
                       const Bounds& bounds = {});

struct Quotient {
  FiniteGroup group;
  Homomorphism map;  // canonical surjection
  Subgroup normal;
};

// G/N acting on the right cosets of N (ordered by least element).
Quotient quotient(const Subgroup& normal, const Bounds& bounds = {});

// P x|_phi Q where phi(q) is given, per generator of Q, as an automorphism
// of P. The assignment is verified to define a homomorphism Q -> Aut(P).
struct Semidirect {
  FiniteGroup group;
  Homomorphism embed_normal;      // P -> P x| Q
  Homomorphism embed_complement;  // Q -> P x| Q
  Homomorphism project;           // P x| Q -> Q
};
Semidirect semidirect(const FiniteGroup& p, const FiniteGroup& q,
                      const std::vector<Homomorphism>& action,
                      const Bounds& bounds = {});

// Parses names such as "Z4", "Z2xZ2", "S3", "D8", "Q8", "A4", "F21",
// "E8" (elementary abelian 2^3), "Z7xS3". Factors are joined with 'x'.
FiniteGroup group_from_name(const std::string& name, const Bounds& bounds = {});

}  // namespace cw

#endif  // CW_CONSTRUCT_HPP_
