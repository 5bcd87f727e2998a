// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_SEARCH_HPP_
#define CW_SEARCH_HPP_

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cw/group.hpp"

namespace cw {

// Cheap isomorphism invariants. Two groups failing this screen are
// certified non-isomorphic.
struct ScreenResult {
  bool passed = true;
  std::string reason;  // first failing invariant
};
ScreenResult isomorphism_screen(const FiniteGroup& g, const FiniteGroup& h);

// Bijective homomorphism g -> h, or nullopt when none exists.
// Throws Undecided when |g| exceeds bounds.isomorphism or the node budget
// runs out.
std::optional<Homomorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                             const Bounds& bounds = {});

// Visits every isomorphism g -> h in a fixed canonical order (images of a
// fixed generator chain, ascending). The visitor returns false to stop.
void for_each_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                          const std::function<bool(const Homomorphism&)>& visit,
                          const Bounds& bounds = {});

// Visits every homomorphism g -> h (small groups only).
void for_each_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                           const std::function<bool(const Homomorphism&)>& visit,
                           const Bounds& bounds = {});

Homomorphism inner_automorphism(const FiniteGroup& g, Elem x);
// sigma restricted to an invariant subgroup, as an automorphism of h.group().
Homomorphism restrict_automorphism(const Homomorphism& sigma, const Subgroup& h);
// f o sigma o f^-1 for a bijection f.
Homomorphism transport(const Homomorphism& sigma, const Homomorphism& f);

class AutomorphismSet {
 public:
  AutomorphismSet() = default;
  AutomorphismSet(FiniteGroup g, std::vector<Homomorphism> autos, bool complete);

  const FiniteGroup& group() const { return g_; }
  const std::vector<Homomorphism>& autos() const { return autos_; }
  std::size_t size() const { return autos_.size(); }
  bool complete() const { return complete_; }

  // Index of an equal automorphism, or -1.
  long find(const std::vector<Elem>& table) const;
  bool contains(const Homomorphism& sigma) const { return find(sigma.table()) >= 0; }
  bool is_closed() const;

 private:
  FiniteGroup g_;
  std::vector<Homomorphism> autos_;
  std::unordered_multimap<std::uint64_t, std::size_t> index_;
  bool complete_ = false;
};

AutomorphismSet automorphism_set(const FiniteGroup& g, const Bounds& bounds = {});
AutomorphismSet inner_automorphisms(const FiniteGroup& g);
// A_H = {sigma in A : sigma(H) = H}.
AutomorphismSet stabilized(const AutomorphismSet& a, const Subgroup& h);
// A^H = {sigma|_H : sigma in A_H} as automorphisms of h.group().
AutomorphismSet restricted(const AutomorphismSet& a_h, const Subgroup& h);
// f_bullet(A) for a bijection f: A.group() -> G'.
AutomorphismSet conjugate_transport(const AutomorphismSet& a, const Homomorphism& f);

}  // namespace cw

#endif  // CW_SEARCH_HPP_
