// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Hybrid wreath products HW(G, H, theta) inside G wr_Omega rho(H), where
// Omega is the set of right cosets of theta(G) in H.

#ifndef CW_HYBRID_HPP_
#define CW_HYBRID_HPP_

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cw/group.hpp"
#include "cw/limits.hpp"
#include "cw/wreath.hpp"

namespace cw {

struct HybridWreath {
  Homomorphism theta;         // G -> H
  Subgroup theta_image;       // theta(G) <= H
  GroupAction omega;          // H on right cosets of theta(G)
  StandardEmbedding iota;     // H -> theta(G) wr rho(H)
  Wreath wreath;              // G wr_Omega rho(H)
  FiniteGroup carrier;        // HW, realized inside the wreath
  Homomorphism standard_map;  // p_theta: HW -> H
  Subgroup kernel;            // ker p_theta
  Subgroup base;              // BW = p_theta^-1(theta(G))
  bool normal = false;

  const FiniteGroup& g() const { return theta.source(); }
  const FiniteGroup& h() const { return theta.target(); }
  std::size_t points() const { return omega.degree(); }
  const std::vector<Elem>& transversal() const { return iota.transversal().reps; }

  WreathElement element(Elem e) const { return wreath.from_perm(carrier.perm(e)); }
  std::optional<Elem> find(const WreathElement& x) const;
  // The h with iota(h) = (theta o f, sigma), if any; membership is exactly
  // the existence of such h.
  std::optional<Elem> standard_value(const WreathElement& x) const;

  std::shared_ptr<const std::map<std::vector<Elem>, Elem>> iota_index;
};

// Throws Undecided when |H| |ker theta|^|Omega| exceeds bounds.enumeration.
HybridWreath hybrid_wreath(const Homomorphism& theta, const Bounds& bounds = {},
                           std::optional<PermutationTransversal> transversal = std::nullopt);

// p_nu: BW -> G for each point nu. Normal hybrids only.
std::vector<Homomorphism> evaluation_maps(const HybridWreath& hw);

struct BwLimit {
  LimitGroup limit;             // star: node 0 is theta(G), node 1 + i is nu_i
  Homomorphism identification;  // BW -> limit
};

// Limit of the star G --Inn(t_nu^-1) o theta--> theta(G) over all nu, with the
// identification BW -> limit. Normal hybrids only.
BwLimit bw_as_limit(const HybridWreath& hw, const Bounds& bounds = {});
// Bijective, and commutes with every evaluation map and with p_theta.
bool verify_bw_limit(const HybridWreath& hw, const BwLimit& bl);

// x in G^Omega with carrier(a) = x^-1 carrier(b) x, for hybrids of the same
// theta built from different transversals.
std::vector<Elem> transversal_independence(const HybridWreath& a, const HybridWreath& b);
bool verify_transversal_conjugator(const HybridWreath& a, const HybridWreath& b,
                                   const std::vector<Elem>& x);

}  // namespace cw

#endif  // CW_HYBRID_HPP_
