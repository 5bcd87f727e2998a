// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Stretch mode: witnesses too large to enumerate.
//
// The recursion is run as usual down to length 2, where the fiber product is
// kept as pairs of elements of the two enumerated tops. Orders come from a
// stabilizer chain; maps are evaluated per element and checked on generators
// plus random samples.

#ifndef CW_STRETCH_HPP_
#define CW_STRETCH_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "cw/group.hpp"
#include "cw/witness.hpp"

namespace cw {

// Base and strong generating set, by Schreier-Sims with stable transversals.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Perm>& gens);

  std::uint64_t order() const;
  bool contains(const Perm& p) const;
  std::vector<Point> base() const;
  std::size_t strong_generators() const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<std::int32_t> pos;  // orbit index of each point, or -1
    std::vector<Point> orbit;
    std::vector<Perm> u, uinv;      // u[k]: base -> orbit[k]
    std::set<std::pair<std::size_t, std::size_t>> done;
  };
  void add_level(Point base);
  void grow_orbit(std::size_t lvl);
  // Residue of p after sifting from level `from`, and the level where it stopped.
  std::pair<Perm, std::size_t> strip(Perm p, std::size_t from) const;

  std::size_t degree_;
  std::vector<Level> levels_;
};

// (a, b) with a in A, b in B.
struct Pair {
  Elem a = 0, b = 0;
  Elem operator[](int d) const { return d == 0 ? a : b; }
  bool operator==(const Pair&) const = default;
  auto operator<=>(const Pair&) const = default;
};

// A x_C B = {(a, b) : f(a) = g(b)}, never enumerated.
class FiberProduct {
 public:
  FiberProduct() = default;
  FiberProduct(Homomorphism f, Homomorphism g);

  const FiniteGroup& side(int d) const { return d == 0 ? f_.source() : g_.source(); }
  const Homomorphism& leg(int d) const { return d == 0 ? f_ : g_; }
  bool contains(Pair x) const;
  Pair mul(Pair x, Pair y) const;
  Pair inv(Pair x) const;
  // |{a : f(a) in g(B)}| * |ker g|, by counting.
  std::uint64_t order() const;
  std::vector<Pair> generators() const;
  std::size_t degree() const;
  // On the disjoint union of the two domains.
  Perm perm(Pair x) const;
  Pair random(std::mt19937_64& rng) const;
  // Least element of side d over c, if any.
  std::optional<Elem> lift(int d, Elem c) const;
  // Uniform over the fiber of side 1 - d above x's image.
  Elem random_partner(int d, Elem x, std::mt19937_64& rng) const;

 private:
  Homomorphism f_, g_;
  std::array<std::vector<std::vector<Elem>>, 2> fibers_;  // fibers_[d][c] = leg_d^-1(c)
  std::vector<Elem> liftable_;                            // a with f(a) in g(B)
};

// One application of compose_witness on top of a stretch certificate.
struct StretchLayer {
  std::array<Homomorphism, 2> prev_p;  // side group -> previous quotient
  std::array<Homomorphism, 2> pi;      // previous quotient -> new quotient
  std::array<Subgroup, 2> kpi;         // ker pi
  Homomorphism lambda;                 // kpi[0].group() -> kpi[1].group()
  std::array<Subgroup, 2> n_prev;      // designated subgroups before the layer
  std::array<std::vector<Pair>, 2> sec_prev;
};

struct StretchCertificate {
  FiberProduct g;
  std::array<FiniteGroup, 2> quotients;
  std::array<Homomorphism, 2> p;  // p_d(x) = p[d](x[d])
  // Length-2 kernel map (1, b) -> (kinv(b), 1).
  std::array<Subgroup, 2> leg_kernels;
  Homomorphism kinv;  // leg_kernels[1].group() -> leg_kernels[0].group()
  std::vector<StretchLayer> layers;
  std::array<Subgroup, 2> good_domain;
  std::array<std::vector<Pair>, 2> good_section;
  Provenance provenance;

  Elem project(int d, Pair x) const { return p[d](x[d]); }
  // Defined on ker p_1.
  Pair kernel_map(Pair x) const;
  std::vector<Pair> kernel_generators(int d) const;

 private:
  Pair kernel_map_at(std::size_t layer, Pair x) const;
};

// The recursion of build_good_witness with the final fiber product left
// unenumerated. Requires length >= 2.
StretchCertificate build_good_witness_stretch(const GroupSequence& s1, const GroupSequence& s2,
                                              const CompData& comp, const Bounds& bounds = {});
StretchCertificate witness_square_free_stretch(const FiniteGroup& l1, const FiniteGroup& l2,
                                               const Bounds& bounds = {});

struct StretchOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};
VerificationReport verify_stretch(const StretchCertificate& cert, const FiniteGroup& l1,
                                  const FiniteGroup& l2, const StretchOptions& options = {});

}  // namespace cw

#endif  // CW_STRETCH_HPP_
