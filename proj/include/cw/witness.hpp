// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Group sequences, the Comp condition and good witness systems.
//
// A witness system for (L1, L2) is a group G with surjections p_d: G -> L_d
// whose kernels are isomorphic. Certificates store every map as a raw table so
// that verification never trusts the constructor.

#ifndef CW_WITNESS_HPP_
#define CW_WITNESS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cw/group.hpp"
#include "cw/hybrid.hpp"
#include "cw/limits.hpp"
#include "cw/search.hpp"

namespace cw {

// S_l -> S_{l-1} -> ... -> S_0 = 1.
class GroupSequence {
 public:
  GroupSequence() = default;
  // maps[i - 1] is pi_i: groups[i] -> groups[i - 1].
  GroupSequence(std::vector<FiniteGroup> groups, std::vector<Homomorphism> maps);

  std::size_t length() const { return groups_.size() - 1; }
  const FiniteGroup& group(std::size_t i) const { return groups_.at(i); }
  const FiniteGroup& top() const { return groups_.back(); }
  const Homomorphism& map(std::size_t i) const { return maps_.at(i - 1); }
  const Subgroup& kernel(std::size_t i) const { return kernels_.at(i - 1); }
  bool is_surjective() const;
  // S_l -> S_i.
  Homomorphism down(std::size_t i) const;

 private:
  std::vector<FiniteGroup> groups_;
  std::vector<Homomorphism> maps_;
  std::vector<Subgroup> kernels_;
};

// chain[0] = 1 <= chain[1] <= ... <= chain[l] = L, all normal in L.
// S_i = L / chain[l - i], with S_l = L itself.
GroupSequence series_to_sequence(const FiniteGroup& l, const std::vector<Subgroup>& chain,
                                 const Bounds& bounds = {});
// chain[j] = ker(S_l -> S_{l-j}).
std::vector<Subgroup> sequence_to_series(const GroupSequence& s);
// Inserts trivial factors so that the factor orders of a and b line up.
std::pair<std::vector<Subgroup>, std::vector<Subgroup>> pad_series(std::vector<Subgroup> a,
                                                                  std::vector<Subgroup> b);

GroupSequence contraction(const GroupSequence& s);
// G --f--> S_l -> ... ; f must end at s.top().
GroupSequence concatenation(const FiniteGroup& g, const Homomorphism& f, const GroupSequence& s);
bool almost_equal(const GroupSequence& s, const GroupSequence& t);
// Top becomes the pullback of the two tops over S_{l-1}.
GroupSequence sharp(const GroupSequence& s, const GroupSequence& t, const Bounds& bounds = {});

// Level isomorphisms ker pi_{i;1} -> ker pi_{i;2} for i = 1..l (entry 0 unused),
// or nothing when some pair of kernels is not isomorphic.
std::optional<std::vector<Homomorphism>> compatibility_isos(const GroupSequence& s1,
                                                            const GroupSequence& s2,
                                                            const Bounds& bounds = {});

// A homomorphic section of pi over N: pi(s(m)) = m, s(N) commuting with ker pi.
// Every M <= N then has the complement s(M) in pi^-1(M).
struct Section {
  Subgroup domain;  // N <= pi.target()
  Homomorphism map;  // N.group() -> pi.source()
};
// Homomorphism, splitting, and elementwise commuting with ker pi.
bool verify_section(const Homomorphism& pi, const Section& s);

struct Extendability {
  bool extendable = false;
  // (M, C) for every M <= N on success.
  std::vector<std::pair<Subgroup, Subgroup>> complements;
  std::optional<Subgroup> failing;  // the first M without a complement
};
// Searches every M <= N for C <= pi^-1(M) with C = M x 1, C meeting ker pi
// trivially and centralizing it. Throws Undecided past the search bounds.
Extendability is_trivially_extendable(const Homomorphism& pi, const Subgroup& n,
                                      const Bounds& bounds = {});

// sigmas[i]: ker pi_{i;1} -> ker pi_{i;2} for 1 <= i <= l; only 2..l-1 are
// constrained. For d in {0, 1} (sides 1 and 2):
//   taus[d][i][x]   in S_{i;d}, x in S_{i-1;d}, the minimal preimage;
//   alphas[d][i][x] an automorphism of S_{i;d} stabilizing ker pi_{i;d},
//                   x in S_{i-1;1-d}, restricting on the kernel to
//                   s o Inn(taus[1-d][i][x]^-1) o s^-1 with s: K_{1-d} -> K_d.
struct CompData {
  std::size_t length = 0;
  std::vector<Homomorphism> sigmas;
  std::array<std::vector<std::vector<Elem>>, 2> taus;
  std::array<std::vector<std::vector<Homomorphism>>, 2> alphas;
  std::vector<bool> central;  // level kernels central on both sides
};

// Throws HypothesisRefuted for incompatible sequences, Undecided past the
// automorphism bounds. Nothing when no sigma satisfies the condition.
std::optional<CompData> comp_membership(const GroupSequence& s1, const GroupSequence& s2,
                                        const Bounds& bounds = {});
// Re-checks the restriction identity for every level and x.
bool verify_comp_data(const GroupSequence& s1, const GroupSequence& s2, const CompData& c);

struct Provenance {
  std::string kind;  // length2 | induction-compose | hybrid | limit | hand
  std::string label;
  std::size_t order = 0;
  std::vector<std::string> evidence;
  std::vector<Provenance> children;
};

// Designated N <= L with its section into G.
struct Goodness {
  std::vector<Elem> normal;   // members of N in L, ascending
  std::vector<Elem> section;  // section[k]: image in G of normal[k]
};

struct WitnessCertificate {
  FiniteGroup g;
  std::array<FiniteGroup, 2> quotients;   // L1, L2
  std::array<std::vector<Elem>, 2> p;     // tables G -> L_d
  std::array<std::vector<Elem>, 2> kernels;  // ker p_d, ascending
  std::vector<Elem> kernel_iso;           // kernels[0][k] -> element of kernels[1]
  std::array<Goodness, 2> good;
  Provenance provenance;

  Homomorphism projection(int d) const;
  Subgroup kernel(int d) const;
  // kernel(0).group() -> kernel(1).group().
  Homomorphism kernel_map() const;
  Section section(int d) const;
};

// Fiber product over S_1. isos are the level isomorphisms (entries 1 and 2).
WitnessCertificate build_witness_length2(const GroupSequence& s1, const GroupSequence& s2,
                                         const std::vector<Homomorphism>& isos,
                                         const Bounds& bounds = {});
WitnessCertificate build_witness_length2(const GroupSequence& s1, const GroupSequence& s2,
                                         const Bounds& bounds = {});

// (G, pi_1 o p_1, pi_2 o p_2). ker pi_d must lie in the designated N_d of cert.
// lambda: ker pi_1 -> ker pi_2 (searched when absent). With pi_sections the
// result is good at their domains, otherwise at the trivial subgroups.
WitnessCertificate compose_witness(const WitnessCertificate& cert,
                                   const std::array<Homomorphism, 2>& pi,
                                   std::optional<Homomorphism> lambda = std::nullopt,
                                   const std::optional<std::array<Section, 2>>& pi_sections =
                                       std::nullopt,
                                   const Bounds& bounds = {});

// One recursion step at level l >= 3 for (S1, S2) in Comp_l. Index d is the
// side minus one throughout.
struct RecursionStep {
  std::size_t level = 0;
  std::array<LimitGroup, 2> g;          // G_d: copies of S_{l;d} indexed by S_{l-2;1-d}
  std::array<Homomorphism, 2> rho;      // G_d -> S_{l;d}, first copy
  std::array<Subgroup, 2> t;            // T_d = ker(S_{l;d} -> S_{l-2;d})
  std::array<Homomorphism, 2> theta;    // T_{1-d}.group() -> S_{l-1;d}
  std::array<HybridWreath, 2> h;        // H_d = HW(T_{1-d}, S_{l-1;d}, theta_d)
  std::array<Homomorphism, 2> phi;      // H_d -> S_{l-1;d}
  std::array<Subgroup, 2> eta_target;   // ker(pi_{l-1} pi_l rho_d) <= G_d
  std::array<Homomorphism, 2> eta;      // BW_d -> eta_target[1-d]
  std::array<bool, 2> squares_commute{};
  std::array<LimitGroup, 2> top;        // S_{l+1;d}: node 1 = G_d, node 2 = H_d
  std::array<Homomorphism, 2> pi_next;  // S_{l+1;d} -> S_{l;d}
  std::array<Section, 2> sections;      // of pi_next over ker pi_{l;d}
  std::array<Section, 2> rho_sections;  // of rho_d over ker pi_{l;d}
  Homomorphism kappa;   // ker(S_{l+1;1} -> S_{l-2;1}) -> same on side 2
  std::vector<Homomorphism> chain;  // ker pi_next_1 -> ... -> ker pi_next_2
  Homomorphism lambda;  // composite of chain
};

RecursionStep build_recursion_step(const GroupSequence& s1, const GroupSequence& s2,
                                   const CompData& comp, const Bounds& bounds = {});
// The pair of contracted sequences S_{l+1} -> S_{l-2} -> ... of length l - 1.
std::array<GroupSequence, 2> reduced_sequences(const GroupSequence& s1, const GroupSequence& s2,
                                               const RecursionStep& step);
// Comp data for the reduced pair: levels below l - 1 kept, kappa on top.
CompData reduced_comp_data(const CompData& comp, const RecursionStep& step,
                           const std::array<GroupSequence, 2>& reduced);

WitnessCertificate build_good_witness(const GroupSequence& s1, const GroupSequence& s2,
                                      const Bounds& bounds = {});
WitnessCertificate build_good_witness(const GroupSequence& s1, const GroupSequence& s2,
                                      const CompData& comp, const Bounds& bounds = {});

// Series by repeated central subgroups of the least prime order.
std::vector<Subgroup> central_series(const FiniteGroup& l);
// 1 <= P_1 <= P_1 P_2 <= ... by successive normal Sylow subgroups, largest prime first.
std::vector<Subgroup> square_free_series(const FiniteGroup& l);

WitnessCertificate witness_nilpotent(const FiniteGroup& l1, const FiniteGroup& l2,
                                     const Bounds& bounds = {});
WitnessCertificate witness_square_free(const FiniteGroup& l1, const FiniteGroup& l2,
                                       const Bounds& bounds = {});

// G = Z_p x Z_{p^2} x ... x Z_{p^n}, L1 = Z_p^n, L2 = Z_{p^n}, good at
// (<x_1>, <y^{p^{n-1}}>).
WitnessCertificate goodwit_certificate(std::size_t p, std::size_t n);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct VerificationReport {
  std::vector<Check> checks;
  bool passed() const;
  const Check* find(const std::string& name) const;
};
VerificationReport verify_witness(const WitnessCertificate& cert, const FiniteGroup& l1,
                                  const FiniteGroup& l2, const Bounds& bounds = {});

}  // namespace cw

#endif  // CW_WITNESS_HPP_
