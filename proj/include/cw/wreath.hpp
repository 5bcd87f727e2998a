// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

// Group actions, wreath products and the standard embedding.
//
// Actions are on the right. A wreath element is a pair (f, h) with f a tuple
// over the domain and h an element of the acting group; the product is
//   (f1, h1)(f2, h2) = (nu -> f1(nu) f2(nu^h1), h1 h2),
// i.e. the semidirect product for the twist f^h(w) = f(w^{h^-1}).

#ifndef CW_WREATH_HPP_
#define CW_WREATH_HPP_

#include <optional>
#include <vector>

#include "cw/group.hpp"

namespace cw {

class GroupAction {
 public:
  GroupAction() = default;
  // images[k] is the permutation of {0..degree-1} induced by generators()[k].
  GroupAction(FiniteGroup group, std::size_t degree, const std::vector<Perm>& images);
  // A permutation group on its own points.
  static GroupAction natural(const FiniteGroup& group);

  const FiniteGroup& group() const { return group_; }
  std::size_t degree() const { return degree_; }
  Point act(Point w, Elem g) const { return table_[std::size_t(g) * degree_ + w]; }
  Perm perm_of(Elem g) const;

  bool is_transitive() const;
  bool is_faithful() const;
  Subgroup stabilizer(Point w) const;
  Subgroup kernel() const;
  // rho: G -> rho(G) <= Sym(domain).
  const Homomorphism& image_map() const;

 private:
  FiniteGroup group_;
  std::size_t degree_ = 0;
  std::vector<Point> table_;
  std::shared_ptr<Homomorphism> rho_;
};

// Right cosets Kx of k in its parent, numbered by minimal element; the coset
// K itself is 0. Entry e is the coset containing e.
std::vector<Point> right_cosets(const Subgroup& k);
GroupAction coset_action(const Subgroup& k);

struct PermutationTransversal {
  Point basepoint = 0;
  std::vector<Elem> reps;  // w^{reps[v]} = v, reps[basepoint] = 1
};

// Minimal element per point, with the identity at the basepoint.
PermutationTransversal default_transversal(const GroupAction& a, Point basepoint = 0);
void validate_transversal(const GroupAction& a, const PermutationTransversal& t);

struct WreathElement {
  std::vector<Elem> f;
  Elem top = 0;
  bool operator==(const WreathElement&) const = default;
};

// G wr_Omega H for an action of H on Omega.
class Wreath {
 public:
  Wreath() = default;
  Wreath(FiniteGroup base, GroupAction top);

  const FiniteGroup& base() const { return base_; }
  const GroupAction& action() const { return top_; }
  const FiniteGroup& top() const { return top_.group(); }
  std::size_t points() const { return top_.degree(); }
  // |G|^|Omega| |H|, or nothing on overflow.
  std::optional<std::size_t> order() const;

  WreathElement identity() const;
  WreathElement mul(const WreathElement& a, const WreathElement& b) const;
  WreathElement inv(const WreathElement& a) const;
  WreathElement conj(const WreathElement& x, const WreathElement& a) const;  // x a x^-1
  // f^h(w) = f(w^{h^-1}).
  std::vector<Elem> twist(const std::vector<Elem>& f, Elem h) const;
  WreathElement base_element(std::vector<Elem> f) const { return {std::move(f), 0}; }
  WreathElement top_element(Elem h) const;

  // Faithful realization on Omega x dom(G) followed by dom(H).
  std::size_t degree() const;
  Perm to_perm(const WreathElement& x) const;
  WreathElement from_perm(std::span<const Point> p) const;

  // Subgroup generated by `gens`, realized as a permutation group.
  FiniteGroup generated(const std::vector<WreathElement>& gens, const Bounds& bounds,
                        std::string label = "") const;
  // The whole wreath product. Throws Undecided past bounds.enumeration.
  FiniteGroup realize(const Bounds& bounds = {}) const;

 private:
  FiniteGroup base_;
  GroupAction top_;
};

// iota: G -> G_w wr_Omega rho(G), g -> (f_g, rho(g)), f_g(v) = t_v g t_{v^g}^-1.
class StandardEmbedding {
 public:
  StandardEmbedding() = default;
  StandardEmbedding(GroupAction action, PermutationTransversal transversal);

  const GroupAction& action() const { return action_; }
  const PermutationTransversal& transversal() const { return transversal_; }
  const Subgroup& stabilizer() const { return stab_; }
  // Stabilizer group (local indices) by rho(G) on Omega.
  const Wreath& wreath() const { return wreath_; }

  // f_g with entries as elements of G.
  std::vector<Elem> tuple(Elem g) const;
  WreathElement operator()(Elem g) const;
  // Checks homomorphism and injectivity over all elements.
  bool verify() const;

 private:
  GroupAction action_;
  PermutationTransversal transversal_;
  Subgroup stab_;
  Wreath wreath_;
};

// f with f(v) = s_v t_v^-1 (entries in G), so lambda = Inn(f) o iota.
std::vector<Elem> embedding_conjugator(const StandardEmbedding& iota,
                                       const StandardEmbedding& lambda);
// lambda(g) == f iota(g) f^-1 for every g.
bool verify_conjugator(const StandardEmbedding& iota, const StandardEmbedding& lambda,
                       const std::vector<Elem>& f);

// eta wr_phi psi: (f, h) -> (eta o f o phi^-1, psi(h)).
class WreathMap {
 public:
  WreathMap(Homomorphism eta, Wreath source, Wreath target, std::vector<Point> phi,
            Homomorphism psi);
  const Wreath& source() const { return src_; }
  const Wreath& target() const { return dst_; }
  WreathElement operator()(const WreathElement& x) const;
  bool is_surjective() const { return eta_.is_surjective(); }
  // Table between realizations of source and target.
  Homomorphism realize(const FiniteGroup& source_group, const FiniteGroup& target_group) const;

 private:
  Homomorphism eta_;
  Wreath src_;
  Wreath dst_;
  std::vector<Point> phi_;
  std::vector<Point> phi_inv_;
  Homomorphism psi_;
};

WreathMap wreath_of_homomorphisms(const Homomorphism& eta, const Wreath& source,
                                  const Wreath& target, const std::vector<Point>& phi,
                                  const Homomorphism& psi);

}  // namespace cw

#endif  // CW_WREATH_HPP_
