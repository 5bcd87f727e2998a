// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_STRUCTURE_HPP_
#define CW_STRUCTURE_HPP_

#include <map>
#include <utility>
#include <vector>

#include "cw/group.hpp"

namespace cw {

Subgroup center(const FiniteGroup& g);
Subgroup centralizer(const FiniteGroup& g, std::span<const Elem> elems);
Subgroup centralizer(const Subgroup& s);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> elems);
// [A, B] for subgroups of the same group.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
Subgroup derived_subgroup(const FiniteGroup& g);
// G = g_1 >= g_2 = [G,G] >= ... until stable.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);

// Element order -> count.
std::map<std::size_t, std::size_t> order_histogram(const FiniteGroup& g);
std::size_t exponent(const FiniteGroup& g);
bool is_elementary_abelian(const FiniteGroup& g);
std::vector<std::size_t> conjugacy_class_sizes(const FiniteGroup& g);

// All subgroups, ordered by (order, members). Undecided past `limit`.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, std::size_t limit = 20000);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, std::size_t limit = 20000);

// Order-p subgroup of the center; throws HypothesisRefuted if p does not
// divide |Z(G)|.
Subgroup central_subgroup_of_order_p(const FiniteGroup& g, std::size_t p);

// For square-free |G|: the normal Sylow subgroup of the largest prime and a
// complement.
std::pair<Subgroup, Subgroup> normal_sylow_and_complement(const FiniteGroup& g);

// Elements commuting pairwise between the two sets.
bool commute_elementwise(const FiniteGroup& g, std::span<const Elem> a,
                         std::span<const Elem> b);

}  // namespace cw

#endif  // CW_STRUCTURE_HPP_
