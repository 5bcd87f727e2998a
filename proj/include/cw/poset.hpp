// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_POSET_HPP_
#define CW_POSET_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cw {

using Node = std::size_t;

// Finite poset on nodes 0..n-1. The relation is closed transitively and
// reflexively on construction and checked for antisymmetry.
class Poset {
 public:
  Poset() = default;
  Poset(std::size_t n, const std::vector<std::pair<Node, Node>>& leq,
        std::vector<std::string> names = {});

  static Poset chain(std::size_t n);
  // Node 0 below nodes 1..leaves.
  static Poset star(std::size_t leaves);
  static Poset antichain(std::size_t n);

  std::size_t size() const { return n_; }
  bool leq(Node i, Node j) const;
  bool less(Node i, Node j) const { return i != j && leq(i, j); }
  const std::string& name(Node i) const;
  std::optional<Node> find(const std::string& name) const;

  std::vector<Node> downset(Node i) const;
  std::vector<Node> upset(Node i) const;
  bool is_cover(Node lower, Node upper) const;
  std::vector<Node> lower_covers(Node i) const;
  std::vector<Node> upper_covers(Node i) const;
  std::vector<Node> minimal() const;
  std::vector<Node> maximal() const;

  bool is_in_forest() const;
  // |downset(i)| - 1; requires the in-forest property.
  std::size_t rank(Node i) const;
  // Greatest common lower bound, if any.
  std::optional<Node> meet(Node i, Node j) const;

 private:
  void check(Node i) const;
  std::size_t n_ = 0;
  std::vector<bool> rel_;
  std::vector<std::string> names_;
};

}  // namespace cw

#endif  // CW_POSET_HPP_
