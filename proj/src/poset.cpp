// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include "cw/poset.hpp"

#include "cw/error.hpp"

namespace cw {

Poset::Poset(std::size_t n, const std::vector<std::pair<Node, Node>>& leq,
             std::vector<std::string> names)
    : n_(n), rel_(n * n, false), names_(std::move(names)) {
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  CW_REQUIRE(names_.size() == n, "poset: name count differs from node count");
  for (std::size_t i = 0; i < n; ++i) rel_[i * n + i] = true;
  for (auto [a, b] : leq) {
    CW_REQUIRE(a < n && b < n, "poset: relation refers to an unknown node");
    rel_[a * n + b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel_[k * n + j]) rel_[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      CW_REQUIRE(!(rel_[i * n + j] && rel_[j * n + i]),
                 "poset: relation is not antisymmetric (" + names_[i] + ", " + names_[j] + ")");
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::pair<Node, Node>> r;
  for (std::size_t i = 0; i + 1 < n; ++i) r.emplace_back(i, i + 1);
  return Poset(n, r);
}

Poset Poset::star(std::size_t leaves) {
  std::vector<std::pair<Node, Node>> r;
  for (std::size_t i = 1; i <= leaves; ++i) r.emplace_back(0, i);
  return Poset(leaves + 1, r);
}

Poset Poset::antichain(std::size_t n) { return Poset(n, {}); }

void Poset::check(Node i) const {
  CW_REQUIRE(i < n_, "poset: unknown node " + std::to_string(i));
}

bool Poset::leq(Node i, Node j) const {
  check(i);
  check(j);
  return rel_[i * n_ + j];
}

const std::string& Poset::name(Node i) const {
  check(i);
  return names_[i];
}

std::optional<Node> Poset::find(const std::string& name) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<Node> Poset::downset(Node i) const {
  check(i);
  std::vector<Node> out;
  for (Node k = 0; k < n_; ++k)
    if (rel_[k * n_ + i]) out.push_back(k);
  return out;
}

std::vector<Node> Poset::upset(Node i) const {
  check(i);
  std::vector<Node> out;
  for (Node k = 0; k < n_; ++k)
    if (rel_[i * n_ + k]) out.push_back(k);
  return out;
}

bool Poset::is_cover(Node lower, Node upper) const {
  if (!less(lower, upper)) return false;
  for (Node k = 0; k < n_; ++k)
    if (less(lower, k) && less(k, upper)) return false;
  return true;
}

std::vector<Node> Poset::lower_covers(Node i) const {
  std::vector<Node> out;
  for (Node k = 0; k < n_; ++k)
    if (is_cover(k, i)) out.push_back(k);
  return out;
}

std::vector<Node> Poset::upper_covers(Node i) const {
  std::vector<Node> out;
  for (Node k = 0; k < n_; ++k)
    if (is_cover(i, k)) out.push_back(k);
  return out;
}

std::vector<Node> Poset::minimal() const {
  std::vector<Node> out;
  for (Node i = 0; i < n_; ++i)
    if (downset(i).size() == 1) out.push_back(i);
  return out;
}

std::vector<Node> Poset::maximal() const {
  std::vector<Node> out;
  for (Node i = 0; i < n_; ++i)
    if (upset(i).size() == 1) out.push_back(i);
  return out;
}

bool Poset::is_in_forest() const {
  for (Node i = 0; i < n_; ++i) {
    auto d = downset(i);
    for (Node a : d)
      for (Node b : d)
        if (!leq(a, b) && !leq(b, a)) return false;
  }
  return true;
}

std::size_t Poset::rank(Node i) const {
  CW_REQUIRE(is_in_forest(), "rank: poset is not in-forest");
  return downset(i).size() - 1;
}

std::optional<Node> Poset::meet(Node i, Node j) const {
  check(i);
  check(j);
  std::vector<Node> common;
  for (Node k = 0; k < n_; ++k)
    if (leq(k, i) && leq(k, j)) common.push_back(k);
  for (Node g : common) {
    bool greatest = true;
    for (Node k : common)
      if (!leq(k, g)) {
        greatest = false;
        break;
      }
    if (greatest) return g;
  }
  return std::nullopt;
}

}  // namespace cw
