// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_NUMTHORY_HPP_
#define CW_NUMTHORY_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace cw {

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Ascending (prime, exponent) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> factorize(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    std::size_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_square_free(std::size_t n) {
  for (const auto& pe : factorize(n))
    if (pe.second > 1) return false;
  return true;
}

inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (const auto& pe : factorize(n)) out.push_back(pe.first);
  return out;
}

}  // namespace cw

#endif  // CW_NUMTHORY_HPP_
