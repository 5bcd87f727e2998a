// Copyright 2026 The compatwit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#ifndef CW_ERROR_HPP_
#define CW_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cw {

// Outcome categories. The numeric values double as CLI exit codes.
enum class Status : int {
  kOk = 0,
  kRefuted = 1,
  kUndecided = 2,
  kMalformed = 3,
  kInternal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

// Malformed descriptor, non-homomorphism, mismatched domains, etc.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(Status::kMalformed, what) {}
};

// A hypothesis of the requested construction was checked and is false.
class HypothesisRefuted : public Error {
 public:
  explicit HypothesisRefuted(const std::string& what)
      : Error(Status::kRefuted, what) {}
};

// A configured bound was exceeded before a decision was reached.
class Undecided : public Error {
 public:
  explicit Undecided(const std::string& what)
      : Error(Status::kUndecided, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(Status::kInternal, what) {}
};

// Search and enumeration budgets. Passed explicitly; there is no global state.
struct Bounds {
  std::size_t enumeration = 20000;    // max order of an enumerated group
  std::size_t isomorphism = 2000;     // max order for iso / automorphism search
  std::size_t automorphism = 2000;    // max order whose Aut is enumerated
  std::size_t max_automorphisms = 200000;
  std::size_t search_nodes = 20000000;
};

#define CW_REQUIRE(cond, msg)                          \
  do {                                                 \
    if (!(cond)) throw ::cw::InvalidArgument(msg);     \
  } while (0)

#define CW_ASSERT(cond, msg)                           \
  do {                                                 \
    if (!(cond)) throw ::cw::InternalError(msg);       \
  } while (0)

}  // namespace cw

#endif  // CW_ERROR_HPP_
