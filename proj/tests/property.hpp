#pragma once

// Minimal property-test driver: each case gets its own generator derived
// from a fixed seed, and a failing case is reported with its index.

#include <cstdint>
#include <random>

#include <gtest/gtest.h>

namespace proptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 rng_;
};

template <class Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
  for (int i = 0; i < cases; ++i) {
    SCOPED_TRACE("property case " + std::to_string(i) + ", seed " + std::to_string(seed));
    Gen g(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    body(g);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

}  // namespace proptest
