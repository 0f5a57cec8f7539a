#pragma once

#include "refrec/bigq.hpp"

#include <random>

namespace refrec {

// Deterministic RNG for property tests and random parameter tuples. The seed
// is always recorded by callers that emit artifacts.
class Rng {
  public:
    explicit Rng(uint64_t seed = 20240917ull) : eng_(seed), seed_(seed) {}

    uint64_t seed() const { return seed_; }

    // small-height nonzero fraction in [-max_num, max_num] / [1, max_den]
    BigQ small_fraction(int max_num = 9, int max_den = 5, bool nonzero = true) {
        std::uniform_int_distribution<int> num(-max_num, max_num);
        std::uniform_int_distribution<int> den(1, max_den);
        for (;;) {
            int n = num(eng_);
            if (nonzero && n == 0) continue;
            return BigQ(n, den(eng_));
        }
    }

    int uniform_int(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    uint64_t seed_;
};

} // namespace refrec
