#pragma once

#include <cstdint>
#include <random>

#include "polarcover/field.hpp"

namespace polarcover {

/// Seeded generator with hierarchical splitting: split(k) derives an
/// independent stream from (seed, k) without consuming this generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n) by rejection sampling; n > 0.
    std::uint64_t below(std::uint64_t n);
    Rng split(std::uint64_t stream) const;

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform element of F_p; over Q an integer in [-bound, bound].
Scalar random_scalar(const Field& field, Rng& rng, long bound = 50);
/// Same, never zero.
Scalar random_nonzero_scalar(const Field& field, Rng& rng, long bound = 50);

}  // namespace polarcover
