#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "specamb/distribution.hpp"
#include "specamb/error.hpp"
#include "specamb/rational.hpp"

namespace specamb {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic 64-bit stream; the only randomness source in the project,
/// so generated distributions are reproducible across platforms.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Fixed splitting rule for per-trial sub-seeds; independent of scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed + trial);
}

/// Uniform sample from the probability simplex via normalised exponential
/// spacings.
inline std::vector<double> sample_simplex(std::size_t cells, SplitMix& rng) {
  std::vector<double> masses(cells);
  double total = 0.0;
  for (auto& m : masses) {
    m = -std::log1p(-rng.next_unit());
    total += m;
  }
  if (total == 0.0) {  // astronomically unlikely; keep the contract anyway
    masses[0] = 1.0;
    total = 1.0;
  }
  for (auto& m : masses) m /= total;
  return masses;
}

/// Random integer numerators drawn from [0, 2^denom_bits), normalised
/// exactly. Small denom_bits makes zero masses (and hence the degenerate
/// regimes) frequent.
inline std::vector<Rational> sample_rational_simplex(std::size_t cells,
                                                     unsigned denom_bits,
                                                     SplitMix& rng) {
  if (denom_bits == 0 || denom_bits > 62) {
    fail(Errc::InvalidArgument, "denominator bits must be in [1, 62]");
  }
  const std::uint64_t mask = (std::uint64_t(1) << denom_bits) - 1;
  std::vector<std::uint64_t> numerators(cells);
  std::uint64_t total = 0;
  for (auto& n : numerators) {
    n = rng.next() & mask;
    total += n;
  }
  if (total == 0) {
    numerators[0] = 1;
    total = 1;
  }
  std::vector<Rational> masses;
  masses.reserve(cells);
  for (auto n : numerators) masses.emplace_back(BigInt(n), BigInt(total));
  return masses;
}

inline std::vector<std::string> default_labels(char prefix, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

template <class T>
std::vector<T> sample_masses(std::size_t cells, unsigned denom_bits, SplitMix& rng) {
  if constexpr (is_exact_backend<T>) {
    return sample_rational_simplex(cells, denom_bits, rng);
  } else {
    (void)denom_bits;
    return sample_simplex(cells, rng);
  }
}

template <class T>
Joint2<T> random_joint2(std::size_t nx, std::size_t ny, std::uint64_t seed,
                        unsigned denom_bits = 16) {
  SplitMix rng(seed);
  const std::vector<T> flat = sample_masses<T>(nx * ny, denom_bits, rng);
  std::vector<std::vector<T>> grid(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    grid[i].assign(flat.begin() + i * ny, flat.begin() + (i + 1) * ny);
  }
  return Joint2<T>(default_labels('x', nx), default_labels('y', ny), std::move(grid));
}

template <class T>
Joint3<T> random_joint3(std::size_t nx, std::size_t ny, std::size_t nz,
                        std::uint64_t seed, unsigned denom_bits = 16) {
  SplitMix rng(seed);
  std::vector<T> flat = sample_masses<T>(nx * ny * nz, denom_bits, rng);
  return Joint3<T>(default_labels('x', nx), default_labels('y', ny),
                   default_labels('z', nz), std::move(flat));
}

}  // namespace specamb
