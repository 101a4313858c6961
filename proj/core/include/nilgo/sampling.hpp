#ifndef NILGO_SAMPLING_HPP_
#define NILGO_SAMPLING_HPP_

#include "nilgo/linear_core.hpp"

#include <cstdint>
#include <random>

namespace nilgo {

/// Generator for sample `index` of a run seeded with `seed`. Each sample
/// gets its own stream, so results do not depend on evaluation order.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniformly distributed unit vector (Gaussian direction).
inline Vector random_unit(std::mt19937_64& rng, Eigen::Index dim)
{
  std::normal_distribution<double> n01;
  Vector v(dim);
  if (dim == 0) { return v; }
  do {
    for (Eigen::Index i = 0; i < dim; ++i) { v(i) = n01(rng); }
  } while (v.norm() == 0.0);
  return v / v.norm();
}

inline Vector seeded_unit(std::uint64_t seed, std::uint64_t index, Eigen::Index dim)
{
  auto rng = sample_rng(seed, index);
  return random_unit(rng, dim);
}

}  // namespace nilgo

#endif  // NILGO_SAMPLING_HPP_
