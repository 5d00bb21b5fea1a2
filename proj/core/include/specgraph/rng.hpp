#pragma once

#include <cstdint>
#include <random>

namespace specgraph {

/// The project-wide generator. mt19937_64 output is fully specified by the
/// standard, so a seed reproduces the same stream on every platform.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-replication seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for replication `index` of an experiment started from `base_seed`.
/// Depends only on (base_seed, index), never on scheduling.
std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
double uniform01(Rng& rng) noexcept;

/// Standard normal via Box-Muller on uniform01; portable across libraries.
double standard_normal(Rng& rng) noexcept;

}  // namespace specgraph
