#pragma once

#include <array>
#include <cstdint>

namespace degmlmc {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream identified by (master_seed, level, sample_index).
/// The output sequence is a pure function of that triple: the seed is the
/// Philox key, the level and index occupy the high counter words and the
/// low 64 counter bits enumerate blocks.
class SeedStream {
 public:
  SeedStream(std::uint64_t master_seed, std::uint32_t level, std::uint32_t sample_index);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random mantissa bits.
  double next_unit();

  std::uint64_t master_seed() const { return seed_; }
  std::uint32_t level() const { return level_; }
  std::uint32_t sample_index() const { return index_; }
  std::uint64_t blocks_used() const { return block_; }

 private:
  std::uint64_t seed_;
  std::uint32_t level_;
  std::uint32_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // remaining 64-bit words in buffer_
};

SeedStream stream_for(std::uint64_t master_seed, std::uint32_t level, std::uint32_t sample_index);

/// Next variate of U(a, b), in [a, b). Rejects a >= b.
double uniform(SeedStream& stream, double a, double b);

/// SplitMix64 finalizer; derives sub-seeds such as (seed, L, replicate).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace degmlmc
