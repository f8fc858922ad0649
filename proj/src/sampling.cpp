#include "degmlmc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace degmlmc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

SeedStream::SeedStream(std::uint64_t master_seed, std::uint32_t level, std::uint32_t sample_index)
    : seed_(master_seed), level_(level), index_(sample_index) {}

std::uint64_t SeedStream::next_u64() {
  if (buffered_ == 0) {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(block_),
                                              static_cast<std::uint32_t>(block_ >> 32), level_,
                                              index_};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    buffer_ = philox4x32(ctr, key);
    ++block_;
    buffered_ = 2;
  }
  const int k = 2 - buffered_;
  --buffered_;
  return (static_cast<std::uint64_t>(buffer_[2 * k + 1]) << 32) | buffer_[2 * k];
}

double SeedStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SeedStream stream_for(std::uint64_t master_seed, std::uint32_t level, std::uint32_t sample_index) {
  return SeedStream(master_seed, level, sample_index);
}

double uniform(SeedStream& stream, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform: need a < b");
  const double x = a + (b - a) * stream.next_unit();
  return x < b ? x : std::nextafter(b, a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

}  // namespace degmlmc
