#pragma once

#include <cstdint>
#include <random>

namespace mpflab {

// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for (seed, stream, index); distinct triples give decorrelated engines.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index = 0);

// Fixed stream ids so that draws of one subsystem never shift another's.
enum class Stream : std::uint64_t {
  Fields = 1,
  Noise = 2,
  BetaSamples = 3,
  Testing = 4,
};

// mt19937_64 with portable uniform/normal transforms (the std distributions
// are implementation defined, these are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
      : engine_(derive_seed(seed, static_cast<std::uint64_t>(stream), index)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Box-Muller, one value per call (no cached spare, so the stream position
  // depends only on the call count).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpflab
