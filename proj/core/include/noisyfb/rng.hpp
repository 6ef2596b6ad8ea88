#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace noisyfb {

// SplitMix64 finalizer; used only for deriving seeds.
std::uint64_t splitmix64(std::uint64_t x);

// A single named random stream backed by std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniform variates are built from the raw 64-bit output (top 53 bits) so
// results do not depend on the standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::size_t below(std::size_t n);

  // Samples an index from a probability vector by inversion.
  std::size_t categorical(std::span<const double> q);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

enum class StreamId : std::uint64_t { adversary = 0, noise = 1, learner = 2, harness = 3 };

// Seed for (root_seed, episode seed, stream): nested SplitMix64 of root, then episode, then
// stream id. Changing the learner never perturbs the adversary or noise streams.
std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::uint64_t episode_seed,
                                 StreamId stream);

struct EpisodeStreams {
  RngStream adversary;
  RngStream noise;
  RngStream learner;
  RngStream harness;

  static EpisodeStreams derive(std::uint64_t root_seed, std::uint64_t episode_seed);
};

}  // namespace noisyfb
