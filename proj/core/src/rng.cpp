#include "noisyfb/rng.hpp"

namespace noisyfb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t RngStream::below(std::size_t n) {
  // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant at our sizes.
  __extension__ using u128 = unsigned __int128;
  const auto wide = static_cast<u128>(engine_()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

std::size_t RngStream::categorical(std::span<const double> q) {
  const double u = uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    acc += q[i];
    if (u < acc) return i;
  }
  return q.size() - 1;
}

std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::uint64_t episode_seed,
                                 StreamId stream) {
  std::uint64_t h = splitmix64(root_seed);
  h = splitmix64(h ^ episode_seed);
  return splitmix64(h ^ static_cast<std::uint64_t>(stream));
}

EpisodeStreams EpisodeStreams::derive(std::uint64_t root_seed, std::uint64_t episode_seed) {
  return EpisodeStreams{
      RngStream(derive_stream_seed(root_seed, episode_seed, StreamId::adversary)),
      RngStream(derive_stream_seed(root_seed, episode_seed, StreamId::noise)),
      RngStream(derive_stream_seed(root_seed, episode_seed, StreamId::learner)),
      RngStream(derive_stream_seed(root_seed, episode_seed, StreamId::harness)),
  };
}

}  // namespace noisyfb
