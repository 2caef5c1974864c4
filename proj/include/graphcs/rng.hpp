#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace graphcs {

using Rng = std::mt19937_64;

/// Builds an independent generator for the stream identified by `keys`.
///
/// Streams are keyed rather than advanced: the state depends only on the key
/// tuple (master seed, trial index, purpose tag, ...), never on how many
/// other streams were drawn before it. That makes trials order-independent
/// and lets callers reproduce any single trial in isolation.
inline Rng make_stream(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * keys.size() + 1);
  words.push_back(static_cast<std::uint32_t>(keys.size()));
  for (std::uint64_t k : keys) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffULL));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

// Purpose tags for the per-trial streams.
enum class StreamTag : std::uint64_t {
  kGraph = 1,
  kSignal = 2,
  kSamples = 3,
  kAnalysis = 4,
};

}  // namespace graphcs
