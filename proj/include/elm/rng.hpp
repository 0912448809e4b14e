#pragma once

#include <cstdint>
#include <vector>

namespace elm {

// Deterministic random stream. All randomness in the project flows from one
// master seed, fanned out to named substreams via splitmix64 on
// (seed, stream id), so adding a consumer never shifts another one's draws.
// The normal generator is an explicit Box-Muller so that values are pinned by
// this code, not by the standard library's unspecified algorithm.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Unbiased integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();
    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Fisher-Yates permutation of {0, .., n-1}.
    std::vector<std::size_t> permutation(std::size_t n);

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream ids used across the project (documented fan-out rule).
namespace stream {
inline constexpr std::uint64_t dataset_noise = 1;
inline constexpr std::uint64_t dataset_split = 2;
inline constexpr std::uint64_t net_init = 3;
inline constexpr std::uint64_t net_train = 4;
inline constexpr std::uint64_t cluster_init = 5;
}  // namespace stream

}  // namespace elm
