#pragma once

#include <cstdint>

namespace ginibre {

// Master seed plus the rule deriving independent per-task streams.
// Identical (master_seed, task partition) gives identical sample
// sequences regardless of worker count or execution order.
struct SeedSpec {
    std::uint64_t master_seed = 0;

    std::uint64_t stream_id(std::uint64_t task_index) const;
};

// xoshiro256++ with splitmix64 seeding.  Self-contained so that sample
// streams are byte-stable across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    Rng(const SeedSpec& spec, std::uint64_t task_index)
        : Rng(spec.stream_id(task_index)) {}

    std::uint64_t next_u64();
    // Uniform on (0, 1): never returns 0 or 1.
    double uniform();
    // Standard normal via Box-Muller (one variate per call).
    double normal();
    // Gamma(k, 1) for shape k >= 1; Marsaglia-Tsang squeeze/rejection.
    double gamma(double k);

  private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace ginibre
