#pragma once

#include <cstdint>
#include <limits>

namespace lhv {

/// SplitMix64 finaliser (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/*!
 * Per-trial random stream.
 *
 * A SplitMix64 sequence whose starting state is a pure function of
 * (master seed, settings-pair index, trial index), so any trial can be
 * regenerated in isolation and the dataset does not depend on how trials are
 * partitioned across threads.
 */
class TrialRng {
  public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

    constexpr explicit TrialRng(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Fair coin.
    constexpr bool coin() { return ((*this)() >> 63) != 0; }

    [[nodiscard]] constexpr std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

/// Deterministic stream for trial `trial_index` of settings pair `pair_index`.
constexpr TrialRng derive_trial_rng(std::uint64_t master_seed, std::uint64_t pair_index, std::uint64_t trial_index)
{
    const std::uint64_t key = master_seed ^ (TrialRng::kGolden * (pair_index + 1))
                              ^ mix64(trial_index ^ 0xd1b54a32d192ed03ull);
    return TrialRng(mix64(key));
}

}  // namespace lhv
