#pragma once

#include <cstdint>

namespace lhv {

/// Joint-sign tallies over post-selected (coincident) events.
struct CorrelationCounts {
    std::uint64_t pp = 0;
    std::uint64_t mm = 0;
    std::uint64_t pm = 0;
    std::uint64_t mp = 0;

    void add(int alice, int bob)
    {
        if (alice > 0) {
            ++(bob > 0 ? pp : pm);
        } else {
            ++(bob > 0 ? mp : mm);
        }
    }

    [[nodiscard]] std::uint64_t total() const { return pp + mm + pm + mp; }

    CorrelationCounts& operator+=(const CorrelationCounts& o)
    {
        pp += o.pp;
        mm += o.mm;
        pm += o.pm;
        mp += o.mp;
        return *this;
    }

    friend bool operator==(const CorrelationCounts&, const CorrelationCounts&) = default;
};

/// Post-selected correlation with its binomial standard error.
struct CorrEstimate {
    double e_hat = 0.0;
    double se = 0.0;
    std::uint64_t n_coinc = 0;
};

/// e = (N++ + N-- - N+- - N-+) / n, se = sqrt((1 - e^2) / n).
/// Throws EmptySample when n = 0.
CorrEstimate estimate_from_counts(const CorrelationCounts& counts);

}  // namespace lhv
