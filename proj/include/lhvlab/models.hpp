#pragma once

#include "lhvlab/geometry.hpp"
#include "lhvlab/rng.hpp"

#include <cstdint>

namespace lhv {

//---------------------------------------------------------------------------//
// Outcomes
//---------------------------------------------------------------------------//

/// Click with value +1/-1, or no click. Stored in one byte: 0 = NoClick.
class Outcome {
  public:
    constexpr Outcome() = default;

    static constexpr Outcome click(int value) { return Outcome(value >= 0 ? std::int8_t{1} : std::int8_t{-1}); }
    static constexpr Outcome no_click() { return Outcome(); }

    [[nodiscard]] constexpr bool clicked() const { return code_ != 0; }
    /// +1 or -1; only meaningful when clicked().
    [[nodiscard]] constexpr int value() const { return code_; }
    [[nodiscard]] constexpr std::int8_t code() const { return code_; }

    friend constexpr bool operator==(Outcome, Outcome) = default;

  private:
    constexpr explicit Outcome(std::int8_t code) : code_(code) {}
    std::int8_t code_ = 0;
};

enum class Pattern : std::uint8_t { Coincidence, AliceOnly, BobOnly, DoubleNull };

struct TrialRecord {
    Outcome alice;
    Outcome bob;

    [[nodiscard]] constexpr Pattern pattern() const
    {
        if (alice.clicked()) {
            return bob.clicked() ? Pattern::Coincidence : Pattern::AliceOnly;
        }
        return bob.clicked() ? Pattern::BobOnly : Pattern::DoubleNull;
    }

    friend constexpr bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

enum class Side : std::uint8_t { A, B };

//---------------------------------------------------------------------------//
// Hidden states
//---------------------------------------------------------------------------//

/// Source program for the circle models. Draw budget: 4 uniforms.
struct CircleHidden {
    Angle phi;
    double r = 0.0;          ///< erasure threshold auxiliary in [0, 1)
    Side side_coin = Side::A;  ///< which side is filtered when symmetrising
    double null_coin = 1.0;  ///< double-null injection auxiliary in [0, 1)
};

/// Source program for the sphere model. Draw budget: 5 uniforms.
struct SphereHidden {
    Direction3 lambda;
    double r = 0.0;
    Side side_coin = Side::A;
    double null_coin = 1.0;
};

struct ErasureOptions {
    static constexpr double kDefaultNullInjection = 1.0 / 9.0;

    /// Probability that the source emits a pair neither detector will see.
    double null_injection_probability = kDefaultNullInjection;
    /// Pick the filtered side with the hidden side coin; otherwise always A.
    bool symmetrize = true;
    /// Negative-control hook: keep with constant probability 1/2 instead of
    /// the cosine weight. The erasure rate is unchanged but the post-selected
    /// correlation reverts to the linear model's.
    bool uniform_keep = false;

    void validate() const;
};

inline constexpr int kCircleDraws = 4;
inline constexpr int kSphereDraws = 5;

CircleHidden sample_circle_hidden(TrialRng& rng);
SphereHidden sample_sphere_hidden(TrialRng& rng);

//---------------------------------------------------------------------------//
// Trial functions. Each side's outcome depends on the hidden state and its
// own setting only.
//---------------------------------------------------------------------------//

/// Saturates CHSH: E(theta) = -1 + 2 theta / pi.
TrialRecord linear_trial(const CircleHidden& h, Angle a, Angle b);

/// Linear model with half the hidden phases erased on the filtered side;
/// post-selected correlation is -cos(a - b).
TrialRecord erased_circle_trial(const CircleHidden& h, Angle a, Angle b, const ErasureOptions& opts);

/// Isotropic-direction version; post-selected correlation is -a.b for any
/// pair of directions.
TrialRecord sphere_erasure_trial(const SphereHidden& h, const Direction3& a, const Direction3& b,
                                 const ErasureOptions& opts);

/// Circle model fed 3D settings through their lab-frame azimuths.
TrialRecord circle_model_with_3d_settings(const CircleHidden& h, const Direction3& a, const Direction3& b,
                                          const ErasureOptions& opts);

/// Samples the singlet joint distribution directly. Nonlocal by design.
TrialRecord quantum_singlet_trial(TrialRng& rng, const Direction3& a, const Direction3& b);

/// Keep weight of the circle erasure rule, (pi/4)|cos(phi - x)|.
double circle_keep_weight(Angle phi, Angle setting);

}  // namespace lhv
