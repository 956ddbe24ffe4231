// steering.hpp — Gaussian EPR-steering measures
//
// The ground truth is the Schur-complement measure evaluated on a covariance
// matrix; the closed forms below are its exact evaluation on the lossy-channel
// output state. Values are in nats. max{0,.} clamping is applied after all
// arithmetic; the pre-clamp value is kept as a diagnostic.

#pragma once

#include "steersat/gaussian.hpp"

#include <vector>

namespace steersat::steering {

struct SteeringResult {
    double g_ab = 0.0;       // steering b1 -> b2
    double g_ba = 0.0;       // steering b2 -> b1
    double asymmetry = 0.0;  // |g_ab - g_ba|
    double raw_ab = 0.0;     // pre-clamp values
    double raw_ba = 0.0;
};

struct SteeringValue {
    double value = 0.0;
    double raw = 0.0;
};

struct PerturbativeSteering {
    double value = 0.0;
    double raw = 0.0;
    double g0 = 0.0;    // lossless steering, ln cosh(2s)
    double loss = 0.0;  // subtracted loss term
    bool reliable = true;  // false when loss > 0.1 * g0
};

// General measure: max{0, -sum_{nu<1} ln nu} over the symplectic eigenvalues
// of the Schur complement of the steering party's block. Requires a bona fide
// input and an invertible steering block.
double gaussian_steering(const gaussian::CovMatrix& sigma,
                         const std::vector<int>& steering_party);

// Lossless steering of a two-mode squeezed state, ln cosh(2s).
double lossless_steering(double s);

// Closed forms for the channel-output state (loss theta on mode b2):
//   g_ab = max{0, ln[(1 + 2 sinh^2 s) / (1 + 2 (1-theta^2) sinh^2 s)]}
//   g_ba = max{0, ln[(1 + 2 theta^2 sinh^2 s) / (1 + 2 (1-theta^2) sinh^2 s)]}
SteeringValue steering_ab_closed_detail(double s, double theta);
SteeringValue steering_ba_closed_detail(double s, double theta);
double steering_ab_closed(double s, double theta);
double steering_ba_closed(double s, double theta);

// Second-order expansions in delta:
//   g_ab ~ g0 - (delta^2 W0^2 / 2 sigma^2) sinh^2 s
//   g_ba ~ g0 - (delta^2 W0^2 / 2 sigma^2) (sinh^2 s + sinh^2 s / cosh 2s)
PerturbativeSteering steering_ab_perturbative(double s, double delta,
                                              double peak_freq_hz, double bandwidth_hz);
PerturbativeSteering steering_ba_perturbative(double s, double delta,
                                              double peak_freq_hz, double bandwidth_hz);

SteeringResult steering_asymmetry(double s, double theta);

// Alternate closed forms with sinh^2(2s) numerators and the matching
// g0 = ln(1 + 2 sinh^2(2s)). Not used by the pipeline; exposed for
// side-by-side comparison reporting.
struct AltClosedForms {
    double g0 = 0.0;
    double g_ab = 0.0;
    double g_ba = 0.0;
};
AltClosedForms alt_closed_forms(double s, double theta);

} // namespace steersat::steering
