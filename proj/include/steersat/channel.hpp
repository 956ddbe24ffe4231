// channel.hpp — wavepacket overlap and the end-to-end lossy channel
//
// The frequency shift deforms the transmitted Gaussian wavepacket; the overlap
// Theta between received and reference packets sets the beam-splitter loss.
// Kernel: F_B(W) = (1+delta)^(-1/2) F_A(W / (1+delta)), i.e. the received
// packet keeps unit norm, its peak sits at (1+delta) W0 and its width scales
// with (1+delta). Closed form, adaptive quadrature and quadratic expansion
// all evaluate this same overlap.

#pragma once

#include "steersat/gaussian.hpp"
#include "steersat/spacetime.hpp"
#include "steersat/steering.hpp"

#include <string>

namespace steersat::channel {

struct WavePacket {
    double peak_freq_hz = 5.0e14;   // W0 (500 THz)
    double bandwidth_hz = 1.0e6;    // sigma (1 MHz)

    static WavePacket defaults() { return {}; }
    // Omega2 = peak / 500 THz, sigma_tilde = bandwidth / 1 MHz
    static WavePacket from_dimensionless(double omega2, double sigma_tilde);
    // narrowband regime peak/bandwidth >= 1e3; violation warns, not errors
    bool narrowband() const { return peak_freq_hz / bandwidth_hz >= 1.0e3; }
    void validate() const;
};

struct ChannelParams {
    double theta = 1.0;      // clamped to [0,1]
    double theta_raw = 1.0;  // pre-clamp value
    bool narrowband_warning = false;

    static ChannelParams from_theta(double theta);
};

// Theta = sqrt(1+delta) sqrt(2/(1+(1+delta)^2))
//         exp(-delta^2 W0^2 / (4 (1+(1+delta)^2) sigma^2)). Requires delta > -1.
ChannelParams overlap_theta_closed(double delta, const WavePacket& wp);

// Adaptive Gauss-Kronrod integration of the overlap integrand over a window
// of +-12 effective widths covering both peaks; absolute tolerance 1e-12.
ChannelParams overlap_theta_quadrature(double delta, const WavePacket& wp);

// Theta ~ 1 - delta^2 W0^2 / (8 sigma^2).
ChannelParams overlap_theta_perturbative(double delta, const WavePacket& wp);

// Final two-mode covariance matrix, diag blocks (1+2 sinh^2 s) I and
// (1+2 theta^2 sinh^2 s) I, off-diagonal sinh(2s) theta sigma_z.
gaussian::CovMatrix final_cm_closed(double s, const ChannelParams& theta);

// Same state through the explicit four-mode pipeline: initial CM, lossy
// Bogoliubov transform, partial trace onto (b1, b2).
gaussian::CovMatrix propagate_two_mode(double s, const ChannelParams& theta);

enum class DeltaMode { exact, perturbative };

struct EndToEndResult {
    steering::SteeringResult steering;
    double delta = 0.0;
    double ratio_minus_one = 0.0;               // exact mode only
    spacetime::DeltaBreakdown delta_parts;      // perturbative mode only
    bool delta_parts_valid = false;
    double theta = 1.0;
    double theta_raw = 1.0;
    bool narrowband_warning = false;
};

// Orbit geometry -> delta -> overlap -> steering both directions. Errors from
// a stage are rethrown with the stage named.
EndToEndResult end_to_end(const spacetime::OrbitGeometry& geom, const WavePacket& wp,
                          double s, DeltaMode mode);

// delta^2 W0^2 / (2 sigma^2), the loss-term magnitude in the perturbative
// steering formulas.
double loss_term_magnitude(double delta, const WavePacket& wp);

// Human-readable cross-check report: loss-term magnitudes for reference
// shifts, alternate-convention steering forms, compensation heights, and the
// bandwidth-monotonicity note.
std::string diagnostics_report(const spacetime::EarthModel& earth);

} // namespace steersat::channel
