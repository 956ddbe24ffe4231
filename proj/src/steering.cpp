// steering.cpp — steering measures and channel-output closed forms

#include "steersat/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace steersat::steering {

namespace {

constexpr double kBonaFideTol = 1e-9;

void check_squeezing(double s) {
    if (!std::isfinite(s) || s < 0.0)
        throw std::invalid_argument("steering: squeezing must be finite and >= 0");
}

void check_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("steering: theta must lie in [0, 1]");
}

void check_wavepacket(double peak_hz, double bandwidth_hz) {
    if (!std::isfinite(peak_hz) || peak_hz <= 0.0 || !std::isfinite(bandwidth_hz) ||
        bandwidth_hz <= 0.0)
        throw std::invalid_argument("steering: peak frequency and bandwidth must be > 0");
}

double loss_coefficient(double delta, double peak_hz, double bandwidth_hz) {
    const double r = delta * peak_hz / bandwidth_hz;
    return 0.5 * r * r;  // delta^2 W0^2 / (2 sigma^2)
}

PerturbativeSteering make_perturbative(double s, double loss) {
    PerturbativeSteering out;
    out.g0 = lossless_steering(s);
    out.loss = loss;
    out.raw = out.g0 - loss;
    out.value = std::max(0.0, out.raw);
    out.reliable = loss <= 0.1 * out.g0;
    return out;
}

} // namespace

double gaussian_steering(const gaussian::CovMatrix& sigma,
                         const std::vector<int>& steering_party) {
    if (!gaussian::is_bona_fide(sigma, kBonaFideTol))
        throw std::invalid_argument("gaussian_steering: input is not a bona fide state");

    std::vector<bool> is_party(sigma.n_modes(), false);
    for (int m : steering_party) {
        if (m < 0 || m >= sigma.n_modes())
            throw std::invalid_argument("gaussian_steering: mode index out of range");
        is_party[static_cast<std::size_t>(m)] = true;
    }
    std::vector<int> steered;
    for (int m = 0; m < sigma.n_modes(); ++m)
        if (!is_party[static_cast<std::size_t>(m)]) steered.push_back(m);
    if (steering_party.empty() || steered.empty())
        throw std::invalid_argument("gaussian_steering: bipartition must be non-trivial");

    const Eigen::MatrixXd schur = gaussian::schur_complement(sigma, steered);
    const auto nu = gaussian::symplectic_eigenvalues(gaussian::CovMatrix::from_matrix(schur));
    double sum = 0.0;
    for (double v : nu)
        if (v < 1.0) sum -= std::log(v);
    return std::max(0.0, sum);
}

double lossless_steering(double s) {
    check_squeezing(s);
    const double sh = std::sinh(s);
    return std::log1p(2.0 * sh * sh);  // ln cosh 2s
}

SteeringValue steering_ab_closed_detail(double s, double theta) {
    check_squeezing(s);
    check_theta(theta);
    const double sh2 = std::sinh(s) * std::sinh(s);
    const double raw = std::log1p(2.0 * sh2) - std::log1p(2.0 * (1.0 - theta * theta) * sh2);
    return {std::max(0.0, raw), raw};
}

SteeringValue steering_ba_closed_detail(double s, double theta) {
    check_squeezing(s);
    check_theta(theta);
    const double sh2 = std::sinh(s) * std::sinh(s);
    const double raw =
        std::log1p(2.0 * theta * theta * sh2) - std::log1p(2.0 * (1.0 - theta * theta) * sh2);
    return {std::max(0.0, raw), raw};
}

double steering_ab_closed(double s, double theta) {
    return steering_ab_closed_detail(s, theta).value;
}

double steering_ba_closed(double s, double theta) {
    return steering_ba_closed_detail(s, theta).value;
}

PerturbativeSteering steering_ab_perturbative(double s, double delta, double peak_freq_hz,
                                              double bandwidth_hz) {
    check_squeezing(s);
    check_wavepacket(peak_freq_hz, bandwidth_hz);
    if (s > 3.0)
        throw std::invalid_argument("steering perturbative: squeezing must be <= 3");
    const double sh2 = std::sinh(s) * std::sinh(s);
    return make_perturbative(s, loss_coefficient(delta, peak_freq_hz, bandwidth_hz) * sh2);
}

PerturbativeSteering steering_ba_perturbative(double s, double delta, double peak_freq_hz,
                                              double bandwidth_hz) {
    check_squeezing(s);
    check_wavepacket(peak_freq_hz, bandwidth_hz);
    if (s > 3.0)
        throw std::invalid_argument("steering perturbative: squeezing must be <= 3");
    const double sh2 = std::sinh(s) * std::sinh(s);
    const double loss = loss_coefficient(delta, peak_freq_hz, bandwidth_hz) *
                        (sh2 + sh2 / std::cosh(2.0 * s));
    return make_perturbative(s, loss);
}

SteeringResult steering_asymmetry(double s, double theta) {
    const SteeringValue ab = steering_ab_closed_detail(s, theta);
    const SteeringValue ba = steering_ba_closed_detail(s, theta);
    SteeringResult out;
    out.g_ab = ab.value;
    out.g_ba = ba.value;
    out.asymmetry = std::abs(ab.value - ba.value);
    out.raw_ab = ab.raw;
    out.raw_ba = ba.raw;
    return out;
}

AltClosedForms alt_closed_forms(double s, double theta) {
    check_squeezing(s);
    check_theta(theta);
    const double sh2s = std::sinh(2.0 * s) * std::sinh(2.0 * s);
    const double sh2 = std::sinh(s) * std::sinh(s);
    const double denom = std::log1p(2.0 * (1.0 - theta * theta) * sh2);
    AltClosedForms out;
    out.g0 = std::log1p(2.0 * sh2s);
    out.g_ab = std::max(0.0, std::log1p(2.0 * sh2s) - denom);
    out.g_ba = std::max(0.0, std::log1p(2.0 * theta * theta * sh2s) - denom);
    return out;
}

} // namespace steersat::steering
