// spacetime.hpp — relativistic frequency shift for a ground-to-satellite photon
//
// Geometric units internally (lengths in meters, G = c = 1); SI angular
// velocities are converted at the boundary via omega_geo = omega / c. The
// shift parameter delta = sqrt(Omega_B / Omega_A) - 1 is of order 1e-10 for
// Earth, so every near-unity ratio carries a value-minus-one companion and
// the exact path runs in compensated (double-double) arithmetic.

#pragma once

#include <iosfwd>
#include <string>

namespace steersat::spacetime {

struct EarthModel {
    double r_a_m = 6.371e6;          // ground-station radial coordinate
    double r_s_m = 9.0e-3;           // Schwarzschild radius, 2M
    double omega_rad_s = 7.2921150e-5;  // equatorial angular velocity (SI)
    double kerr_a_m = 3.28;          // a = J/M as a geometric length
    double c_m_s = 2.99792458e8;

    static EarthModel defaults() { return {}; }
    double mass_m() const { return 0.5 * r_s_m; }  // M in meters
    void validate() const;
};

struct OrbitGeometry {
    EarthModel earth;
    double height_m = 0.0;  // h = r_B - r_A
    int epsilon = +1;       // +1 co-rotating, -1 counter-rotating

    double r_b_m() const { return earth.r_a_m + height_m; }
    void validate() const;
};

struct FrequencyShift {
    double ratio = 1.0;            // Omega_B / Omega_A
    double ratio_minus_one = 0.0;  // cancellation-free companion
    double delta = 0.0;            // sqrt(ratio) - 1
};

// f(r) = 1 - r_S / r. Requires r > r_S.
double schwarzschild_factor(double r_m, const EarthModel& earth);

// Frequency ratio for a photon sent from the rotating ground station to a
// satellite on a circular equatorial geodesic at r_B; Schwarzschild limit
// sqrt((1 - 2M/r_A) / (1 - 3M/r_B)) at a = omega = 0.
FrequencyShift kerr_frequency_ratio(const OrbitGeometry& geom);

double delta_exact(const OrbitGeometry& geom);

struct DeltaBreakdown {
    double total = 0.0;
    double schwarzschild = 0.0;  // (1/8)(r_S/r_A)(1 - 2h/r_A)/(1 + h/r_A)
    double rotation = 0.0;       // -(r_A w)^2 / 4
    double higher_order = 0.0;   // -((r_A w)^2/4)((3/4)(r_S/r_A) - 4Ma/(w r_A^3))
    bool higher_order_defined = true;  // false when omega = 0 (term singular)
};

DeltaBreakdown delta_perturbative(const OrbitGeometry& geom);

enum class CompensationMode { schwarzschild_only, full };

// Root of delta(h) = 0 by bisection on [0, r_A] to relative 1e-12.
// schwarzschild_only roots the first perturbative term (exact root r_A/2);
// full roots the complete perturbative delta.
double compensation_height(const EarthModel& earth, CompensationMode mode);

// Flat key = value override file; keys r_a_m, r_s_m, omega_rad_s, kerr_a_m,
// c_m_s. Blank lines and '#' comments allowed; unknown keys are an error.
EarthModel parse_constants(std::istream& in);
EarthModel load_constants_file(const std::string& path);

} // namespace steersat::spacetime
