// spacetime.cpp — frequency-shift computation and constants handling

#include "steersat/spacetime.hpp"

#include "steersat/ddouble.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace steersat::spacetime {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void EarthModel::validate() const {
    require_finite(r_a_m, "EarthModel.r_a_m");
    require_finite(r_s_m, "EarthModel.r_s_m");
    require_finite(omega_rad_s, "EarthModel.omega_rad_s");
    require_finite(kerr_a_m, "EarthModel.kerr_a_m");
    require_finite(c_m_s, "EarthModel.c_m_s");
    if (r_a_m <= 0.0) throw std::invalid_argument("EarthModel: r_a_m must be > 0");
    if (c_m_s <= 0.0) throw std::invalid_argument("EarthModel: c_m_s must be > 0");
    if (r_s_m < 0.0) throw std::invalid_argument("EarthModel: r_s_m must be >= 0");
    if (omega_rad_s < 0.0) throw std::invalid_argument("EarthModel: omega_rad_s must be >= 0");
    if (kerr_a_m < 0.0) throw std::invalid_argument("EarthModel: kerr_a_m must be >= 0");
    if (r_s_m / r_a_m >= 1e-6)
        throw std::invalid_argument("EarthModel: weak-field regime requires r_s/r_a < 1e-6");
    if (kerr_a_m >= 1e-3 * r_a_m)
        throw std::invalid_argument("EarthModel: kerr_a must be small against r_a");
}

void OrbitGeometry::validate() const {
    earth.validate();
    require_finite(height_m, "OrbitGeometry.height_m");
    if (height_m < 0.0) throw std::invalid_argument("OrbitGeometry: height must be >= 0");
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("OrbitGeometry: epsilon must be +1 or -1");
    if (r_b_m() <= 3.0 * earth.mass_m())
        throw std::invalid_argument("OrbitGeometry: orbit radius inside 3M");
}

double schwarzschild_factor(double r_m, const EarthModel& earth) {
    require_finite(r_m, "schwarzschild_factor.r");
    if (r_m <= earth.r_s_m)
        throw std::invalid_argument("schwarzschild_factor: r must exceed the Schwarzschild radius");
    return 1.0 - earth.r_s_m / r_m;
}

FrequencyShift kerr_frequency_ratio(const OrbitGeometry& geom) {
    geom.validate();
    const EarthModel& e = geom.earth;
    const ddouble big_m = ddouble(e.r_s_m) / ddouble(2.0);
    const ddouble r_a(e.r_a_m);
    const ddouble r_b = r_a + ddouble(geom.height_m);
    const ddouble a(e.kerr_a_m);
    const ddouble w = ddouble(e.omega_rad_s) / ddouble(e.c_m_s);
    const double eps = static_cast<double>(geom.epsilon);

    // Bob: circular equatorial geodesic at r_B.
    const ddouble alpha = (a / r_b) * sqrt(big_m / r_b);
    const ddouble d_small = ddouble(eps * 2.0) * alpha - ddouble(3.0) * big_m / r_b;
    if (1.0 + d_small.value() <= 0.0)
        throw std::invalid_argument("kerr_frequency_ratio: square-root argument non-positive");

    // Alice: rotating ground observer. The angular-velocity group reduces the
    // normalization bracket (rotation red-shifts the received frequency).
    const ddouble group =
        (r_a * r_a + a * a - ddouble(2.0) * big_m * a * a / r_a) * (w * w);
    const ddouble x_small =
        -(ddouble(2.0) * big_m / r_a) * (ddouble(1.0) + ddouble(2.0) * a * w) - group;
    if (1.0 + x_small.value() <= 0.0)
        throw std::invalid_argument("kerr_frequency_ratio: normalization bracket non-positive");

    // ratio - 1 assembled from the three near-unity factors, never by
    // subtracting O(1) doubles
    const ddouble sx = sqrt1pm1(x_small);                    // sqrt(1+x) - 1
    const ddouble sq_d = sqrt1pm1(d_small);
    const ddouble sd = -sq_d / (ddouble(1.0) + sq_d);        // 1/sqrt(1+d) - 1
    const ddouble numer = ddouble(eps) * alpha;              // N - 1
    const ddouble r1 = prod1pm1(prod1pm1(numer, sx), sd);
    const ddouble delta = sqrt1pm1(r1);

    FrequencyShift out;
    out.ratio_minus_one = r1.value();
    out.ratio = 1.0 + out.ratio_minus_one;
    out.delta = delta.value();
    return out;
}

double delta_exact(const OrbitGeometry& geom) { return kerr_frequency_ratio(geom).delta; }

DeltaBreakdown delta_perturbative(const OrbitGeometry& geom) {
    geom.validate();
    const EarthModel& e = geom.earth;
    const double x = e.r_s_m / e.r_a_m;
    const double q = geom.height_m / e.r_a_m;
    const double w = e.omega_rad_s / e.c_m_s;
    const double rw2 = (e.r_a_m * w) * (e.r_a_m * w);

    DeltaBreakdown out;
    out.schwarzschild = 0.125 * x * (1.0 - 2.0 * q) / (1.0 + q);
    out.rotation = -0.25 * rw2;
    if (e.omega_rad_s == 0.0) {
        out.higher_order = 0.0;  // 4Ma/(w r_a^3) is singular at w = 0
        out.higher_order_defined = false;
    } else {
        const double big_m = e.mass_m();
        out.higher_order =
            -0.25 * rw2 * (0.75 * x - 4.0 * big_m * e.kerr_a_m / (w * std::pow(e.r_a_m, 3)));
    }
    out.total = out.schwarzschild + out.rotation + out.higher_order;
    return out;
}

double compensation_height(const EarthModel& earth, CompensationMode mode) {
    earth.validate();
    const auto delta_at = [&](double h) {
        if (mode == CompensationMode::schwarzschild_only) {
            const double q = h / earth.r_a_m;
            return 0.125 * (earth.r_s_m / earth.r_a_m) * (1.0 - 2.0 * q) / (1.0 + q);
        }
        return delta_perturbative({earth, h, +1}).total;
    };

    double lo = 0.0;
    double hi = earth.r_a_m;
    const double f_lo = delta_at(lo);
    const double f_hi = delta_at(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0) && !(f_lo < 0.0 && f_hi > 0.0))
        throw std::runtime_error("compensation_height: no sign change on [0, r_a]");

    const bool rising_at_lo = f_lo > 0.0;
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = delta_at(mid);
        if ((f_mid > 0.0) == rising_at_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

EarthModel parse_constants(std::istream& in) {
    EarthModel model = EarthModel::defaults();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("constants file line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value_str = trim(entry.substr(eq + 1));
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(value_str, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value_str.size() || value_str.empty())
            throw std::invalid_argument("constants file line " + std::to_string(line_no) +
                                        ": bad numeric value '" + value_str + "'");
        if (key == "r_a_m")
            model.r_a_m = value;
        else if (key == "r_s_m")
            model.r_s_m = value;
        else if (key == "omega_rad_s")
            model.omega_rad_s = value;
        else if (key == "kerr_a_m")
            model.kerr_a_m = value;
        else if (key == "c_m_s")
            model.c_m_s = value;
        else
            throw std::invalid_argument("constants file line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
    model.validate();
    return model;
}

EarthModel load_constants_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open constants file: " + path);
    return parse_constants(in);
}

} // namespace steersat::spacetime
