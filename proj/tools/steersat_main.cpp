// steersat_main.cpp — command-line front end
//
// Exit codes: 0 success, 2 argument/domain errors, 3 I/O errors. Data goes to
// stdout or --out; diagnostics and warnings go to stderr.

#include "steersat/channel.hpp"
#include "steersat/spacetime.hpp"
#include "steersat/steering.hpp"
#include "steersat/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace steersat;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

spacetime::EarthModel resolve_earth(const std::string& constants_path) {
    if (constants_path.empty()) return spacetime::EarthModel::defaults();
    return spacetime::load_constants_file(constants_path);
}

struct AxisArg {
    sweep::Axis axis;
};

// --var name=lo:hi:steps
sweep::Axis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--var expects name=lo:hi:steps, got '" + text + "'");
    sweep::Axis axis;
    axis.name = sweep::axis_name_from_string(text.substr(0, eq));
    const std::string range = text.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("--var expects name=lo:hi:steps, got '" + text + "'");
    try {
        axis.lo = std::stod(range.substr(0, c1));
        axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
        axis.steps = std::stoi(range.substr(c2 + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--var expects numeric lo:hi:steps, got '" + text + "'");
    }
    return axis;
}

void apply_fixed(sweep::SweepSpec& spec, const std::vector<std::string>& fixed_args) {
    for (const std::string& text : fixed_args) {
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--fixed expects name=value, got '" + text + "'");
        const sweep::AxisName name = sweep::axis_name_from_string(text.substr(0, eq));
        double value = 0.0;
        try {
            value = std::stod(text.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("--fixed expects a numeric value, got '" + text + "'");
        }
        switch (name) {
            case sweep::AxisName::h: spec.fixed.h_km = value; break;
            case sweep::AxisName::s: spec.fixed.s = value; break;
            case sweep::AxisName::sigma: spec.fixed.sigma = value; break;
            case sweep::AxisName::omega2: spec.fixed.omega2 = value; break;
        }
    }
}

void write_table(const std::vector<sweep::SweepRow>& rows, const sweep::SweepSpec& spec,
                 const std::string& out_path, const std::string& format,
                 const std::string& plot_script_path) {
    const sweep::Format fmt = [&] {
        if (format == "csv") return sweep::Format::csv;
        if (format == "jsonl") return sweep::Format::jsonl;
        throw std::invalid_argument("unknown format '" + format + "' (expected csv or jsonl)");
    }();

    if (out_path.empty() || out_path == "-") {
        sweep::emit(rows, spec, fmt, std::cout);
        std::cout.flush();
        if (!std::cout) throw IoError("write to stdout failed");
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + out_path);
        try {
            sweep::emit(rows, spec, fmt, out);
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
        out.flush();
        if (!out) throw IoError("write failed: " + out_path);
    }

    if (!plot_script_path.empty()) {
        if (fmt != sweep::Format::csv)
            throw std::invalid_argument("--plot-script requires --format csv");
        std::ofstream script(plot_script_path, std::ios::binary);
        if (!script) throw IoError("cannot open plot script file: " + plot_script_path);
        const std::string csv_ref = (out_path.empty() || out_path == "-") ? "data.csv" : out_path;
        sweep::emit_plot_script(spec, csv_ref, script);
        script.flush();
        if (!script) throw IoError("write failed: " + plot_script_path);
    }
}

channel::DeltaMode parse_mode(const std::string& mode) {
    if (mode == "exact") return channel::DeltaMode::exact;
    if (mode == "perturbative") return channel::DeltaMode::perturbative;
    throw std::invalid_argument("unknown mode '" + mode + "' (expected exact or perturbative)");
}

int run_delta(const std::string& constants_path, double height_km, const std::string& mode,
              int epsilon) {
    const spacetime::EarthModel earth = resolve_earth(constants_path);
    const spacetime::OrbitGeometry geom{earth, height_km * 1000.0, epsilon};
    if (parse_mode(mode) == channel::DeltaMode::exact) {
        const spacetime::FrequencyShift shift = spacetime::kerr_frequency_ratio(geom);
        std::cout << "delta = " << sci(shift.delta) << "\n";
        std::cout << "ratio_minus_one = " << sci(shift.ratio_minus_one) << "\n";
    } else {
        const spacetime::DeltaBreakdown parts = spacetime::delta_perturbative(geom);
        std::cout << "delta = " << sci(parts.total) << "\n";
        std::cout << "delta_sch = " << sci(parts.schwarzschild) << "\n";
        std::cout << "delta_rot = " << sci(parts.rotation) << "\n";
        std::cout << "delta_h = " << sci(parts.higher_order) << "\n";
        if (!parts.higher_order_defined)
            std::cerr << "note: omega = 0 makes the higher-order term singular; reported as 0\n";
    }
    return 0;
}

int run_steer(const std::string& constants_path, double height_km, double s, double omega2,
              double sigma, std::optional<double> peak_hz, std::optional<double> bandwidth_hz,
              const std::string& direction, const std::string& mode, int epsilon) {
    if (s < 0.0 || s > 3.0) throw std::invalid_argument("--squeezing must lie in [0, 3]");
    const spacetime::EarthModel earth = resolve_earth(constants_path);
    channel::WavePacket wp = channel::WavePacket::from_dimensionless(omega2, sigma);
    if (peak_hz) wp.peak_freq_hz = *peak_hz;
    if (bandwidth_hz) wp.bandwidth_hz = *bandwidth_hz;
    wp.validate();

    const spacetime::OrbitGeometry geom{earth, height_km * 1000.0, epsilon};
    const channel::EndToEndResult res = channel::end_to_end(geom, wp, s, parse_mode(mode));
    if (res.narrowband_warning)
        std::cerr << "warning: wavepacket outside the narrowband regime (peak/bandwidth < 1e3)\n";

    std::cout << "delta = " << sci(res.delta) << "\n";
    std::cout << "theta = " << sci(res.theta) << "\n";
    if (direction == "ab" || direction == "both")
        std::cout << "g_ab = " << sci(res.steering.g_ab) << "\n";
    if (direction == "ba" || direction == "both")
        std::cout << "g_ba = " << sci(res.steering.g_ba) << "\n";
    if (direction == "both")
        std::cout << "g_asym = " << sci(res.steering.asymmetry) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian steering of photon pairs sent from a ground station to a satellite"};
    app.require_subcommand(1);

    std::string constants_path;
    app.add_option("--constants", constants_path,
                   "constants override file (key = value; keys r_a_m, r_s_m, omega_rad_s, "
                   "kerr_a_m, c_m_s)")
        ->envname("STEERSAT_CONSTANTS");

    // delta
    auto* cmd_delta = app.add_subcommand("delta", "frequency-shift parameter at a given height");
    double delta_height_km = 0.0;
    std::string delta_mode = "exact";
    int delta_epsilon = 1;
    cmd_delta->add_option("height_km", delta_height_km, "satellite height in km")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_delta->add_option("--mode", delta_mode, "exact|perturbative")
        ->check(CLI::IsMember({"exact", "perturbative"}));
    cmd_delta->add_option("--epsilon", delta_epsilon, "+1 co-rotating, -1 counter-rotating")
        ->check(CLI::IsMember({1, -1}));

    // steer
    auto* cmd_steer = app.add_subcommand("steer", "steering for one parameter point");
    double steer_height_km = 0.0, steer_s = 1.0, steer_omega2 = 1.0, steer_sigma = 1.0;
    std::optional<double> steer_peak_hz, steer_bandwidth_hz;
    std::string steer_direction = "both", steer_mode = "exact";
    int steer_epsilon = 1;
    cmd_steer->add_option("--height-km", steer_height_km, "satellite height in km")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_steer->add_option("--squeezing", steer_s, "squeezing parameter s in [0, 3]")->required();
    cmd_steer->add_option("--omega2", steer_omega2, "peak frequency in units of 500 THz");
    cmd_steer->add_option("--sigma", steer_sigma, "bandwidth in units of 1 MHz");
    cmd_steer->add_option("--peak-hz", steer_peak_hz, "raw peak frequency override (Hz)");
    cmd_steer->add_option("--bandwidth-hz", steer_bandwidth_hz, "raw bandwidth override (Hz)");
    cmd_steer->add_option("--direction", steer_direction, "ab|ba|both")
        ->check(CLI::IsMember({"ab", "ba", "both"}));
    cmd_steer->add_option("--mode", steer_mode, "exact|perturbative")
        ->check(CLI::IsMember({"exact", "perturbative"}));
    cmd_steer->add_option("--epsilon", steer_epsilon, "+1|-1")->check(CLI::IsMember({1, -1}));

    // figure
    auto* cmd_figure = app.add_subcommand("figure", "run a figure preset sweep");
    std::string figure_id, figure_out = "-", figure_format = "csv", figure_plot_script;
    int figure_threads = 1;
    cmd_figure->add_option("id", figure_id, "fig1|fig2|fig3a|fig3b|fig4")->required();
    cmd_figure->add_option("--out", figure_out, "output path ('-' for stdout)");
    cmd_figure->add_option("--format", figure_format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_figure->add_option("--plot-script", figure_plot_script, "write a matplotlib script here");
    cmd_figure->add_option("--threads", figure_threads, "worker threads")
        ->check(CLI::PositiveNumber);

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "general 1- or 2-axis sweep");
    std::vector<std::string> sweep_vars, sweep_fixed;
    std::string sweep_out = "-", sweep_format = "csv", sweep_delta_mode = "exact",
                sweep_plot_script;
    int sweep_epsilon = 1, sweep_threads = 1;
    cmd_sweep->add_option("--var", sweep_vars, "axis spec name=lo:hi:steps (1 or 2)")
        ->required()
        ->expected(1, 2);
    cmd_sweep->add_option("--fixed", sweep_fixed, "fixed parameter name=value");
    cmd_sweep->add_option("--out", sweep_out, "output path ('-' for stdout)");
    cmd_sweep->add_option("--format", sweep_format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_sweep->add_option("--delta-mode", sweep_delta_mode, "exact|perturbative")
        ->check(CLI::IsMember({"exact", "perturbative"}));
    cmd_sweep->add_option("--epsilon", sweep_epsilon, "+1|-1")->check(CLI::IsMember({1, -1}));
    cmd_sweep->add_option("--plot-script", sweep_plot_script, "write a matplotlib script here");
    cmd_sweep->add_option("--threads", sweep_threads, "worker threads")
        ->check(CLI::PositiveNumber);

    // diag
    auto* cmd_diag = app.add_subcommand("diag", "model cross-checks and convention comparisons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_delta->parsed())
            return run_delta(constants_path, delta_height_km, delta_mode, delta_epsilon);
        if (cmd_steer->parsed())
            return run_steer(constants_path, steer_height_km, steer_s, steer_omega2, steer_sigma,
                             steer_peak_hz, steer_bandwidth_hz, steer_direction, steer_mode,
                             steer_epsilon);
        if (cmd_figure->parsed()) {
            const sweep::SweepSpec spec =
                sweep::figure_preset(sweep::figure_id_from_string(figure_id));
            const auto rows = sweep::run_sweep(spec, resolve_earth(constants_path), figure_threads);
            write_table(rows, spec, figure_out, figure_format, figure_plot_script);
            return 0;
        }
        if (cmd_sweep->parsed()) {
            sweep::SweepSpec spec;
            for (const std::string& v : sweep_vars) spec.axes.push_back(parse_axis(v));
            apply_fixed(spec, sweep_fixed);
            spec.delta_mode = parse_mode(sweep_delta_mode);
            spec.epsilon = sweep_epsilon;
            const auto rows = sweep::run_sweep(spec, resolve_earth(constants_path), sweep_threads);
            write_table(rows, spec, sweep_out, sweep_format, sweep_plot_script);
            return 0;
        }
        if (cmd_diag->parsed()) {
            std::cout << channel::diagnostics_report(resolve_earth(constants_path));
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
