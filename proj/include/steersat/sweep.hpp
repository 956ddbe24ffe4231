// sweep.hpp — parameter-sweep engine, figure presets and table emission
//
// Grid points are independent and may be evaluated in parallel; results are
// assembled in row-major axis order so output is deterministic regardless of
// thread count.

#pragma once

#include "steersat/channel.hpp"
#include "steersat/spacetime.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace steersat::sweep {

enum class AxisName { h, s, sigma, omega2 };

std::string axis_column_name(AxisName name);  // h -> "h_km", others verbatim
AxisName axis_name_from_string(const std::string& s);

struct Axis {
    AxisName name;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;  // >= 2, linear spacing
};

// Values for parameters not swept. Heights in km at this interface.
struct FixedParams {
    double h_km = 20000.0;
    double s = 1.0;
    double sigma = 1.0;   // sigma_tilde, units of 1 MHz
    double omega2 = 1.0;  // peak frequency, units of 500 THz
};

struct SweepSpec {
    std::vector<Axis> axes;  // 1 or 2, distinct names
    FixedParams fixed;
    channel::DeltaMode delta_mode = channel::DeltaMode::exact;
    int epsilon = +1;

    void validate() const;
    std::size_t total_points() const;
};

struct SweepRow {
    double h_km = 0.0;
    double s = 0.0;
    double sigma = 1.0;
    double omega2 = 1.0;
    double delta = 0.0;
    double theta = 1.0;
    double g_ab = 0.0;
    double g_ba = 0.0;
    double g_asym = 0.0;
};

// Rows in row-major order (first axis outermost). Any pipeline error aborts
// with the offending grid point identified.
std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const spacetime::EarthModel& earth = spacetime::EarthModel::defaults(),
                                int n_threads = 1);

enum class FigureId { fig1, fig2, fig3a, fig3b, fig4 };

FigureId figure_id_from_string(const std::string& s);
SweepSpec figure_preset(FigureId id);

enum class Format { csv, jsonl };

// CSV: header + 12-significant-digit lowercase scientific values, axis columns
// only when swept, LF line endings. JSONL: one flat object per row, numbers at
// full precision. Byte-stable across runs.
void emit(const std::vector<SweepRow>& rows, const SweepSpec& spec, Format format,
          std::ostream& out);

// Generic matplotlib script reading the CSV by relative path.
void emit_plot_script(const SweepSpec& spec, const std::string& csv_relpath,
                      std::ostream& out);

} // namespace steersat::sweep
