// sweep.cpp — sweep engine, presets, CSV/JSONL emission

#include "steersat/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace steersat::sweep {

namespace {

constexpr double kGeoHeightKm = 35784.0;

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

double axis_value(const Axis& axis, int i) {
    if (axis.steps == 1) return axis.lo;
    return axis.lo + (axis.hi - axis.lo) * static_cast<double>(i) /
                         static_cast<double>(axis.steps - 1);
}

void check_axis_range(AxisName name, double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
        throw std::invalid_argument("sweep axis: bad range");
    switch (name) {
        case AxisName::h:
            if (lo < 0.0 || hi > kGeoHeightKm)
                throw std::invalid_argument("sweep axis h: range must lie in [0, 35784] km");
            break;
        case AxisName::s:
            if (lo < 0.0 || hi > 3.0)
                throw std::invalid_argument("sweep axis s: range must lie in [0, 3]");
            break;
        case AxisName::sigma:
        case AxisName::omega2:
            if (lo <= 0.0)
                throw std::invalid_argument("sweep axis: sigma and omega2 must be > 0");
            break;
    }
}

void set_param(SweepRow& row, AxisName name, double value) {
    switch (name) {
        case AxisName::h: row.h_km = value; break;
        case AxisName::s: row.s = value; break;
        case AxisName::sigma: row.sigma = value; break;
        case AxisName::omega2: row.omega2 = value; break;
    }
}

std::vector<AxisName> swept_columns(const SweepSpec& spec) {
    // canonical column order regardless of axis order
    std::vector<AxisName> out;
    for (AxisName name : {AxisName::h, AxisName::s, AxisName::sigma, AxisName::omega2})
        for (const Axis& axis : spec.axes)
            if (axis.name == name) out.push_back(name);
    return out;
}

double row_column(const SweepRow& row, AxisName name) {
    switch (name) {
        case AxisName::h: return row.h_km;
        case AxisName::s: return row.s;
        case AxisName::sigma: return row.sigma;
        case AxisName::omega2: return row.omega2;
    }
    return 0.0;
}

} // namespace

std::string axis_column_name(AxisName name) {
    switch (name) {
        case AxisName::h: return "h_km";
        case AxisName::s: return "s";
        case AxisName::sigma: return "sigma";
        case AxisName::omega2: return "omega2";
    }
    return {};
}

AxisName axis_name_from_string(const std::string& s) {
    if (s == "h" || s == "h_km") return AxisName::h;
    if (s == "s") return AxisName::s;
    if (s == "sigma") return AxisName::sigma;
    if (s == "omega2") return AxisName::omega2;
    throw std::invalid_argument("unknown axis name '" + s + "' (expected h, s, sigma, omega2)");
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("sweep: need 1 or 2 axes");
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw std::invalid_argument("sweep: axis names must be distinct");
    for (const Axis& axis : axes) {
        if (axis.steps < 2) throw std::invalid_argument("sweep axis: steps must be >= 2");
        check_axis_range(axis.name, axis.lo, axis.hi);
    }
    const auto swept = [&](AxisName name) {
        return std::any_of(axes.begin(), axes.end(),
                           [name](const Axis& a) { return a.name == name; });
    };
    if (!swept(AxisName::h)) check_axis_range(AxisName::h, fixed.h_km, fixed.h_km);
    if (!swept(AxisName::s)) check_axis_range(AxisName::s, fixed.s, fixed.s);
    if (!swept(AxisName::sigma)) check_axis_range(AxisName::sigma, fixed.sigma, fixed.sigma);
    if (!swept(AxisName::omega2)) check_axis_range(AxisName::omega2, fixed.omega2, fixed.omega2);
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("sweep: epsilon must be +1 or -1");
}

std::size_t SweepSpec::total_points() const {
    std::size_t total = 1;
    for (const Axis& axis : axes) total *= static_cast<std::size_t>(axis.steps);
    return total;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const spacetime::EarthModel& earth,
                                int n_threads) {
    spec.validate();
    if (n_threads < 1) throw std::invalid_argument("run_sweep: n_threads must be >= 1");

    const std::size_t total = spec.total_points();
    const std::size_t inner = spec.axes.size() == 2
                                  ? static_cast<std::size_t>(spec.axes[1].steps)
                                  : 1;
    std::vector<SweepRow> rows(total);

    std::mutex error_mutex;
    std::size_t error_index = total;
    std::string error_message;

    const auto evaluate_point = [&](std::size_t flat) {
        SweepRow& row = rows[flat];
        row.h_km = spec.fixed.h_km;
        row.s = spec.fixed.s;
        row.sigma = spec.fixed.sigma;
        row.omega2 = spec.fixed.omega2;
        set_param(row, spec.axes[0].name, axis_value(spec.axes[0], static_cast<int>(flat / inner)));
        if (spec.axes.size() == 2)
            set_param(row, spec.axes[1].name,
                      axis_value(spec.axes[1], static_cast<int>(flat % inner)));

        const channel::WavePacket wp =
            channel::WavePacket::from_dimensionless(row.omega2, row.sigma);
        const spacetime::OrbitGeometry geom{earth, row.h_km * 1000.0, spec.epsilon};
        const channel::EndToEndResult res = channel::end_to_end(geom, wp, row.s, spec.delta_mode);
        row.delta = res.delta;
        row.theta = res.theta;
        row.g_ab = res.steering.g_ab;
        row.g_ba = res.steering.g_ba;
        row.g_asym = res.steering.asymmetry;
    };

    const auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t flat = begin; flat < end; ++flat) {
            try {
                evaluate_point(flat);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (flat < error_index) {
                    error_index = flat;
                    error_message = e.what();
                }
                return;
            }
        }
    };

    if (n_threads == 1 || total < 2) {
        run_range(0, total);
    } else {
        const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), total);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (std::thread& t : pool) t.join();
    }

    if (error_index < total) {
        const SweepRow& row = rows[error_index];
        std::ostringstream msg;
        msg << "sweep failed at h_km=" << row.h_km << " s=" << row.s << " sigma=" << row.sigma
            << " omega2=" << row.omega2 << ": " << error_message;
        throw std::runtime_error(msg.str());
    }
    return rows;
}

FigureId figure_id_from_string(const std::string& s) {
    if (s == "fig1") return FigureId::fig1;
    if (s == "fig2") return FigureId::fig2;
    if (s == "fig3a") return FigureId::fig3a;
    if (s == "fig3b") return FigureId::fig3b;
    if (s == "fig4") return FigureId::fig4;
    throw std::invalid_argument("unknown figure id '" + s +
                                "' (expected fig1, fig2, fig3a, fig3b, fig4)");
}

SweepSpec figure_preset(FigureId id) {
    SweepSpec spec;
    switch (id) {
        case FigureId::fig1:
            // steering vs squeezing at h = 20000 km, three peak-frequency series
            spec.axes = {{AxisName::omega2, 0.6, 1.4, 3}, {AxisName::s, 0.0, 3.0, 400}};
            spec.fixed.h_km = 20000.0;
            spec.fixed.sigma = 1.0;
            break;
        case FigureId::fig2:
            // (h, sigma) surface at s = 1, omega2 = 1
            spec.axes = {{AxisName::h, 0.0, kGeoHeightKm, 200}, {AxisName::sigma, 0.5, 2.0, 200}};
            spec.fixed.s = 1.0;
            spec.fixed.omega2 = 1.0;
            break;
        case FigureId::fig3a:
            spec.axes = {{AxisName::h, 0.0, kGeoHeightKm, 400}};
            spec.fixed.s = 1.0;
            spec.fixed.sigma = 1.0;
            spec.fixed.omega2 = 0.6;
            break;
        case FigureId::fig3b:
            spec.axes = {{AxisName::h, 0.0, kGeoHeightKm, 400}};
            spec.fixed.s = 1.0;
            spec.fixed.sigma = 1.0;
            spec.fixed.omega2 = 1.0;
            break;
        case FigureId::fig4:
            // asymmetry surface over (h, omega2) at s = 1, sigma = 1
            spec.axes = {{AxisName::h, 0.0, kGeoHeightKm, 200}, {AxisName::omega2, 0.6, 1.0, 200}};
            spec.fixed.s = 1.0;
            spec.fixed.sigma = 1.0;
            break;
    }
    return spec;
}

void emit(const std::vector<SweepRow>& rows, const SweepSpec& spec, Format format,
          std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit: no rows");
    const std::vector<AxisName> axes = swept_columns(spec);
    static const char* kValueColumns[] = {"delta", "theta", "g_ab", "g_ba", "g_asym"};

    if (format == Format::csv) {
        bool first = true;
        for (AxisName name : axes) {
            if (!first) out << ',';
            out << axis_column_name(name);
            first = false;
        }
        for (const char* name : kValueColumns) {
            if (!first) out << ',';
            out << name;
            first = false;
        }
        out << '\n';
        for (const SweepRow& row : rows) {
            first = true;
            for (AxisName name : axes) {
                if (!first) out << ',';
                out << format_sci(row_column(row, name));
                first = false;
            }
            const double values[] = {row.delta, row.theta, row.g_ab, row.g_ba, row.g_asym};
            for (double v : values) {
                if (!first) out << ',';
                out << format_sci(v);
                first = false;
            }
            out << '\n';
        }
    } else {
        for (const SweepRow& row : rows) {
            nlohmann::ordered_json obj;
            for (AxisName name : axes) obj[axis_column_name(name)] = row_column(row, name);
            obj["delta"] = row.delta;
            obj["theta"] = row.theta;
            obj["g_ab"] = row.g_ab;
            obj["g_ba"] = row.g_ba;
            obj["g_asym"] = row.g_asym;
            out << obj.dump() << '\n';
        }
    }
    if (!out) throw std::runtime_error("emit: write failed");
}

void emit_plot_script(const SweepSpec& spec, const std::string& csv_relpath,
                      std::ostream& out) {
    const std::vector<AxisName> axes = swept_columns(spec);
    const std::string x_col = axis_column_name(spec.axes[0].name);
    const std::string series_col =
        spec.axes.size() == 2 ? axis_column_name(spec.axes[1].name) : "";

    out << "#!/usr/bin/env python3\n";
    out << "import csv\n";
    out << "from collections import defaultdict\n";
    out << "import matplotlib.pyplot as plt\n\n";
    out << "CSV_PATH = \"" << csv_relpath << "\"\n";
    out << "X = \"" << x_col << "\"\n";
    out << "SERIES = \"" << series_col << "\"\n";
    out << "Y_COLUMNS = [\"g_ab\", \"g_ba\", \"g_asym\"]\n\n";
    out << "rows = list(csv.DictReader(open(CSV_PATH)))\n";
    out << "groups = defaultdict(list)\n";
    out << "for r in rows:\n";
    out << "    groups[r[SERIES] if SERIES else \"\"] .append(r)\n\n";
    out << "fig, ax = plt.subplots()\n";
    out << "for key, grp in sorted(groups.items()):\n";
    out << "    xs = [float(r[X]) for r in grp]\n";
    out << "    for y in Y_COLUMNS:\n";
    out << "        label = y + (f\" ({SERIES}={key})\" if key else \"\")\n";
    out << "        ax.plot(xs, [float(r[y]) for r in grp], label=label)\n";
    out << "ax.set_xlabel(X)\n";
    out << "ax.legend(fontsize=6)\n";
    out << "fig.savefig(CSV_PATH.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n";
    if (!out) throw std::runtime_error("emit_plot_script: write failed");
}

} // namespace steersat::sweep
