#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcsq/noise_spectra.hpp"
#include "rcsq/output_field.hpp"
#include "rcsq/params.hpp"
#include "rcsq/quadrature.hpp"
#include "rcsq/steady_state.hpp"
#include "rcsq/variance.hpp"

namespace rcsq {

enum class SweepAxis { detuning, power, temperature, squeeze_r };
enum class SweepQuantity { momentum_variance, position_variance, steady_state, output_check };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::detuning: return "detuning";
        case SweepAxis::power: return "power";
        case SweepAxis::temperature: return "temperature";
        case SweepAxis::squeeze_r: return "squeeze_r";
    }
    return "?";
}

inline const char* to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::momentum_variance: return "momentum_variance";
        case SweepQuantity::position_variance: return "position_variance";
        case SweepQuantity::steady_state: return "steady_state";
        case SweepQuantity::output_check: return "output_check";
    }
    return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "detuning") return SweepAxis::detuning;
    if (s == "power") return SweepAxis::power;
    if (s == "temperature") return SweepAxis::temperature;
    if (s == "squeeze_r") return SweepAxis::squeeze_r;
    throw std::invalid_argument("unknown sweep axis: " + s);
}

inline SweepQuantity sweep_quantity_from_string(const std::string& s) {
    if (s == "momentum_variance") return SweepQuantity::momentum_variance;
    if (s == "position_variance") return SweepQuantity::position_variance;
    if (s == "steady_state") return SweepQuantity::steady_state;
    if (s == "output_check") return SweepQuantity::output_check;
    throw std::invalid_argument("unknown sweep quantity: " + s);
}

/// Axis units follow the figure conventions: detuning in 2pi x 10^6 Hz,
/// power in microwatt, temperature in millikelvin, squeeze_r dimensionless.
struct SweepSpec {
    SweepAxis axis = SweepAxis::detuning;
    double start = 0;
    double stop = 1;
    int points = 2;
    PhysicalParams fixed;
    SweepQuantity quantity = SweepQuantity::momentum_variance;
};

inline void validate(const SweepSpec& s) {
    if (!(s.start < s.stop))
        throw std::invalid_argument("sweep start must be less than stop");
    if (s.points < 2)
        throw std::invalid_argument("sweep needs at least 2 points");
    derive_params(s.fixed);  // rejects invalid fixed parameters
}

/// Axis value in interface units applied onto the fixed parameter set.
inline PhysicalParams apply_axis(PhysicalParams p, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::detuning: p.detuning = value * 2e6 * constants::pi; break;
        case SweepAxis::power: p.pump_power = value * 1e-6; break;
        case SweepAxis::temperature: p.temperature = value * 1e-3; break;
        case SweepAxis::squeeze_r: p.squeeze_r = value; break;
    }
    return p;
}

/// One grid point of a sweep. Variance fields hold NaN (empty cells on disk)
/// when the point is unstable, failed, or the quantity does not produce them.
struct SweepRow {
    double axis_value = 0;
    double total = std::numeric_limits<double>::quiet_NaN();
    double thermal_term = std::numeric_limits<double>::quiet_NaN();
    double m_term = std::numeric_limits<double>::quiet_NaN();
    double n_term = std::numeric_limits<double>::quiet_NaN();
    double vacuum_term = std::numeric_limits<double>::quiet_NaN();
    double squeezing_percent = std::numeric_limits<double>::quiet_NaN();
    double q_s = std::numeric_limits<double>::quiet_NaN();
    double abs_c_s = std::numeric_limits<double>::quiet_NaN();
    bool multistable = false;
    bool stable = false;
    bool linearization_valid = false;
    double quad_error = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;  ///< false marks a per-point failure (not serialized)
};

namespace detail {

// Fixed probe set for output_check: round-trip reconstruction error of the
// transduction algebra at a spread of frequencies.
inline double output_roundtrip_error(const DerivedParams& d, const OperatingPoint& op,
                                     double delta) {
    static constexpr double multipliers[] = {0.11, 0.37, 0.72, 0.98, 1.0,
                                             1.02, 1.6,  3.1,  7.9,  14.2};
    double worst = 0.0;
    int k = 1;
    for (double mult : multipliers) {
        for (double sign : {1.0, -1.0}) {
            const double w = sign * mult * d.omega_m;
            const auto t_plus = output_transfer_at(d, op, delta, w);
            const auto t_minus = output_transfer_at(d, op, delta, -w);
            const Complex dp(0.3 + 0.1 * k, -0.7 + 0.05 * k);
            const Complex cin(-1.1 + 0.2 * k, 0.4);
            const Complex cdag(0.6, 0.9 - 0.1 * k);
            ++k;
            const Complex y = output_y_quadrature(t_plus, t_minus, dp, cin, cdag);
            const Complex back = reconstruct_momentum(t_plus, y, cin, cdag);
            worst = std::max(worst, std::abs(back - dp) / std::abs(dp));
        }
    }
    return worst;
}

inline SweepRow evaluate_point(const SweepSpec& spec, const QuadratureConfig& cfg,
                               double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    const PhysicalParams p = apply_axis(spec.fixed, spec.axis, axis_value);
    try {
        const DerivedParams d = derive_params(p);
        const SteadyState ss = solve_steady_state(d, p.detuning);
        row.q_s = ss.q_s;
        row.abs_c_s = std::abs(ss.c_s);
        row.multistable = ss.multistable;
        row.linearization_valid = ss.linearization_valid;
        row.stable = true;

        switch (spec.quantity) {
            case SweepQuantity::steady_state:
                break;
            case SweepQuantity::output_check:
                row.quad_error = output_roundtrip_error(d, ss, p.detuning);
                break;
            case SweepQuantity::momentum_variance:
            case SweepQuantity::position_variance: {
                const Baths baths = make_baths(d, p.temperature);
                const VarianceBreakdown v =
                    spec.quantity == SweepQuantity::momentum_variance
                        ? momentum_variance(d, ss, p.detuning, baths, cfg)
                        : position_variance(d, ss, p.detuning, baths, cfg);
                row.total = v.total;
                row.thermal_term = v.thermal_term;
                row.m_term = v.m_term;
                row.n_term = v.n_term;
                row.vacuum_term = v.vacuum_term;
                row.squeezing_percent = v.squeezing_percent;
                row.quad_error = v.estimated_quadrature_error;
                break;
            }
        }
        row.ok = true;
    } catch (const std::exception&) {
        row.ok = false;  // flags stay down, variance cells stay empty
    }
    return row;
}

}  // namespace detail

/// Runs the sweep grid; per-point failures are recorded in the row flags
/// instead of aborting. Rows come back in axis order regardless of how many
/// workers computed them.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const QuadratureConfig& cfg,
                                       unsigned n_threads = 1) {
    validate(spec);
    validate(cfg);
    const int n = spec.points;
    std::vector<SweepRow> rows(static_cast<std::size_t>(n));
    auto axis_at = [&](int i) {
        return spec.start + (spec.stop - spec.start) * i / (n - 1.0);
    };

    if (n_threads <= 1) {
        for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] = detail::evaluate_point(spec, cfg, axis_at(i));
        return rows;
    }

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            rows[static_cast<std::size_t>(i)] = detail::evaluate_point(spec, cfg, axis_at(i));
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

/// Golden-section minimum of a unimodal objective on [a, b] to within tol.
inline double minimize_scalar(const std::function<double(double)>& f, double a,
                              double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

/// Coarse scan of the sweep grid followed by golden-section refinement of the
/// bracketed interior minimum of the momentum variance.
inline std::pair<double, VarianceBreakdown> find_minimum(const SweepSpec& spec,
                                                         const QuadratureConfig& cfg,
                                                         unsigned n_threads = 1) {
    if (spec.quantity != SweepQuantity::momentum_variance)
        throw std::invalid_argument("find_minimum requires quantity = momentum_variance");
    const std::vector<SweepRow> rows = run_sweep(spec, cfg, n_threads);

    int best = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        if (!r.ok || std::isnan(r.total)) continue;
        if (best < 0 || r.total < rows[static_cast<std::size_t>(best)].total) best = i;
    }
    if (best <= 0 || best + 1 >= static_cast<int>(rows.size()))
        throw std::runtime_error("no interior minimum");
    const auto& lo = rows[static_cast<std::size_t>(best - 1)];
    const auto& hi = rows[static_cast<std::size_t>(best + 1)];
    if (!lo.ok || !hi.ok)
        throw std::runtime_error("no interior minimum");

    auto objective = [&](double x) {
        const PhysicalParams p = apply_axis(spec.fixed, spec.axis, x);
        const DerivedParams d = derive_params(p);
        const SteadyState ss = solve_steady_state(d, p.detuning);
        return momentum_variance(d, ss, p.detuning, make_baths(d, p.temperature), cfg).total;
    };
    const double tol = 1e-3 * (spec.stop - spec.start);
    const double x_min = minimize_scalar(objective, lo.axis_value, hi.axis_value, tol);

    const PhysicalParams p = apply_axis(spec.fixed, spec.axis, x_min);
    const DerivedParams d = derive_params(p);
    const SteadyState ss = solve_steady_state(d, p.detuning);
    return {x_min,
            momentum_variance(d, ss, p.detuning, make_baths(d, p.temperature), cfg)};
}

// ---------------------------------------------------------------------------
// Serialization. Doubles are written with 17 significant digits so that a
// re-parse reproduces them bit for bit; empty cells stand for NaN.

namespace detail {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "axis_value,total,thermal_term,m_term,n_term,vacuum_term,squeezing_percent,"
    "q_s,abs_c_s,multistable,stable,linearization_valid,quad_error";

inline void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << detail::format_double(r.axis_value) << ','
            << detail::format_double(r.total) << ','
            << detail::format_double(r.thermal_term) << ','
            << detail::format_double(r.m_term) << ','
            << detail::format_double(r.n_term) << ','
            << detail::format_double(r.vacuum_term) << ','
            << detail::format_double(r.squeezing_percent) << ','
            << detail::format_double(r.q_s) << ','
            << detail::format_double(r.abs_c_s) << ','
            << (r.multistable ? 1 : 0) << ',' << (r.stable ? 1 : 0) << ','
            << (r.linearization_valid ? 1 : 0) << ','
            << detail::format_double(r.quad_error) << '\n';
    }
}

inline std::vector<SweepRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw std::invalid_argument("bad sweep CSV header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 13) cells.emplace_back();  // trailing empty cell
        if (cells.size() != 13)
            throw std::invalid_argument("bad sweep CSV row: " + line);
        auto num = [](const std::string& s) {
            return s.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : std::strtod(s.c_str(), nullptr);
        };
        SweepRow r;
        r.axis_value = num(cells[0]);
        r.total = num(cells[1]);
        r.thermal_term = num(cells[2]);
        r.m_term = num(cells[3]);
        r.n_term = num(cells[4]);
        r.vacuum_term = num(cells[5]);
        r.squeezing_percent = num(cells[6]);
        r.q_s = num(cells[7]);
        r.abs_c_s = num(cells[8]);
        r.multistable = cells[9] == "1";
        r.stable = cells[10] == "1";
        r.linearization_valid = cells[11] == "1";
        r.quad_error = num(cells[12]);
        r.ok = true;
        rows.push_back(r);
    }
    return rows;
}

inline nlohmann::json to_json(const SweepRow& r) {
    auto field = [](double v) {
        return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
    };
    return {{"axis_value", r.axis_value},
            {"total", field(r.total)},
            {"thermal_term", field(r.thermal_term)},
            {"m_term", field(r.m_term)},
            {"n_term", field(r.n_term)},
            {"vacuum_term", field(r.vacuum_term)},
            {"squeezing_percent", field(r.squeezing_percent)},
            {"q_s", field(r.q_s)},
            {"abs_c_s", field(r.abs_c_s)},
            {"multistable", r.multistable},
            {"stable", r.stable},
            {"linearization_valid", r.linearization_valid},
            {"quad_error", field(r.quad_error)}};
}

inline void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

}  // namespace rcsq
