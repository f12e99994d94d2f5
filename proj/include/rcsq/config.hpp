#pragma once

#include <cstdlib>
#include <istream>
#include <stdexcept>
#include <string>

#include "rcsq/constants.hpp"
#include "rcsq/params.hpp"
#include "rcsq/quadrature.hpp"
#include "rcsq/sweep.hpp"

namespace rcsq {

/// Everything a configuration file can set. Values arrive in interface units
/// ([physical] keys carry their unit in the name) and are converted to the
/// internal rad/s and SI fields on assignment.
struct Config {
    PhysicalParams physical;
    QuadratureConfig quadrature;
    SweepSpec sweep;  ///< fixed params mirrored from `physical` by parse_config
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw std::invalid_argument("bad numeric value for " + key + ": " + v);
    return x;
}

}  // namespace detail

/// Parses the flat `key = value` format with [physical], [quadrature] and
/// [sweep] sections. Unknown sections or keys are errors; '#' starts a
/// comment. Returned sweep.fixed mirrors the [physical] section.
inline Config parse_config(std::istream& in) {
    Config cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("malformed section header at line " +
                                            std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "physical" && section != "quadrature" && section != "sweep")
                throw std::invalid_argument("unknown config section: [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key = value at line " +
                                        std::to_string(lineno));
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (section.empty())
            throw std::invalid_argument("key outside any section: " + key);

        const double twopi_mhz = 2e6 * constants::pi;
        if (section == "physical") {
            auto& p = cfg.physical;
            if (key == "wavelength_nm") p.wavelength_laser = detail::to_double(val, key);
            else if (key == "pump_power_uw") p.pump_power = detail::to_double(val, key) * 1e-6;
            else if (key == "mass_pg") p.mass = detail::to_double(val, key) * 1e-15;
            else if (key == "mech_freq_mhz") p.mech_freq = detail::to_double(val, key) * twopi_mhz;
            else if (key == "quality_factor") p.quality_factor = detail::to_double(val, key);
            else if (key == "kappa_e_ratio") p.kappa_e_ratio = detail::to_double(val, key);
            else if (key == "kappa_om_slope_mhz_per_nm")
                p.kappa_om_slope = detail::to_double(val, key) * twopi_mhz;
            else if (key == "detuning_2pi_mhz") p.detuning = detail::to_double(val, key) * twopi_mhz;
            else if (key == "squeeze_r") p.squeeze_r = detail::to_double(val, key);
            else if (key == "squeeze_phi") p.squeeze_phi = detail::to_double(val, key);
            else if (key == "bandwidth_ratio") p.bandwidth_ratio = detail::to_double(val, key);
            else if (key == "temperature_mk") p.temperature = detail::to_double(val, key) * 1e-3;
            else if (key == "dispersive_g") p.dispersive_g = detail::to_double(val, key);
            else throw std::invalid_argument("unknown [physical] key: " + key);
        } else if (section == "quadrature") {
            auto& q = cfg.quadrature;
            if (key == "rel_tol") q.rel_tol = detail::to_double(val, key);
            else if (key == "abs_tol") q.abs_tol = detail::to_double(val, key);
            else if (key == "cutoff_factor") q.cutoff_factor = detail::to_double(val, key);
            else if (key == "nu_cutoff_factor") q.nu_cutoff_factor = detail::to_double(val, key);
            else if (key == "max_panels")
                q.max_panels = static_cast<std::size_t>(detail::to_double(val, key));
            else throw std::invalid_argument("unknown [quadrature] key: " + key);
        } else {  // sweep
            auto& s = cfg.sweep;
            if (key == "axis") s.axis = sweep_axis_from_string(val);
            else if (key == "start") s.start = detail::to_double(val, key);
            else if (key == "stop") s.stop = detail::to_double(val, key);
            else if (key == "points")
                s.points = static_cast<int>(detail::to_double(val, key));
            else if (key == "quantity") s.quantity = sweep_quantity_from_string(val);
            else throw std::invalid_argument("unknown [sweep] key: " + key);
        }
    }
    cfg.sweep.fixed = cfg.physical;
    return cfg;
}

}  // namespace rcsq
