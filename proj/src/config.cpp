#include "mwfzp/config.hpp"

#include "mwfzp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mwfzp {

namespace {

struct TomlValue {
    enum class Kind { Number, String, Bool, NumberArray } kind;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<double> arr;
    int line = 0;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Strips a trailing comment that starts outside any quoted string.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        else if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& s, double& out) {
    std::istringstream ss(s);
    ss >> out;
    return ss && ss.eof();
}

TomlValue parse_value(const std::string& raw, int line) {
    TomlValue v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty()) throw config_error("line " + std::to_string(line) + ": missing value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') {
            throw config_error("line " + std::to_string(line) + ": unterminated string");
        }
        v.kind = TomlValue::Kind::String;
        v.str = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = TomlValue::Kind::Bool;
        v.flag = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') {
            throw config_error("line " + std::to_string(line) + ": unterminated array");
        }
        v.kind = TomlValue::Kind::NumberArray;
        std::string body = s.substr(1, s.size() - 2);
        std::istringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            double d;
            if (!parse_number(item, d)) {
                throw config_error("line " + std::to_string(line) + ": bad array element '" +
                                   item + "'");
            }
            v.arr.push_back(d);
        }
        return v;
    }
    if (parse_number(s, v.num)) {
        v.kind = TomlValue::Kind::Number;
        return v;
    }
    throw config_error("line " + std::to_string(line) + ": cannot parse value '" + s + "'");
}

using KeyMap = std::map<std::string, TomlValue>;

KeyMap parse_toml_subset(const std::string& text) {
    KeyMap out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("line " + std::to_string(lineno) + ": bad section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw config_error("line " + std::to_string(lineno) + ": empty section name");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw config_error("line " + std::to_string(lineno) + ": empty key");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full)) {
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + full +
                               "'");
        }
        out.emplace(full, parse_value(line.substr(eq + 1), lineno));
    }
    return out;
}

double as_number(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::Number) {
        throw config_error("key '" + key + "': expected a number");
    }
    return v.num;
}

int as_int(const TomlValue& v, const std::string& key) {
    const double d = as_number(v, key);
    if (d != std::floor(d)) throw config_error("key '" + key + "': expected an integer");
    return static_cast<int>(d);
}

bool as_bool(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::Bool) {
        throw config_error("key '" + key + "': expected true/false");
    }
    return v.flag;
}

std::string as_string(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::String) {
        throw config_error("key '" + key + "': expected a quoted string");
    }
    return v.str;
}

std::vector<double> as_array(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::NumberArray) {
        throw config_error("key '" + key + "': expected an array of numbers");
    }
    return v.arr;
}

BiasVariant parse_scheme(const std::string& s, const std::string& key) {
    if (s == "unbiased") return BiasVariant::Unbiased;
    if (s == "uniform") return BiasVariant::Uniform;
    if (s == "sqrt_n") return BiasVariant::SqrtN;
    if (s == "sinusoidal") return BiasVariant::Sinusoidal;
    throw config_error("key '" + key + "': unknown bias scheme '" + s +
                       "' (expected unbiased|uniform|sqrt_n|sinusoidal)");
}

AbsorberProfile parse_profile(const std::string& s, const std::string& key) {
    if (s == "cos2") return AbsorberProfile::CosineSquared;
    if (s == "exp") return AbsorberProfile::Exponential;
    throw config_error("key '" + key + "': unknown absorber profile '" + s +
                       "' (expected cos2|exp)");
}

void apply_key(RunConfig& c, const std::string& key, const TomlValue& v) {
    if (key == "physical.v_mps") c.v_mps = as_number(v, key);
    else if (key == "physical.T_a_K") c.temp_k = as_number(v, key);
    else if (key == "physical.C3_Jm3") c.c3_jm3 = as_number(v, key);
    else if (key == "physical.l_nm") c.l_nm = as_number(v, key);
    else if (key == "physical.Lambda_nm") c.lambda_cut_nm = as_number(v, key);
    else if (key == "physical.alpha_volume_a0_cubed") c.alpha_volume_a0 = as_number(v, key);
    else if (key == "physical.casimir") c.casimir_enabled = as_bool(v, key);
    else if (key == "physical.image_dipole_term") c.image_dipole_term = as_bool(v, key);
    else if (key == "physical.surface_distance") c.surface_distance = as_string(v, key);
    else if (key == "geometry.r1_nm") c.r1_nm = as_number(v, key);
    else if (key == "geometry.d_nm") c.d_nm = as_number(v, key);
    else if (key == "geometry.W_g0_over_Ek0") c.w_g0_over_ek0 = as_number(v, key);
    else if (key == "geometry.W_g0_ueV") c.w_g0_uev = as_number(v, key);
    else if (key == "geometry.n_zones") c.n_zones = as_int(v, key);
    else if (key == "geometry.x_front_scaled") c.x_front = as_number(v, key);
    else if (key == "grid.n") { c.nx = c.ny = as_int(v, key); }
    else if (key == "grid.nx") c.nx = as_int(v, key);
    else if (key == "grid.ny") c.ny = as_int(v, key);
    else if (key == "grid.dx_scaled") c.dx = as_number(v, key);
    else if (key == "grid.beta_nm") c.beta_nm = as_number(v, key);
    else if (key == "packet.sigma_x_nm") c.sigma_x_nm = as_number(v, key);
    else if (key == "packet.sigma_y_nm") c.sigma_y_nm = as_number(v, key);
    else if (key == "packet.x0_scaled") c.x0 = as_number(v, key);
    else if (key == "packet.y0_scaled") c.y0 = as_number(v, key);
    else if (key == "packet.clip_tol") c.packet_clip_tol = as_number(v, key);
    else if (key == "bias.scheme") c.bias.variant = parse_scheme(as_string(v, key), key);
    else if (key == "bias.V1") c.bias.v1 = as_number(v, key);
    else if (key == "bias.k_E") c.bias.k_e = as_number(v, key);
    else if (key == "solver.dT") c.dt = as_number(v, key);
    else if (key == "solver.T_max") c.t_max = as_number(v, key);
    else if (key == "solver.Tc_measure_T") c.tc_measure_t = as_number(v, key);
    else if (key == "solver.absorber_cells") c.absorber_cells = as_int(v, key);
    else if (key == "solver.absorber_profile")
        c.absorber_profile = parse_profile(as_string(v, key), key);
    else if (key == "solver.absorber_strength") c.absorber_strength = as_number(v, key);
    else if (key == "solver.sor_omega") c.sor_omega = as_number(v, key);
    else if (key == "solver.sor_tol") c.sor_tol = as_number(v, key);
    else if (key == "solver.sor_max_iter") c.sor_max_iter = as_int(v, key);
    else if (key == "solver.sample_stride") c.sample_stride = as_int(v, key);
    else if (key == "solver.refine_dT") c.refine_dt = as_bool(v, key);
    else if (key == "output.dir") c.out_dir = as_string(v, key);
    else if (key == "output.snapshot_times") c.snapshot_times = as_array(v, key);
    else if (key == "output.emit_fields") c.emit_fields = as_bool(v, key);
    else if (key == "sweep.parameter") {
        if (!c.sweep) c.sweep.emplace();
        c.sweep->parameter = as_string(v, key);
    } else if (key == "sweep.values") {
        if (!c.sweep) c.sweep.emplace();
        c.sweep->values = as_array(v, key);
    } else if (key == "sweep.k_E_values") {
        if (!c.sweep) c.sweep.emplace();
        c.sweep->k_e_values = as_array(v, key);
    } else {
        throw config_error("unknown configuration key '" + key + "'");
    }
}

void require_positive(double v, const char* key) {
    if (!(v > 0.0)) throw config_error(std::string("key '") + key + "' must be positive");
}

void check_strictly_increasing(const std::vector<double>& v, const char* key) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) {
            throw config_error(std::string("key '") + key + "' must be strictly increasing");
        }
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    const KeyMap kv = parse_toml_subset(text);
    const bool v_given = kv.count("physical.v_mps") > 0;
    const bool t_given = kv.count("physical.T_a_K") > 0;
    if (v_given && t_given) {
        throw config_error("keys 'physical.v_mps' and 'physical.T_a_K' are mutually exclusive");
    }
    if (t_given) cfg.v_mps.reset();  // switch the default source off
    for (const auto& [key, value] : kv) apply_key(cfg, key, value);
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(RunConfig& c) {
    c.warnings.clear();
    if (c.v_mps && c.temp_k) {
        throw config_error("exactly one of physical.v_mps / physical.T_a_K may be set");
    }
    if (!c.v_mps && !c.temp_k) {
        throw config_error("one of physical.v_mps / physical.T_a_K is required");
    }
    if (c.v_mps) require_positive(*c.v_mps, "physical.v_mps");
    if (c.temp_k) require_positive(*c.temp_k, "physical.T_a_K");
    require_positive(c.c3_jm3, "physical.C3_Jm3");
    require_positive(c.l_nm, "physical.l_nm");
    require_positive(c.lambda_cut_nm, "physical.Lambda_nm");
    require_positive(c.alpha_volume_a0, "physical.alpha_volume_a0_cubed");
    if (c.surface_distance != "axial" && c.surface_distance != "euclidean") {
        throw config_error("key 'physical.surface_distance' must be axial or euclidean");
    }
    require_positive(c.r1_nm, "geometry.r1_nm");
    require_positive(c.d_nm, "geometry.d_nm");
    if (!c.w_g0_uev) require_positive(c.w_g0_over_ek0, "geometry.W_g0_over_Ek0");
    if (c.w_g0_uev) require_positive(*c.w_g0_uev, "geometry.W_g0_ueV");
    if (c.n_zones < 0) throw config_error("key 'geometry.n_zones' must be >= 0");
    if (c.nx < 16 || c.ny < 16) throw config_error("grid must be at least 16x16");
    require_positive(c.dx, "grid.dx_scaled");
    require_positive(c.beta_nm, "grid.beta_nm");
    require_positive(c.sigma_x_nm, "packet.sigma_x_nm");
    require_positive(c.sigma_y_nm, "packet.sigma_y_nm");
    require_positive(c.dt, "solver.dT");
    if (c.t_max < 0.0) throw config_error("key 'solver.T_max' must be >= 0");
    if (c.tc_measure_t < 0.0) throw config_error("key 'solver.Tc_measure_T' must be >= 0");
    if (c.absorber_cells < 0) throw config_error("key 'solver.absorber_cells' must be >= 0");
    if (!(c.sor_omega > 1.0 && c.sor_omega < 2.0)) {
        throw config_error("key 'solver.sor_omega' must lie in (1, 2)");
    }
    require_positive(c.sor_tol, "solver.sor_tol");
    if (c.sor_max_iter < 1) throw config_error("key 'solver.sor_max_iter' must be >= 1");
    if (c.sample_stride < 1) throw config_error("key 'solver.sample_stride' must be >= 1");

    if (c.bias.variant == BiasVariant::Unbiased && c.bias.v1 != 0.0) {
        c.warnings.push_back("bias.V1 is ignored with scheme = unbiased");
    }
    if (c.bias.v1 < 0.0) throw config_error("key 'bias.V1' must be >= 0");
    switch (c.bias.variant) {
        case BiasVariant::Uniform:
        case BiasVariant::Sinusoidal:
            if (c.bias.v1 > 30.0) {
                c.warnings.push_back("bias.V1 above the studied 0-30 V range");
            }
            break;
        case BiasVariant::SqrtN:
            if (c.bias.v1 > 5.0) {
                c.warnings.push_back("bias.V1 above the studied 0-5 V range");
            }
            break;
        default: break;
    }
    if (c.bias.variant == BiasVariant::Sinusoidal &&
        (c.bias.k_e < 0.01 || c.bias.k_e > 0.4) && c.bias.k_e != 0.0) {
        c.warnings.push_back("bias.k_E outside the studied 0.01-0.4 range");
    }

    if (c.sweep) {
        const SweepSpec& s = *c.sweep;
        if (s.parameter != "V1" && s.parameter != "k_E" && s.parameter != "T_a") {
            throw config_error("key 'sweep.parameter' must be V1, k_E or T_a");
        }
        if (s.values.empty()) throw config_error("key 'sweep.values' must be non-empty");
        check_strictly_increasing(s.values, "sweep.values");
        if (!s.k_e_values.empty()) {
            if (s.parameter != "V1" || c.bias.variant != BiasVariant::Sinusoidal) {
                throw config_error(
                    "key 'sweep.k_E_values' requires parameter = V1 and a sinusoidal scheme");
            }
            check_strictly_increasing(s.k_e_values, "sweep.k_E_values");
        }
        if ((s.parameter == "V1" || s.parameter == "k_E") &&
            c.bias.variant == BiasVariant::Unbiased) {
            throw config_error("bias sweeps require a non-unbiased bias.scheme");
        }
        if (s.parameter == "T_a") {
            for (double t : s.values) {
                if (!(t > 0.0)) throw config_error("sweep.values: temperatures must be positive");
            }
        }
    }
}

std::string render_config(const RunConfig& c) {
    std::ostringstream o;
    o.precision(17);
    o << "[physical]\n";
    if (c.v_mps) o << "v_mps = " << *c.v_mps << "\n";
    if (c.temp_k) o << "T_a_K = " << *c.temp_k << "\n";
    o << "C3_Jm3 = " << c.c3_jm3 << "\n";
    o << "l_nm = " << c.l_nm << "\n";
    o << "Lambda_nm = " << c.lambda_cut_nm << "\n";
    o << "alpha_volume_a0_cubed = " << c.alpha_volume_a0 << "\n";
    o << "casimir = " << (c.casimir_enabled ? "true" : "false") << "\n";
    o << "image_dipole_term = " << (c.image_dipole_term ? "true" : "false") << "\n";
    o << "surface_distance = \"" << c.surface_distance << "\"\n";
    o << "[geometry]\n";
    o << "r1_nm = " << c.r1_nm << "\n";
    o << "d_nm = " << c.d_nm << "\n";
    if (c.w_g0_uev) o << "W_g0_ueV = " << *c.w_g0_uev << "\n";
    else o << "W_g0_over_Ek0 = " << c.w_g0_over_ek0 << "\n";
    o << "n_zones = " << c.n_zones << "\n";
    o << "x_front_scaled = " << c.x_front << "\n";
    o << "[grid]\n";
    o << "nx = " << c.nx << "\nny = " << c.ny << "\n";
    o << "dx_scaled = " << c.dx << "\n";
    o << "beta_nm = " << c.beta_nm << "\n";
    o << "[packet]\n";
    o << "sigma_x_nm = " << c.sigma_x_nm << "\nsigma_y_nm = " << c.sigma_y_nm << "\n";
    if (c.x0) o << "x0_scaled = " << *c.x0 << "\n";
    o << "y0_scaled = " << c.y0 << "\n";
    o << "clip_tol = " << c.packet_clip_tol << "\n";
    o << "[bias]\n";
    const char* scheme = "unbiased";
    switch (c.bias.variant) {
        case BiasVariant::Uniform: scheme = "uniform"; break;
        case BiasVariant::SqrtN: scheme = "sqrt_n"; break;
        case BiasVariant::Sinusoidal: scheme = "sinusoidal"; break;
        default: break;
    }
    o << "scheme = \"" << scheme << "\"\n";
    o << "V1 = " << c.bias.v1 << "\nk_E = " << c.bias.k_e << "\n";
    o << "[solver]\n";
    o << "dT = " << c.dt << "\nT_max = " << c.t_max << "\n";
    if (c.tc_measure_t > 0.0) o << "Tc_measure_T = " << c.tc_measure_t << "\n";
    o << "absorber_cells = " << c.absorber_cells << "\n";
    o << "absorber_profile = \""
      << (c.absorber_profile == AbsorberProfile::CosineSquared ? "cos2" : "exp") << "\"\n";
    o << "absorber_strength = " << c.absorber_strength << "\n";
    o << "sor_omega = " << c.sor_omega << "\nsor_tol = " << c.sor_tol << "\n";
    o << "sor_max_iter = " << c.sor_max_iter << "\n";
    o << "sample_stride = " << c.sample_stride << "\n";
    if (c.sweep) {
        o << "[sweep]\n";
        o << "parameter = \"" << c.sweep->parameter << "\"\n";
        o << "values = [";
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
            o << (i ? ", " : "") << c.sweep->values[i];
        }
        o << "]\n";
        if (!c.sweep->k_e_values.empty()) {
            o << "k_E_values = [";
            for (std::size_t i = 0; i < c.sweep->k_e_values.size(); ++i) {
                o << (i ? ", " : "") << c.sweep->k_e_values[i];
            }
            o << "]\n";
        }
    }
    return o.str();
}

std::vector<std::string> preset_names() {
    return {"benchmark-thin", "baseline-50nm", "uniform-sweep",
            "sqrtn-sweep",    "sin-grid",      "temperature-sweep"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;  // Table-I defaults; the unbiased 50 nm baseline
    if (name == "baseline-50nm") {
        // as-is
    } else if (name == "benchmark-thin") {
        c.d_nm = 10.0;
        c.casimir_enabled = false;
        c.bias.variant = BiasVariant::Unbiased;
    } else if (name == "uniform-sweep") {
        c.bias.variant = BiasVariant::Uniform;
        c.sweep = SweepSpec{"V1", {0.0, 10.0, 20.0, 30.0}, {}};
    } else if (name == "sqrtn-sweep") {
        c.bias.variant = BiasVariant::SqrtN;
        c.sweep = SweepSpec{"V1", {0.0, 2.5, 3.5, 4.5, 5.0}, {}};
    } else if (name == "sin-grid") {
        c.bias.variant = BiasVariant::Sinusoidal;
        c.sweep = SweepSpec{"V1", {5.0, 10.0, 30.0}, {0.1, 0.2, 0.3}};
    } else if (name == "temperature-sweep") {
        c.v_mps.reset();
        c.temp_k = 6.42e-4;
        c.x0 = -80.25;  // fixed launch point: -f_cal/2 of the baseline geometry
        c.dt = 0.1;
        c.sweep = SweepSpec{"T_a", {1e-5, 1e-4, 6.42e-4, 1e-2}, {}};
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
    validate_config(c);
    return c;
}

}  // namespace mwfzp
