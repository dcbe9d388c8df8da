#include "rbcom/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rbcom {

const ValidatedConfig& ValidationResult::config() const {
    if (!ok() || !validated)
        throw std::logic_error("config() on an invalid ValidationResult");
    return *validated;
}

namespace {

void require(std::vector<Violation>& out, bool ok_, const std::string& field,
             const std::string& constraint) {
    if (!ok_) out.push_back({field, constraint});
}

} // namespace

ValidationResult validate(const SystemConfig& cfg) {
    std::vector<Violation> v;
    const auto& ct = cfg.constants;
    const auto& me = cfg.medium;
    const auto& ca = cfg.cavity;
    const auto& mo = cfg.modulation;
    const auto& de = cfg.detector;
    const auto& pu = cfg.pump;

    require(v, ct.planck_h > 0 && ct.electron_charge_q > 0 && ct.boltzmann_K > 0 &&
                   ct.free_space_impedance_Z0 > 0 && ct.light_speed_v > 0,
            "constants", "all physical constants > 0");

    require(v, me.sigma > 0, "sigma", "sigma > 0");
    require(v, me.tau_f > 0, "tau_f", "tau_f > 0");
    require(v, me.eta_pump > 0 && me.eta_pump <= 1, "eta_pump", "0 < eta_pump <= 1");
    require(v, me.cross_section_Ab > 0, "cross_section_Ab", "cross_section_Ab > 0");
    require(v, me.length_l > 0, "length_l", "length_l > 0");
    require(v, me.f_carrier > 0, "f_carrier", "f_carrier > 0");
    require(v, me.f_pump > 0, "f_pump", "f_pump > 0");
    require(v, me.f_pump > me.f_carrier, "f_pump", "f_pump > f_carrier");
    require(v, me.alpha0 >= 0, "alpha0", "alpha0 >= 0");

    require(v, ca.r1 > 0 && ca.r1 <= 1, "r1", "0 < r1 <= 1");
    require(v, ca.r2 > 0 && ca.r2 <= 1, "r2", "0 < r2 <= 1");
    require(v, ca.r_s >= 0 && ca.r_s < 1, "r_s", "0 <= r_s < 1");
    require(v, ca.eta_diff > 0 && ca.eta_diff <= 1, "eta_diff", "0 < eta_diff <= 1");
    require(v, ca.alpha_air >= 0, "alpha_air", "alpha_air >= 0");
    require(v, ca.distance_d > 0, "distance_d", "distance_d > 0");
    require(v, ca.tau_p >= 0, "tau_p", "tau_p >= 0");
    require(v, ca.tau_a >= 0, "tau_a", "tau_a >= 0");

    require(v, mo.depth_m >= 0, "depth_m", "depth_m >= 0");
    require(v, mo.bias_p > mo.depth_m, "bias_p", "bias_p > depth_m");
    require(v, mo.bias_p + mo.depth_m <= 1, "bias_p", "bias_p + depth_m <= 1");
    require(v, mo.bandwidth_Bx > 0, "bandwidth_Bx", "bandwidth_Bx > 0");
    require(v, mo.f_offset > 3 * mo.bandwidth_Bx, "f_offset",
            "f_offset > 3*bandwidth_Bx");
    require(v, mo.obpf_bandwidth_Bf > 0 &&
                   mo.obpf_bandwidth_Bf < 2 * mo.f_offset - 2 * mo.bandwidth_Bx,
            "obpf_bandwidth_Bf", "0 < obpf_bandwidth_Bf < 2*f_offset - 2*bandwidth_Bx");
    require(v, mo.mean_sq_x >= 0 && mo.mean_sq_x <= 1, "mean_sq_x",
            "0 <= mean_sq_x <= 1");

    require(v, de.responsivity_rho > 0, "responsivity_rho", "responsivity_rho > 0");
    require(v, de.detect_efficiency > 0 && de.detect_efficiency <= 1,
            "detect_efficiency", "0 < detect_efficiency <= 1");
    require(v, de.load_R_L > 0, "load_R_L", "load_R_L > 0");
    require(v, de.temperature_T > 0, "temperature_T", "temperature_T > 0");
    require(v, de.background_current_Ibk > 0, "background_current_Ibk",
            "background_current_Ibk > 0");
    require(v, de.pd_area > 0, "pd_area", "pd_area > 0");
    // all beam energy is assumed focused onto the detector; the focused spot
    // cannot exceed the detector itself
    require(v, de.pd_area >= me.cross_section_Ab, "pd_area",
            "pd_area >= cross_section_Ab");

    require(v, pu.power_Pin >= 0, "power_Pin", "power_Pin >= 0");

    ValidationResult res;
    res.violations = std::move(v);
    if (res.violations.empty()) res.validated = ValidatedConfig(cfg);
    return res;
}

// ---------------------------------------------------------------------------
// config file format: '#' comments, [section] headers, key = value lines.

namespace {

using Setter = std::function<void(SystemConfig&, double)>;
using Getter = std::function<double(const SystemConfig&)>;

struct Field {
    Setter set;
    Getter get;
};

// Section/key registry; iteration order is the canonical serialization order.
const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Field>>>>&
registry() {
    static const auto* r = [] {
        auto* m = new std::vector<
            std::pair<std::string, std::vector<std::pair<std::string, Field>>>>;
#define RB_FIELD(sec, member)                                          \
    {                                                                  \
        #member, Field {                                               \
            [](SystemConfig& c, double x) { c.sec.member = x; },       \
                [](const SystemConfig& c) { return c.sec.member; }     \
        }                                                              \
    }
        m->push_back({"constants",
                      {RB_FIELD(constants, planck_h),
                       RB_FIELD(constants, electron_charge_q),
                       RB_FIELD(constants, boltzmann_K),
                       RB_FIELD(constants, free_space_impedance_Z0),
                       RB_FIELD(constants, light_speed_v)}});
        m->push_back({"medium",
                      {RB_FIELD(medium, sigma), RB_FIELD(medium, tau_f),
                       RB_FIELD(medium, eta_pump), RB_FIELD(medium, cross_section_Ab),
                       RB_FIELD(medium, length_l), RB_FIELD(medium, f_carrier),
                       RB_FIELD(medium, f_pump), RB_FIELD(medium, alpha0)}});
        m->push_back({"cavity",
                      {RB_FIELD(cavity, r1), RB_FIELD(cavity, r2),
                       RB_FIELD(cavity, r_s), RB_FIELD(cavity, eta_diff),
                       RB_FIELD(cavity, alpha_air), RB_FIELD(cavity, distance_d),
                       RB_FIELD(cavity, tau_p), RB_FIELD(cavity, tau_a)}});
        m->push_back({"modulation",
                      {RB_FIELD(modulation, depth_m), RB_FIELD(modulation, bias_p),
                       RB_FIELD(modulation, f_offset),
                       RB_FIELD(modulation, bandwidth_Bx),
                       RB_FIELD(modulation, obpf_bandwidth_Bf),
                       RB_FIELD(modulation, mean_sq_x)}});
        m->push_back({"detector",
                      {RB_FIELD(detector, responsivity_rho),
                       RB_FIELD(detector, detect_efficiency),
                       RB_FIELD(detector, load_R_L),
                       RB_FIELD(detector, temperature_T),
                       RB_FIELD(detector, background_current_Ibk),
                       RB_FIELD(detector, pd_area)}});
        m->push_back({"pump", {RB_FIELD(pump, power_Pin)}});
#undef RB_FIELD
        return m;
    }();
    return *r;
}

const Field* find_field(const std::string& section, const std::string& key) {
    for (const auto& [sec, fields] : registry()) {
        if (sec != section) continue;
        for (const auto& [k, f] : fields)
            if (k == key) return &f;
        return nullptr;
    }
    return nullptr;
}

bool known_section(const std::string& section) {
    for (const auto& [sec, _] : registry())
        if (sec == section) return true;
    return false;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

} // namespace

SystemConfig parse_config(const std::string& text, const std::string& origin) {
    SystemConfig cfg = SystemConfig::baseline();
    std::map<std::string, bool> seen; // "section.key" -> explicitly set
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section))
                fail(origin, lineno, "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty()) fail(origin, lineno, "key before any [section]");
        const Field* f = find_field(section, key);
        if (!f) fail(origin, lineno, "unknown key '" + key + "' in [" + section + "]");
        if (seen.count(section + "." + key))
            fail(origin, lineno, "duplicate key '" + key + "' in [" + section + "]");
        char* end = nullptr;
        double x = std::strtod(val.c_str(), &end);
        if (val.empty() || end != val.c_str() + val.size())
            fail(origin, lineno, "malformed number '" + val + "' for key '" + key + "'");
        if (section == "constants") {
            // self-describing but frozen: a restated constant must match CODATA
            double ref = f->get(cfg);
            if (std::abs(x - ref) > 1e-12 * std::abs(ref))
                fail(origin, lineno,
                     "constant '" + key + "' is fixed at its CODATA value");
        }
        f->set(cfg, x);
        seen[section + "." + key] = true;
    }
    // derived defaults for anything not pinned explicitly
    if (!seen.count("cavity.tau_p"))
        cfg.cavity.tau_p = cfg.cavity.distance_d / cfg.constants.light_speed_v;
    if (!seen.count("cavity.tau_a"))
        cfg.cavity.tau_a = 0.1 / cfg.constants.light_speed_v;
    if (!seen.count("modulation.bias_p"))
        cfg.modulation.bias_p = 1.0 - cfg.modulation.depth_m;
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string serialize_config(const SystemConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [sec, fields] : registry()) {
        os << "[" << sec << "]\n";
        for (const auto& [key, f] : fields)
            os << key << " = " << f.get(cfg) << "\n";
        os << "\n";
    }
    return os.str();
}

void save_config(const SystemConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config: " + path);
    out << serialize_config(cfg);
}

} // namespace rbcom
