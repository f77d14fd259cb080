#include "cwsim/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cwsim/diffusion_wave.hpp"
#include "cwsim/errors.hpp"

namespace cwsim {

EndStates ExperimentConfig::end_states() const {
    return make_end_states(gas, theta_minus, theta_plus(), p_common, u_minus);
}

double ExperimentConfig::min_half_width() const {
    const EndStates ends = end_states();
    const double l3 = lambda3_plus(ends, gas);
    return l3 * (1.0 + t_end) + 20.0 * std::sqrt(1.0 + t_end);
}

double ExperimentConfig::resolved_half_width() const {
    return (L > 0.0) ? L : std::ceil(min_half_width());
}

void ExperimentConfig::validate() const {
    gas.validate();
    if (!(theta_minus > 0.0) || !(theta_plus() > 0.0))
        throw ConfigError("config: temperatures must be positive");
    if (!(p_common > 0.0)) throw ConfigError("config: p_plus must be positive");
    if (n_nodes < 16) throw ConfigError("config: grid n must be at least 16");
    if (!(t_end >= 0.0)) throw ConfigError("config: t_end must be nonnegative");
    if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("config: cfl must lie in (0, 1]");
    if (!(rho_output > 1.0)) throw ConfigError("config: output ratio rho must exceed 1");
    if (theta_scheme < 0.5 || theta_scheme > 1.0)
        throw ConfigError("config: theta_scheme must lie in [1/2, 1]");
    if (!(width > 0.0)) throw ConfigError("config: perturbation width must be positive");
    if (mode == PerturbationMode::ZeroMass && shape != BumpShape::BumpDerivative)
        throw ConfigError("config: zero-mass mode requires the bump-derivative shape");
    if (L > 0.0 && L < min_half_width()) {
        std::ostringstream os;
        os << "config: half-width L = " << L << " violates the truncation rule (need >= "
           << min_half_width() << ")";
        throw ConfigError(os.str());
    }
    if (profile_cutoff < 8.0) throw ConfigError("config: profile cutoff must be at least 8");
}

namespace {

double to_number(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    bool saw_eps_channel = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "gas" && section != "ends" && section != "grid" &&
                section != "time" && section != "perturbation" && section != "mode")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "gas.R") cfg.gas.R = to_number(qual, value);
        else if (qual == "gas.gamma") cfg.gas.gamma = to_number(qual, value);
        else if (qual == "gas.mu") cfg.gas.mu = to_number(qual, value);
        else if (qual == "gas.kappa") cfg.gas.kappa = to_number(qual, value);
        else if (qual == "gas.A") cfg.gas.A_const = to_number(qual, value);
        else if (qual == "ends.theta_minus") cfg.theta_minus = to_number(qual, value);
        else if (qual == "ends.delta") cfg.delta_signed = to_number(qual, value);
        else if (qual == "ends.p_plus") cfg.p_common = to_number(qual, value);
        else if (qual == "ends.u_minus") cfg.u_minus = to_number(qual, value);
        else if (qual == "grid.L") cfg.L = (value == "auto") ? -1.0 : to_number(qual, value);
        else if (qual == "grid.n") cfg.n_nodes = static_cast<int>(to_number(qual, value));
        else if (qual == "time.t_end") cfg.t_end = to_number(qual, value);
        else if (qual == "time.cfl") cfg.cfl = to_number(qual, value);
        else if (qual == "time.rho") cfg.rho_output = to_number(qual, value);
        else if (qual == "time.theta_scheme") cfg.theta_scheme = to_number(qual, value);
        else if (qual == "perturbation.shape") {
            if (value == "bump") cfg.shape = BumpShape::Bump;
            else if (value == "bump-derivative") cfg.shape = BumpShape::BumpDerivative;
            else throw ConfigError("config: unknown perturbation shape '" + value + "'");
        } else if (qual == "perturbation.eps") cfg.eps = to_number(qual, value);
        else if (qual == "perturbation.eps_v") { cfg.eps_v = to_number(qual, value); saw_eps_channel = true; }
        else if (qual == "perturbation.eps_u") { cfg.eps_u = to_number(qual, value); saw_eps_channel = true; }
        else if (qual == "perturbation.eps_theta") { cfg.eps_theta = to_number(qual, value); saw_eps_channel = true; }
        else if (qual == "perturbation.width") cfg.width = to_number(qual, value);
        else if (qual == "perturbation.center") {
            if (value == "auto") cfg.center_auto = true;
            else cfg.center = to_number(qual, value);
        } else if (qual == "mode.mode") {
            if (value == "zero") cfg.mode = PerturbationMode::ZeroMass;
            else if (value == "nonzero") cfg.mode = PerturbationMode::NonzeroMass;
            else throw ConfigError("config: unknown mode '" + value + "'");
        } else if (qual == "mode.alpha") {
            cfg.alpha = (value == "auto") ? -1.0 : to_number(qual, value);
        } else if (qual == "mode.seed") {
            cfg.seed = static_cast<std::uint64_t>(to_number(qual, value));
        } else {
            throw ConfigError("config: unknown key '" + qual + "'");
        }
    }
    cfg.explicit_amplitudes = saw_eps_channel;
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace cwsim
