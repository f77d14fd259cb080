#pragma once
#include <cstdint>
#include <string>

#include "cwsim/gas.hpp"
#include "cwsim/ns_solver.hpp"
#include "cwsim/perturbation.hpp"

namespace cwsim {

// Flat key-value configuration with sections [gas], [ends], [grid], [time],
// [perturbation], [mode]. Unknown sections or keys are errors.
struct ExperimentConfig {
    GasModel gas;
    double theta_minus = 1.0;
    double delta_signed = 0.1;  // theta_plus = theta_minus + delta_signed
    double p_common = 1.0;
    double u_minus = 0.0;

    double L = -1.0;  // < 0 means auto from the truncation rule
    int n_nodes = 8192;

    double t_end = 2000.0;
    double cfl = 0.4;
    double rho_output = 1.1;
    double theta_scheme = 0.5;

    BumpShape shape = BumpShape::Bump;
    double eps = 0.01;          // scalar amplitude, direction resolved per mode
    bool explicit_amplitudes = false;
    double eps_v = 0.0, eps_u = 0.0, eps_theta = 0.0;
    double width = 4.0;
    double center = 0.0;
    bool center_auto = false;

    PerturbationMode mode = PerturbationMode::NonzeroMass;
    double alpha = -1.0;  // < 0 means fitted c2/4
    std::uint64_t seed = 1;

    int profile_nodes = 8193;
    double profile_cutoff = 12.0;

    std::string out_dir = "out";
    std::string restart_path;  // set by the CLI only; resume from a checkpoint

    EndStates end_states() const;
    double theta_plus() const { return theta_minus + delta_signed; }
    // truncation rule: L >= lambda3 (1+t_end) + 20 sqrt(1+t_end)
    double min_half_width() const;
    double resolved_half_width() const;

    // Throws ConfigError on invalid combinations (zero-mass with a plain bump,
    // domain shorter than the truncation rule, non-positive sizes).
    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace cwsim
