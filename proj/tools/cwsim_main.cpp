// Command-line front end: profile solves, the algebraic identity suite, full
// simulation runs, decay-rate refits and post-run audits.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cwsim/decay_fit.hpp"
#include "cwsim/errors.hpp"
#include "cwsim/experiment.hpp"
#include "cwsim/heat_kernel.hpp"

namespace fs = std::filesystem;
using namespace cwsim;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    std::string mode;
    double t_end = -1.0;
    double delta = std::nan("");
    double eps = std::nan("");
    int grid_n = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "configuration file");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--mode", f.mode, "perturbation mode: zero | nonzero")
        ->check(CLI::IsMember({"zero", "nonzero"}));
    cmd->add_option("--t-end", f.t_end, "final time");
    cmd->add_option("--delta", f.delta, "contact wave strength theta_plus - theta_minus");
    cmd->add_option("--eps", f.eps, "perturbation amplitude");
    cmd->add_option("--grid-n", f.grid_n, "number of grid nodes");
    cmd->add_option("--seed", f.seed, "seed for perturbation placement sweeps")
        ->each([&](const std::string&) { f.seed_set = true; });
}

ExperimentConfig make_config(const CommonFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = load_config_file(f.config_path);
    if (!f.mode.empty()) {
        cfg.mode = (f.mode == "zero") ? PerturbationMode::ZeroMass : PerturbationMode::NonzeroMass;
        if (cfg.mode == PerturbationMode::ZeroMass) cfg.shape = BumpShape::BumpDerivative;
    }
    if (f.t_end >= 0.0) cfg.t_end = f.t_end;
    if (!std::isnan(f.delta)) cfg.delta_signed = f.delta;
    if (!std::isnan(f.eps)) cfg.eps = f.eps;
    if (f.grid_n > 0) cfg.n_nodes = f.grid_n;
    if (f.seed_set) cfg.seed = f.seed;
    cfg.out_dir = f.out_dir;
    return cfg;
}

int cmd_profile(const CommonFlags& f) {
    ExperimentConfig cfg = make_config(f);
    cfg.validate();
    const EndStates ends = cfg.end_states();
    ProfileTable prof = solve_profile(cfg.gas, ends, cfg.profile_cutoff, cfg.profile_nodes);
    const GaussianBoundFit fit = verify_gaussian_bounds(prof);
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / "profile.txt";
    std::ofstream os(path);
    dump_profile_table(prof, os);
    std::printf("profile: %zu nodes, native residual %.3e, oracle residual %.3e\n",
                prof.xi_grid.size(), ode_residual_native(prof), ode_residual_oracle(prof));
    std::printf("envelope fit: c1 = %.6g, c2 = %.6g, pass = %d\n", fit.c1, fit.c2,
                fit.pass ? 1 : 0);
    std::printf("table written to %s\n", path.string().c_str());
    return 0;
}

int cmd_identities() {
    const auto checks = identity_suite();
    bool all = true;
    for (const auto& c : checks) {
        std::printf("[%s] %s: worst %.3e (tol %.1e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.worst, c.tol);
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

int cmd_simulate(const CommonFlags& f, const std::string& restart) {
    ExperimentConfig cfg = make_config(f);
    cfg.restart_path = restart;
    const ExperimentResult res = run_experiment(cfg);
    if (!res.error.empty()) std::fprintf(stderr, "error: %s\n", res.error.c_str());
    for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::printf("%s", res.theorem.summary.c_str());
    std::printf("rows: %zu  exit: %d\n", res.ledger.rows.size(), res.exit_code);
    return res.exit_code;
}

int cmd_fit(const CommonFlags& f, const std::string& ledger_path) {
    const std::string path =
        ledger_path.empty() ? (fs::path(f.out_dir) / "ledger.tsv").string() : ledger_path;
    const EnergyLedger ledger = read_ledger_tsv(path);
    const PerturbationMode mode =
        (ledger.mode_name == "zero") ? PerturbationMode::ZeroMass : PerturbationMode::NonzeroMass;
    const TheoremReport rep = verify_theorem(ledger, mode);
    std::printf("%s", rep.summary.c_str());
    if (rep.inconclusive) {
        std::printf("verdict: inconclusive\n");
        return 0;
    }
    std::printf("verdict: %s\n", rep.pass ? "pass" : "fail");
    return rep.pass ? 0 : 1;
}

struct SnapshotFile {
    double t = 0.0;
    std::vector<double> x, v, u, theta;
};

SnapshotFile read_snapshot(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("audit: cannot open " + path.string());
    SnapshotFile s;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find("t = ");
            if (eq != std::string::npos) s.t = std::stod(line.substr(eq + 4));
            continue;
        }
        std::istringstream ls(line);
        double x, v, u, th;
        if (ls >> x >> v >> u >> th) {
            s.x.push_back(x);
            s.v.push_back(v);
            s.u.push_back(u);
            s.theta.push_back(th);
        }
    }
    return s;
}

int cmd_audit(const CommonFlags& f) {
    ExperimentConfig cfg = make_config(f);
    const fs::path out(f.out_dir);
    int rc = 0;

    // conservation: rebuild states from the stored snapshots
    std::vector<fs::path> snaps;
    if (fs::exists(out / "snapshots"))
        for (const auto& e : fs::directory_iterator(out / "snapshots"))
            if (e.path().filename().string().rfind("snap_", 0) == 0) snaps.push_back(e.path());
    std::sort(snaps.begin(), snaps.end());
    if (snaps.size() >= 2) {
        const SnapshotFile first = read_snapshot(snaps.front());
        const double L = std::fabs(first.x.front());
        // the grid must outlive the states referencing it
        const Grid1D grid = make_grid(L, static_cast<int>(first.x.size()));
        Trajectory traj;
        for (const auto& p : snaps) {
            const SnapshotFile sf = read_snapshot(p);
            SimState st;
            st.t = sf.t;
            st.v = Field(grid);
            st.u = Field(grid);
            st.theta = Field(grid);
            st.v.v = sf.v;
            st.u.v = sf.u;
            st.theta.v = sf.theta;
            traj.snapshots.push_back(std::move(st));
        }
        const ConservationDrift drift = conservation_audit(traj, cfg.gas);
        std::printf("conservation drift (v, u, E): %.3e %.3e %.3e\n", drift.max_rel_drift[0],
                    drift.max_rel_drift[1], drift.max_rel_drift[2]);
        const double worst = std::max({drift.max_rel_drift[0], drift.max_rel_drift[1],
                                       drift.max_rel_drift[2]});
        std::printf("[%s] conservation drift <= 1e-6\n", worst <= 1e-6 ? "PASS" : "FAIL");
        if (worst > 1e-6) rc = 1;

        // heat-kernel identities on this grid
        const double alpha = (cfg.alpha > 0.0) ? cfg.alpha : 0.25;
        const HeatKernelWeights w = heat_weights(alpha, grid, first.t);
        const double g_linf = norms(w.g).linf;
        const double g_err = std::fabs(g_linf - std::sqrt(M_PI / alpha));
        std::printf("[%s] heat kernel |g|_inf identity: err %.3e\n",
                    g_err <= 1e-8 ? "PASS" : "FAIL", g_err);
        if (g_err > 1e-8) rc = 1;
    } else {
        std::printf("audit: no snapshots under %s\n", (out / "snapshots").string().c_str());
    }

    // Poincare / heat-kernel ratios recorded in the ledger
    try {
        const EnergyLedger ledger = read_ledger_tsv((out / "ledger.tsv").string());
        if (!ledger.rows.empty())
            std::printf("ledger rows: %zu, final t = %.6g\n", ledger.rows.size(),
                        ledger.rows.back().t);
    } catch (const std::exception& e) {
        std::printf("audit: %s\n", e.what());
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contact-wave decay simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string restart, ledger_path;

    CLI::App* profile = app.add_subcommand("profile", "solve and dump the self-similar profile");
    add_common(profile, flags);
    CLI::App* identities = app.add_subcommand("identities", "run the algebraic identity suite");
    CLI::App* simulate = app.add_subcommand("simulate", "full experiment pipeline");
    add_common(simulate, flags);
    simulate->add_option("--restart", restart, "resume from a checkpoint file");
    CLI::App* fit = app.add_subcommand("fit", "re-fit an existing ledger");
    add_common(fit, flags);
    fit->add_option("--ledger", ledger_path, "ledger file (default <out>/ledger.tsv)");
    CLI::App* audit = app.add_subcommand("audit", "conservation and heat-kernel audits of a run");
    add_common(audit, flags);

    try {
        app.parse(argc, argv);
        if (profile->parsed()) return cmd_profile(flags);
        if (identities->parsed()) return cmd_identities();
        if (simulate->parsed()) return cmd_simulate(flags, restart);
        if (fit->parsed()) return cmd_fit(flags, ledger_path);
        if (audit->parsed()) return cmd_audit(flags);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const SolverFailure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
