// Command-line front end: phase-diagram scans, entropy sweeps, SAS-vs-exact
// comparison, simplex sampling and the invariant check suite.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lcav/scan.hpp"

namespace fs = std::filesystem;
using namespace lcav;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset_name = "fig2";
    std::string configuration = "Lambda";
    int na = 2;
    std::string grid_a = "0:3:0.05";
    std::string grid_b = "0:3:0.05";
    std::string method = "sas";
    std::string sector = "auto";
    double dx = 1e-3;
    double tol = 1e-8;
    std::string out_dir = ".";
    bool svg = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration file");
    cmd->add_option("--preset", o.preset_name, "frequency preset (fig2, text-s2)")
        ->check(CLI::IsMember({"fig2", "text-s2"}));
    cmd->add_option("--configuration", o.configuration,
                    "atomic configuration (Xi, Lambda, V)");
    cmd->add_option("--na", o.na, "number of atoms");
    cmd->add_option("--grid-a", o.grid_a, "first coupling axis lo:hi:step");
    cmd->add_option("--grid-b", o.grid_b, "second coupling axis lo:hi:step");
    cmd->add_option("--method", o.method, "exact, sas or meanfield");
    cmd->add_option("--sector", o.sector, "parity sector: ee, eo, oe, oo or auto");
    cmd->add_option("--dx", o.dx, "susceptibility displacement");
    cmd->add_option("--tol", o.tol, "cutoff convergence tolerance");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--svg", o.svg, "emit SVG figures");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

std::pair<ScanGrid, ScanConfig> build_config(const CommonOpts& o, const std::string& stem) {
    ScanGrid grid;
    ScanConfig cfg;
    cfg.base = preset(o.preset_name);
    cfg.base.config = config_from_name(o.configuration);
    grid.na = o.na;
    grid.axis_a = axis_from_string(o.grid_a);
    grid.axis_b = axis_from_string(o.grid_b);
    grid.method = method_from_name(o.method);
    grid.sector = sector_policy_from_name(o.sector);
    cfg.dx = o.dx;
    cfg.tol = o.tol;
    cfg.out_dir = o.out_dir;
    cfg.svg = o.svg;
    cfg.threads = o.threads;
    cfg.stem = stem;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::runtime_error("cannot read " + o.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        apply_json_config(ss.str(), grid, cfg);
    }
    return {grid, cfg};
}

int run_meanfield(const CommonOpts& o) {
    auto [grid, cfg] = build_config(o, "meanfield");
    grid.method = Method::MeanField;
    fs::create_directories(cfg.out_dir);

    // region map
    {
        ScanConfig c2 = cfg;
        c2.stem = "regions";
        ScanGrid g2 = grid;
        run_scan(g2, c2);
    }
    // separatrix curves
    std::ofstream f(fs::path(cfg.out_dir) / "separatrix.csv", std::ios::binary);
    f << "boundary," << coupling_label_a(cfg.base.config) << ","
      << coupling_label_b(cfg.base.config) << "\n";
    for (Boundary b : boundaries(cfg.base.config)) {
        for (const auto& [xa, xb] : separatrix(cfg.base, b, 512, grid.axis_a.hi)) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g", boundary_name(b).c_str(),
                          xa, xb);
            f << buf << "\n";
        }
    }
    const auto tp = triple_point(cfg.base);
    std::cout << "triple point: (" << tp[0] << ", " << tp[1] << ")\n";
    std::cout << "wrote regions.csv and separatrix.csv under " << cfg.out_dir << "\n";
    return 0;
}

int run_scan_cmd(const CommonOpts& o) {
    auto [grid, cfg] = build_config(o, "scan");
    const auto recs = run_scan(grid, cfg);
    int failed = 0;
    for (const auto& r : recs)
        if (!r.error.empty()) ++failed;
    std::cout << "scan: " << recs.size() << " points, " << failed
              << " failed; outputs under " << cfg.out_dir << "\n";
    return failed == 0 ? 0 : 1;
}

int run_entropy_sweep(const CommonOpts& o, std::vector<double> lines) {
    auto [grid, cfg] = build_config(o, "entropy_sweep");
    if (lines.empty()) lines = {0.1, 1.0, 1.5, 2.5, 3.5};
    std::set<Method> methods = {grid.method};
    sweep_entropy(lines, grid.axis_b, grid.na, methods, cfg, grid.sector);
    std::cout << "wrote entropy_sweep.csv under " << cfg.out_dir << "\n";
    return 0;
}

int run_compare(const CommonOpts& o) {
    auto [grid, cfg] = build_config(o, "compare");
    const auto recs = compare_sas_exact(grid, cfg);
    int failed = 0;
    for (const auto& r : recs)
        if (!r.error.empty()) ++failed;
    std::cout << "compare: " << recs.size() << " points, " << failed
              << " failed; outputs under " << cfg.out_dir << "\n";
    return failed == 0 ? 0 : 1;
}

int run_simplex(const CommonOpts& o, const std::vector<std::string>& method_names) {
    auto [grid, cfg] = build_config(o, "simplex");
    std::set<Method> methods;
    if (method_names.empty()) methods = {Method::Exact, Method::Sas};
    for (const auto& m : method_names) methods.insert(method_from_name(m));
    const auto summary = sample_simplex(grid, methods, cfg);
    for (const auto& [m, count] : summary.disk_counts)
        std::cout << method_name(m) << ": " << count
                  << " points with S_L >= 1/2 (inscribed disk)\n";
    std::cout << "wrote simplex.csv under " << cfg.out_dir << "\n";
    return 0;
}

bool check_line(const std::string& name, bool ok, std::string detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    return ok;
}

// Fast invariant suite: algebra, separatrix closed forms, fidelity axioms,
// simplex geometry, solver cross-checks.
int run_check(const CommonOpts& o) {
    bool all = true;
    char detail[160];

    {
        double worst = 0.0;
        for (int na : {1, 2, 3, 4}) {
            const HilbertSpace s(na, {0, 0});
            const auto [r1, r2] = casimir_check(s);
            worst = std::max({worst, r1, r2});
            const auto& basis = s.atom_basis();
            for (int l = 1; l <= 3; ++l)
                for (int m = 1; m <= 3; ++m)
                    for (int k = 1; k <= 3; ++k)
                        for (int j = 1; j <= 3; ++j) {
                            Eigen::MatrixXd lhs =
                                atomic_generator(basis, l, m) * atomic_generator(basis, k, j) -
                                atomic_generator(basis, k, j) * atomic_generator(basis, l, m);
                            if (m == k) lhs -= atomic_generator(basis, l, j);
                            if (j == l) lhs += atomic_generator(basis, k, m);
                            worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
                        }
        }
        std::snprintf(detail, sizeof(detail), "max residual %.2e", worst);
        all &= check_line("u(3) commutators and Casimir eigenvalues", worst < 1e-12, detail);
    }

    {
        double worst = 0.0;
        for (Config c : {Config::Xi, Config::Lambda, Config::V}) {
            ModelParams p = preset(o.preset_name);
            p.config = c;
            for (Boundary b : boundaries(c))
                for (const auto& [xa, xb] : separatrix(p, b, 100, 4.0))
                    worst = std::max(worst,
                                     boundary_energy_residual(with_couplings(p, {xa, xb}), b));
        }
        std::snprintf(detail, sizeof(detail), "max |dE| %.2e", worst);
        all &= check_line("separatrix energy equalities", worst < 1e-8, detail);
    }

    {
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> gauss;
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int d = trial % 2 ? 3 : 6;
            const auto random_dm = [&]() {
                Eigen::MatrixXcd g(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) g(i, j) = {gauss(rng), gauss(rng)};
                Eigen::MatrixXcd m = g * g.adjoint();
                return DensityMatrix(Eigen::MatrixXcd(m / m.trace().real()));
            };
            const DensityMatrix a = random_dm(), b = random_dm();
            const double f = fidelity(a, b);
            worst = std::max(worst, std::abs(f - fidelity(b, a)));
            worst = std::max(worst, std::max(0.0, f - 1.0));
            worst = std::max(worst, std::max(0.0, -f));
            worst = std::max(worst, std::abs(fidelity(a, a) - 1.0));
        }
        std::snprintf(detail, sizeof(detail), "worst deviation %.2e", worst);
        all &= check_line("fidelity axioms on random density matrices", worst < 1e-9, detail);
    }

    {
        double worst = 0.0;
        const double s = std::sqrt(1.0 / 6.0);
        for (int k = 0; k < 64; ++k) {
            // circle of radius sqrt(1/6) about the centroid inside sum P = 1
            const double th = 6.283185307179586 * k / 64.0;
            const double p1 = 1.0 / 3.0 + s * (std::cos(th) / std::sqrt(2.0) + std::sin(th) / std::sqrt(6.0));
            const double p2 = 1.0 / 3.0 + s * (-std::cos(th) / std::sqrt(2.0) + std::sin(th) / std::sqrt(6.0));
            const double p3 = 1.0 - p1 - p2;
            worst = std::max(worst, std::abs(linear_entropy(OccupationProbabilities{p1, p2, p3}) - 0.5));
        }
        std::snprintf(detail, sizeof(detail), "max |S_L - 1/2| %.2e", worst);
        all &= check_line("inscribed-circle linear entropy", worst < 1e-10, detail);
    }

    {
        ModelParams p = preset(o.preset_name);
        p.na = 2;
        p = with_couplings(p, {1.2, 0.4});
        const HilbertSpace space(2, {10, 10});
        GroundOptions dense_opt;
        dense_opt.force_dense = true;
        GroundOptions iter_opt;
        iter_opt.force_iterative = true;
        const double ed = ground_state(space, p, {}, dense_opt).energy;
        const double ei = ground_state(space, p, {}, iter_opt).energy;
        std::snprintf(detail, sizeof(detail), "|dense - iterative| = %.2e", std::abs(ed - ei));
        all &= check_line("dense vs iterative ground energy", std::abs(ed - ei) < 1e-10, detail);
    }

    std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-level atoms in a two-mode cavity: phase diagram toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::vector<double> sweep_lines;
    std::vector<std::string> simplex_methods;

    auto* mf = app.add_subcommand("meanfield", "region map and separatrix curves");
    add_common(mf, o);
    auto* sc = app.add_subcommand("scan", "fidelity-susceptibility grid scan");
    add_common(sc, o);
    auto* es = app.add_subcommand("entropy-sweep", "entropy along the second axis");
    add_common(es, o);
    es->add_option("--lines", sweep_lines, "first-axis values of the sweep lines");
    auto* cp = app.add_subcommand("compare", "fidelity between SAS and exact states");
    add_common(cp, o);
    auto* sx = app.add_subcommand("simplex", "occupation simplex sampling");
    add_common(sx, o);
    sx->add_option("--methods", simplex_methods, "methods to sample (default exact sas)");
    auto* ck = app.add_subcommand("check", "run the invariant suite");
    add_common(ck, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mf->parsed()) return run_meanfield(o);
        if (sc->parsed()) return run_scan_cmd(o);
        if (es->parsed()) return run_entropy_sweep(o, sweep_lines);
        if (cp->parsed()) return run_compare(o);
        if (sx->parsed()) return run_simplex(o, simplex_methods);
        if (ck->parsed()) return run_check(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
