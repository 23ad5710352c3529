#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcav/scan.hpp"

namespace py = pybind11;
using namespace lcav;

namespace {

ModelParams make_params(const std::string& preset_name, const std::string& config,
                        int na, double x_a, double x_b) {
    ModelParams p = preset(preset_name);
    p.config = config_from_name(config);
    p.na = na;
    return with_couplings(p, {x_a, x_b});
}

py::dict solution_dict(const MeanFieldSolution& s) {
    py::dict d;
    d["region"] = region_name(s.region);
    d["energy_per_atom"] = s.energy_per_atom;
    d["r1"] = s.trial.r1;
    d["r2"] = s.trial.r2;
    d["rho2"] = s.trial.rho2;
    d["rho3"] = s.trial.rho3;
    d["gamma1"] = s.trial.gamma1;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-level atoms in a two-mode cavity: mean-field, "
              "symmetry-adapted and exact ground states with "
              "quantum-information diagnostics.";

    m.def("atom_basis", [](int na) {
        py::list out;
        for (const auto& s : enumerate_atom_basis(na))
            out.append(py::make_tuple(s.n1, s.n2, s.n3));
        return out;
    }, py::arg("na"));

    m.def("atom_basis_dim", &atom_basis_dim, py::arg("na"));

    m.def("critical_couplings", [](const std::string& pre, const std::string& config) {
        ModelParams p = preset(pre);
        p.config = config_from_name(config);
        return py::make_tuple(critical_mu_a(p), critical_mu_b(p));
    }, py::arg("preset") = "fig2", py::arg("config") = "Lambda");

    m.def("energy_surface",
          [](const std::string& pre, const std::string& config, double x_a, double x_b,
             double r1, double r2, double rho2, double rho3, double gamma1) {
              const ModelParams p = make_params(pre, config, 2, x_a, x_b);
              TrialConfiguration t;
              t.r1 = r1; t.r2 = r2; t.rho2 = rho2; t.rho3 = rho3; t.gamma1 = gamma1;
              return energy_surface(p, t);
          },
          py::arg("preset"), py::arg("config"), py::arg("x_a"), py::arg("x_b"),
          py::arg("r1"), py::arg("r2"), py::arg("rho2"), py::arg("rho3"),
          py::arg("gamma1") = 1.0);

    m.def("mean_field_ground",
          [](const std::string& pre, const std::string& config, double x_a, double x_b) {
              return solution_dict(ground_solution(make_params(pre, config, 2, x_a, x_b)));
          },
          py::arg("preset"), py::arg("config"), py::arg("x_a"), py::arg("x_b"));

    m.def("critical_points",
          [](const std::string& pre, const std::string& config, double x_a, double x_b) {
              py::list out;
              for (const auto& s : critical_points(make_params(pre, config, 2, x_a, x_b)))
                  out.append(solution_dict(s));
              return out;
          },
          py::arg("preset"), py::arg("config"), py::arg("x_a"), py::arg("x_b"));

    m.def("separatrix",
          [](const std::string& pre, const std::string& config, const std::string& name,
             int samples, double x_max) {
              ModelParams p = preset(pre);
              p.config = config_from_name(config);
              for (Boundary b : boundaries(p.config))
                  if (boundary_name(b) == name) {
                      py::list out;
                      for (const auto& s : separatrix(p, b, samples, x_max))
                          out.append(py::make_tuple(s[0], s[1]));
                      return out;
                  }
              throw std::invalid_argument("unknown boundary " + name);
          },
          py::arg("preset"), py::arg("config"), py::arg("boundary"),
          py::arg("samples") = 128, py::arg("x_max") = 4.0);

    m.def("boundaries", [](const std::string& config) {
        py::list out;
        for (Boundary b : boundaries(config_from_name(config)))
            out.append(boundary_name(b));
        return out;
    }, py::arg("config"));

    m.def("triple_point",
          [](const std::string& pre, const std::string& config) {
              ModelParams p = preset(pre);
              p.config = config_from_name(config);
              const auto tp = triple_point(p);
              return py::make_tuple(tp[0], tp[1]);
          },
          py::arg("preset") = "fig2", py::arg("config") = "Lambda");

    m.def("exact_ground",
          [](const std::string& pre, const std::string& config, int na, double x_a,
             double x_b, double tol) {
              const ModelParams p = make_params(pre, config, na, x_a, x_b);
              const ConvergedGround cg = converge_cutoffs(p, {}, tol);
              const HilbertSpace space(na, cg.solution.cutoffs, p.config);
              const Eigen::MatrixXd rho_m = matter_rdm(space, cg.solution.state);
              const Eigen::Matrix3d e = u3_expectations(rho_m, space.atom_basis());
              const DensityMatrix atom = one_atom_rdm(e.cast<std::complex<double>>(), na);
              const auto occ = occupations(atom);
              py::dict d;
              d["energy_per_atom"] = cg.solution.energy / na;
              d["nmax"] = py::make_tuple(cg.solution.cutoffs.nmax1, cg.solution.cutoffs.nmax2);
              d["matter_rdm"] = rho_m;
              d["occupations"] = py::make_tuple(occ.p1, occ.p2, occ.p3);
              d["sl_matter"] = linear_entropy(DensityMatrix::from_real(rho_m));
              d["sl_atom"] = linear_entropy(atom);
              return d;
          },
          py::arg("preset"), py::arg("config"), py::arg("na"), py::arg("x_a"),
          py::arg("x_b"), py::arg("tol") = 1e-8);

    m.def("sas_minimum",
          [](const std::string& pre, const std::string& config, int na, double x_a,
             double x_b, const std::string& sector) {
              const ModelParams p = make_params(pre, config, na, x_a, x_b);
              const auto mf = ground_solution(p);
              const double sqn = std::sqrt(double(na));
              const HilbertSpace space(
                  na, {cutoff_for_amplitude(sqn * mf.trial.r1 + 0.75),
                       cutoff_for_amplitude(sqn * mf.trial.r2 + 0.75)},
                  p.config);
              const SasMinimum s = minimize_sas(space, p, sector_from_name(sector));
              py::dict d;
              d["energy_per_atom"] = s.energy_per_atom;
              d["r1"] = s.trial.r1;
              d["r2"] = s.trial.r2;
              d["rho2"] = s.trial.rho2;
              d["rho3"] = s.trial.rho3;
              d["matter_rdm"] = s.matter_rdm;
              d["converged"] = s.converged;
              return d;
          },
          py::arg("preset"), py::arg("config"), py::arg("na"), py::arg("x_a"),
          py::arg("x_b"), py::arg("sector") = "ee");

    m.def("fidelity",
          [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
              return fidelity(DensityMatrix(a), DensityMatrix(b));
          },
          py::arg("rho1"), py::arg("rho2"));

    m.def("bures_distance",
          [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
              return bures_distance(DensityMatrix(a), DensityMatrix(b));
          },
          py::arg("rho1"), py::arg("rho2"));

    m.def("fidelity_susceptibility",
          [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double step) {
              return fidelity_susceptibility(DensityMatrix(a), DensityMatrix(b), step);
          },
          py::arg("rho1"), py::arg("rho2"), py::arg("step_norm"));

    m.def("linear_entropy",
          [](const Eigen::MatrixXcd& a) { return linear_entropy(DensityMatrix(a)); },
          py::arg("rho"));

    m.def("vn_entropy",
          [](const Eigen::MatrixXcd& a) { return vn_entropy(DensityMatrix(a)); },
          py::arg("rho"));

    m.def("simplex_embed", [](double p1, double p2, double p3) {
        const auto pt = simplex_embed({p1, p2, p3});
        return py::make_tuple(pt.u, pt.v);
    }, py::arg("p1"), py::arg("p2"), py::arg("p3"));

    m.def("min_fidelity_point",
          [](const std::string& pre, const std::string& config, int na, double x_a,
             double x_b, double dx, const std::string& method) {
              ScanGrid grid;
              grid.axis_a = {x_a, x_a, 1.0};
              grid.axis_b = {x_b, x_b, 1.0};
              grid.na = na;
              grid.method = method_from_name(method);
              grid.sector = SectorPolicy::Auto;
              ScanConfig cfg;
              cfg.base = preset(pre);
              cfg.base.config = config_from_name(config);
              cfg.dx = dx;
              const ScanRecord r = evaluate_point(grid, cfg, 0, 0);
              if (!r.error.empty()) throw std::runtime_error(r.error);
              py::dict d;
              d["f_min"] = r.f_min;
              d["ln_chi"] = r.ln_chi;
              d["d_bures"] = r.d_bures;
              d["energy_per_atom"] = r.energy;
              d["occupations"] = py::make_tuple(r.p1, r.p2, r.p3);
              d["sl_matter"] = r.sl_matter;
              d["sl_atom"] = r.sl_atom;
              d["region"] = r.region;
              return d;
          },
          py::arg("preset"), py::arg("config"), py::arg("na"), py::arg("x_a"),
          py::arg("x_b"), py::arg("dx") = 1e-3, py::arg("method") = "exact");
}
