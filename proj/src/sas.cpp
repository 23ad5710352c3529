#include "lcav/sas.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lcav/nelder_mead.hpp"

namespace lcav {

Eigen::VectorXd expand_matter_coherent(const std::array<double, 3>& gamma, int na) {
    const double norm2 = gamma[0] * gamma[0] + gamma[1] * gamma[1] + gamma[2] * gamma[2];
    if (!(norm2 > 0.0)) throw std::invalid_argument("matter vector gamma is zero");
    const auto basis = enumerate_atom_basis(na);

    std::vector<double> fact(na + 1, 1.0);
    for (int i = 1; i <= na; ++i) fact[i] = fact[i - 1] * i;

    Eigen::VectorXd amp(basis.size());
    const double scale = std::pow(norm2, -0.5 * na);
    for (size_t i = 0; i < basis.size(); ++i) {
        const auto& s = basis[i];
        const double multinom = fact[na] / (fact[s.n1] * fact[s.n2] * fact[s.n3]);
        amp[i] = std::sqrt(multinom) * std::pow(gamma[0], s.n1) *
                 std::pow(gamma[1], s.n2) * std::pow(gamma[2], s.n3) * scale;
    }
    return amp;
}

Eigen::VectorXd expand_field_coherent(double alpha, int cutoff, double* weight_loss,
                                      double loss_tol) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    Eigen::VectorXd amp(cutoff + 1);
    amp[0] = std::exp(-0.5 * alpha * alpha);
    for (int k = 1; k <= cutoff; ++k) amp[k] = amp[k - 1] * alpha / std::sqrt(double(k));
    const double kept = amp.squaredNorm();
    const double loss = std::max(0.0, 1.0 - kept);
    if (weight_loss) *weight_loss = loss;
    if (loss > loss_tol)
        throw std::runtime_error("field cutoff " + std::to_string(cutoff) +
                                 " too small for |alpha| = " + std::to_string(std::abs(alpha)));
    amp /= std::sqrt(kept);
    return amp;
}

namespace {

// Sign masks (-1)^{n1} and (-1)^{n3} over the atomic basis.
void parity_masks(const std::vector<AtomBasisState>& basis, Eigen::VectorXd& s1,
                  Eigen::VectorXd& s3) {
    s1.resize(basis.size());
    s3.resize(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        s1[i] = (basis[i].n1 & 1) ? -1.0 : 1.0;
        s3[i] = (basis[i].n3 & 1) ? -1.0 : 1.0;
    }
}

}  // namespace

SasState build_sas_state(const HilbertSpace& space, const TrialConfiguration& trial,
                         const ParitySector& sector) {
    if (space.config() != Config::Lambda)
        throw std::invalid_argument(
            "parity projection implemented for the Lambda configuration only");
    const auto gam = trial.gamma();
    const auto fld = trial.field();
    const double sqn = std::sqrt(double(space.na()));
    const double alpha1 = sqn * fld[0], alpha2 = sqn * fld[1];

    const Eigen::VectorXd f1 = expand_field_coherent(alpha1, space.cutoffs().nmax1);
    const Eigen::VectorXd f2 = expand_field_coherent(alpha2, space.cutoffs().nmax2);
    const Eigen::VectorXd mat = expand_matter_coherent(gam, space.na());
    Eigen::VectorXd s1, s3;
    parity_masks(space.atom_basis(), s1, s3);

    const double sm = (sector.par_m == Parity::Even) ? 1.0 : -1.0;
    const double sk = (sector.par_k == Parity::Even) ? 1.0 : -1.0;

    // Four-term projection: |a1,a2;g1,g2,g3> + sm |-a1,-a2;g1,g2,-g3>
    //   + sk |a1,-a2;-g1,g2,-g3> + sm sk |-a1,a2;-g1,g2,g3>.
    // Sign flips of coherent parameters act as exact (+-1) masks on the
    // truncated expansions.
    const int dm = space.atom_dim();
    const int l1 = space.cutoffs().nmax1 + 1, l2 = space.cutoffs().nmax2 + 1;
    Eigen::VectorXd psi(space.dim());
    long idx = 0;
    for (int nu1 = 0; nu1 < l1; ++nu1) {
        const double p1 = (nu1 & 1) ? -1.0 : 1.0;
        for (int nu2 = 0; nu2 < l2; ++nu2) {
            const double p2 = (nu2 & 1) ? -1.0 : 1.0;
            const double base = f1[nu1] * f2[nu2];
            const double w1 = base;                   // (+a1, +a2)
            const double w2 = sm * base * p1 * p2;    // (-a1, -a2)
            const double w3 = sk * base * p2;         // (+a1, -a2)
            const double w4 = sm * sk * base * p1;    // (-a1, +a2)
            for (int m = 0; m < dm; ++m, ++idx)
                psi[idx] = mat[m] * (w1 + w2 * s3[m] + w3 * s1[m] * s3[m] + w4 * s1[m]);
        }
    }

    const double norm = psi.norm();
    if (norm < 1e-12)
        throw zero_norm_error("parity projection annihilates the trial state (sector " +
                              sector_name(sector) + ")");
    psi /= norm;

    // Support must match the sector labels; the four-term cancellation is
    // exact, so any residual flags an inconsistent parity bookkeeping.
    double outside = 0.0;
    for (long i = 0; i < space.dim(); ++i)
        if (!(space.sector(i) == sector)) outside += psi[i] * psi[i];
    if (std::sqrt(outside) >= 1e-10)
        throw std::logic_error("SAS state leaks out of its parity sector");

    SasState out;
    out.sector = sector;
    out.trial = trial;
    out.amplitudes = std::move(psi);
    out.norm_constant = norm;
    return out;
}

SasEnergyContext::SasEnergyContext(const HilbertSpace& space, const ModelParams& params)
    : space_(space), params_(params), parts_(hamiltonian_parts(space, params)) {}

double SasEnergyContext::energy(const TrialConfiguration& trial, const ParitySector& sector,
                                double mu_a, double mu_b) const {
    try {
        const SasState state = build_sas_state(space_, trial, sector);
        return parts_.energy(state.amplitudes, mu_a, mu_b) / double(space_.na());
    } catch (const zero_norm_error&) {
        return std::numeric_limits<double>::infinity();
    } catch (const std::runtime_error&) {
        // field cutoff cannot hold the requested amplitude
        return std::numeric_limits<double>::infinity();
    }
}

double sas_energy(const HilbertSpace& space, const ModelParams& params,
                  const TrialConfiguration& trial, const ParitySector& sector) {
    const SasState state = build_sas_state(space, trial, sector);
    const HamiltonianParts parts = hamiltonian_parts(space, params);
    return parts.energy(state.amplitudes, params.mu_a, params.mu_b) / double(space.na());
}

namespace {

std::vector<std::array<double, 4>> minimize_starts(const ModelParams& params,
                                                   const SasMinimizeOptions& opt) {
    std::vector<std::array<double, 4>> starts;
    if (opt.warm_start) {
        const auto& w = *opt.warm_start;
        starts.push_back({w.r1, w.r2, w.rho2, w.rho3});
    }
    for (const auto& cp : critical_points(params)) {
        const auto& t = cp.trial;
        if (t.gamma1 == 0.0) {
            // level-swapped chart: gamma = (0, 1, rho3) ~ (1, R, R rho3)
            starts.push_back({t.r1, t.r2, opt.rho_bound,
                              std::min(opt.rho_bound, opt.rho_bound * t.rho3)});
        } else {
            starts.push_back({t.r1, t.r2, t.rho2, t.rho3});
        }
    }
    if (!opt.warm_start) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const size_t nbase = starts.size();
        for (int k = 0; k < opt.random_starts; ++k) {
            auto s = starts[k % nbase];
            for (double& v : s) v = v * (1.0 + 0.3 * u(rng)) + 0.05 * std::abs(u(rng));
            starts.push_back(s);
        }
    }
    return starts;
}

}  // namespace

SasMinimum minimize_sas(const HilbertSpace& space, const ModelParams& params,
                        const ParitySector& sector, const SasMinimizeOptions& opt) {
    params.validate();
    const SasEnergyContext ctx(space, params);

    const auto objective = [&](const std::vector<double>& x) {
        TrialConfiguration t;
        t.r1 = x[0];
        t.r2 = x[1];
        t.rho2 = x[2];
        t.rho3 = x[3];
        return ctx.energy(t, sector, params.mu_a, params.mu_b);
    };

    const std::vector<double> lo = {0.0, 0.0, 0.0, 0.0};
    const std::vector<double> hi = {opt.r_bound, opt.r_bound, opt.rho_bound, opt.rho_bound};

    detail::NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    int total_evals = 0;
    const double step = opt.warm_start ? 0.02 : 0.1;
    for (const auto& s : minimize_starts(params, opt)) {
        auto res = detail::nelder_mead(objective, {s[0], s[1], s[2], s[3]}, lo, hi, step,
                                       opt.diam_tol, opt.max_evals_per_start);
        total_evals += res.evals;
        if (res.f < best.f || (res.f == best.f && res.converged && !best.converged))
            best = res;
    }

    if (!std::isfinite(best.f))
        throw zero_norm_error("no admissible trial state in sector " + sector_name(sector));

    // polish pass: restart the winner with a tight simplex
    {
        auto res = detail::nelder_mead(objective, best.x, lo, hi, 0.01, opt.diam_tol,
                                       opt.max_evals_per_start);
        total_evals += res.evals;
        if (res.f < best.f) best = res;
    }

    // The energy flattens into a plateau along the overall matter scale for
    // level-swapped states, which leaves the simplex answer seed-dependent
    // there.  A deterministic 1D refinement of the scale keeps the minimizer
    // map single-valued across scans; it never accepts a worse point.
    const double m = std::max(best.x[2], best.x[3]);
    if (m > 1e-6) {
        const auto at_scale = [&](double t) {
            auto x = best.x;
            x[2] *= t;
            x[3] *= t;
            ++total_evals;
            return objective(x);
        };
        const double t_max = opt.rho_bound / m;
        double bt = 1.0, bf = best.f;
        const int ngrid = 160;
        for (int k = 0; k <= ngrid; ++k) {
            const double t = t_max * std::pow(1024.0, -double(k) / ngrid);
            const double f = at_scale(t);
            if (f < bf) { bf = f; bt = t; }
        }
        double lo = bt / std::pow(1024.0, 1.0 / ngrid);
        double hi = std::min(t_max, bt * std::pow(1024.0, 1.0 / ngrid));
        const double gr = 0.6180339887498949;
        double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
        double f1 = at_scale(t1), f2 = at_scale(t2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                hi = t2; t2 = t1; f2 = f1;
                t1 = hi - gr * (hi - lo);
                f1 = at_scale(t1);
            } else {
                lo = t1; t1 = t2; f1 = f2;
                t2 = lo + gr * (hi - lo);
                f2 = at_scale(t2);
            }
        }
        const double tf = 0.5 * (lo + hi);
        const double ff = at_scale(tf);
        if (ff <= bf) { bf = ff; bt = tf; }
        if (bf <= best.f) {
            best.x[2] *= bt;
            best.x[3] *= bt;
            best.f = bf;
        }
    }

    SasMinimum out;
    out.sector = sector;
    out.trial.r1 = best.x[0];
    out.trial.r2 = best.x[1];
    out.trial.rho2 = best.x[2];
    out.trial.rho3 = best.x[3];
    out.energy_per_atom = best.f;
    const SasState state = build_sas_state(space, out.trial, sector);
    out.matter_rdm = sas_matter_rdm(space, state);
    out.converged = best.converged;
    out.evals = total_evals;
    return out;
}

Eigen::MatrixXd sas_matter_rdm(const HilbertSpace& space, const SasState& state) {
    return matter_rdm(space, state.amplitudes);
}

}  // namespace lcav
