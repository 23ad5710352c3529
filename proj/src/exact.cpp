#include "lcav/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "lcav/meanfield.hpp"

namespace lcav {

namespace detail {

LanczosResult lanczos_lowest(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
    const Eigen::VectorXd& seed, double tol, int max_iterations) {
    const long n = seed.size();
    const int block = std::min<long>(n, 140);  // basis size per restart cycle

    LanczosResult out;
    Eigen::VectorXd v = seed.normalized();
    Eigen::VectorXd w(n);

    std::vector<Eigen::VectorXd> basis;
    Eigen::VectorXd alpha(block), beta(block);

    while (out.iterations < max_iterations) {
        basis.clear();
        basis.push_back(v);
        int m = 0;
        for (; m < block && out.iterations < max_iterations; ++m, ++out.iterations) {
            matvec(basis[m], w);
            alpha[m] = basis[m].dot(w);
            w -= alpha[m] * basis[m];
            if (m > 0) w -= beta[m - 1] * basis[m - 1];
            // full reorthogonalization, twice for stability
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) w -= b.dot(w) * b;
            beta[m] = w.norm();
            if (beta[m] < 1e-14) { ++m; break; }  // invariant subspace
            basis.push_back(w / beta[m]);
        }

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const Eigen::VectorXd s = es.eigenvectors().col(0);
        out.eigenvalue = es.eigenvalues()[0];

        v.setZero();
        for (int i = 0; i < m; ++i) v += s[i] * basis[i];
        v.normalize();

        matvec(v, w);
        out.residual = (w - out.eigenvalue * v).norm();
        if (out.residual < tol * std::max(1.0, std::abs(out.eigenvalue))) {
            out.converged = true;
            break;
        }
        if (m >= static_cast<int>(basis.size()) && beta[m - 1] < 1e-14) {
            // exact invariant subspace reached
            out.converged = out.residual < tol * std::max(1.0, std::abs(out.eigenvalue));
            break;
        }
    }
    out.vector = v;
    return out;
}

}  // namespace detail

namespace {

// Deterministic seed: the lowest-diagonal basis state of the solve space,
// with a small fixed-tail admixture so no eigenvector is missed.
Eigen::VectorXd make_seed(const Eigen::VectorXd& diag) {
    long best = 0;
    diag.minCoeff(&best);
    Eigen::VectorXd seed(diag.size());
    for (long i = 0; i < diag.size(); ++i) seed[i] = 1e-3 / double(7 + (i % 1009));
    seed[best] = 1.0;
    return seed.normalized();
}

}  // namespace

GroundSolution ground_state(const HilbertSpace& space, const ModelParams& params,
                            std::optional<ParitySector> sector,
                            const GroundOptions& opt) {
    params.validate();
    const HamiltonianParts parts = hamiltonian_parts(space, params);

    std::vector<long> keep;
    if (sector) {
        keep = space.sector_indices(*sector);
        if (keep.empty()) throw std::invalid_argument("empty parity sector");
    }
    const long n = sector ? static_cast<long>(keep.size()) : space.dim();

    // Restriction of H to the sector (or the full operator).
    Eigen::VectorXd diag(n);
    Eigen::SparseMatrix<double> va, vb;
    if (sector) {
        std::vector<long> pos(space.dim(), -1);
        for (long i = 0; i < n; ++i) pos[keep[i]] = i;
        for (long i = 0; i < n; ++i) diag[i] = parts.diagonal[keep[i]];
        const auto restrict_sparse = [&](const Eigen::SparseMatrix<double>& m) {
            std::vector<Eigen::Triplet<double>> trips;
            for (int k = 0; k < m.outerSize(); ++k)
                for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
                    if (pos[it.row()] >= 0 && pos[it.col()] >= 0)
                        trips.emplace_back(pos[it.row()], pos[it.col()], it.value());
            Eigen::SparseMatrix<double> r(n, n);
            r.setFromTriplets(trips.begin(), trips.end());
            return r;
        };
        va = restrict_sparse(parts.v_a);
        vb = restrict_sparse(parts.v_b);
    } else {
        diag = parts.diagonal;
        va = parts.v_a;
        vb = parts.v_b;
    }

    const double mu_a = params.mu_a, mu_b = params.mu_b;
    const auto matvec = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y = diag.cwiseProduct(x);
        if (mu_a != 0.0) y.noalias() += mu_a * (va * x);
        if (mu_b != 0.0) y.noalias() += mu_b * (vb * x);
    };

    GroundSolution out;
    out.cutoffs = space.cutoffs();
    out.sector = sector;

    Eigen::VectorXd ground(n);
    const bool dense = opt.force_dense || (!opt.force_iterative && n < opt.dense_threshold);
    if (dense && n > 4000)
        throw std::runtime_error("dense solve refused above dimension 4000");
    if (dense) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        h.diagonal() = diag;
        h += mu_a * Eigen::MatrixXd(va) + mu_b * Eigen::MatrixXd(vb);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        out.energy = es.eigenvalues()[0];
        ground = es.eigenvectors().col(0);
        Eigen::VectorXd hx(n);
        matvec(ground, hx);
        out.residual = (hx - out.energy * ground).norm();
        out.dense_path = true;
    } else {
        const auto res = detail::lanczos_lowest(matvec, make_seed(diag),
                                                opt.residual_tol, opt.max_iterations);
        if (!res.converged)
            throw std::runtime_error("ground-state solver did not converge: residual " +
                                     std::to_string(res.residual) + " after " +
                                     std::to_string(res.iterations) + " iterations");
        out.energy = res.eigenvalue;
        ground = res.vector;
        out.residual = res.residual;
        out.iterations = res.iterations;
    }

    if (sector) {
        out.state = Eigen::VectorXd::Zero(space.dim());
        for (long i = 0; i < n; ++i) out.state[keep[i]] = ground[i];
    } else {
        out.state = std::move(ground);
    }
    // fix the overall sign for reproducibility
    long imax = 0;
    out.state.cwiseAbs().maxCoeff(&imax);
    if (out.state[imax] < 0.0) out.state = -out.state;
    return out;
}

double edge_occupation(const HilbertSpace& space, const Eigen::VectorXd& state) {
    if (state.size() != space.dim())
        throw std::invalid_argument("state dimension mismatch");
    double occ = 0.0;
    for (long i = 0; i < space.dim(); ++i) {
        const auto lb = space.labels(i);
        if (lb.nu1 == space.cutoffs().nmax1 || lb.nu2 == space.cutoffs().nmax2)
            occ += state[i] * state[i];
    }
    return occ;
}

FockCutoffs rule_cutoffs(const ModelParams& params) {
    const auto mf = ground_solution(params);
    const double sqn = std::sqrt(double(params.na));
    return {cutoff_for_amplitude(sqn * mf.trial.r1),
            cutoff_for_amplitude(sqn * mf.trial.r2)};
}

ConvergedGround converge_cutoffs(const ModelParams& params,
                                 std::optional<ParitySector> sector, double tol,
                                 const GroundOptions& opt) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    FockCutoffs cut = rule_cutoffs(params);

    ConvergedGround out;
    {
        const HilbertSpace space(params.na, cut, params.config);
        out.solution = ground_state(space, params, sector, opt);
        out.edge_occupation = edge_occupation(space, out.solution.state);
    }
    // No weight anywhere near the truncation edge: converged at the rule
    // cutoffs (dE over an enlargement would be numerically zero).
    if (out.edge_occupation < 1e-20) return out;

    for (int round = 0; round < 40; ++round) {
        const FockCutoffs larger{cut.nmax1 + std::max(4, cut.nmax1 / 4),
                                 cut.nmax2 + std::max(4, cut.nmax2 / 4)};
        const HilbertSpace bigger(params.na, larger, params.config);
        GroundSolution next = ground_state(bigger, params, sector, opt);
        out.delta_e = std::abs(next.energy - out.solution.energy);
        out.edge_occupation = edge_occupation(bigger, next.state);
        out.solution = std::move(next);
        out.rounds = round + 1;
        cut = larger;
        if (out.delta_e < tol && out.edge_occupation < 1e-8) return out;
    }
    throw std::runtime_error("cutoff convergence failed: dE = " +
                             std::to_string(out.delta_e) + ", edge occupation = " +
                             std::to_string(out.edge_occupation));
}

}  // namespace lcav
