#pragma once

#include <functional>
#include <optional>

#include "lcav/hilbert.hpp"
#include "lcav/operators.hpp"

namespace lcav {

struct GroundSolution {
    double energy = 0.0;
    Eigen::VectorXd state;   // unit norm, full-space indexing
    FockCutoffs cutoffs;
    std::optional<ParitySector> sector;
    double residual = 0.0;   // ||H psi - E psi||
    int iterations = 0;
    bool dense_path = false;
};

struct GroundOptions {
    double residual_tol = 1e-10;   // relative to max(1, |E|)
    int max_iterations = 2000;
    long dense_threshold = 320;    // auto-dense below this dimension
    bool force_dense = false;      // oracle path (guarded at dimension 4000)
    bool force_iterative = false;
};

// Lowest eigenpair of the (optionally sector-restricted) Hamiltonian.
GroundSolution ground_state(const HilbertSpace&, const ModelParams&,
                            std::optional<ParitySector> sector = {},
                            const GroundOptions& = {});

struct ConvergedGround {
    GroundSolution solution;
    double delta_e = 0.0;          // energy change over the last enlargement
    double edge_occupation = 0.0;  // weight on the outermost Fock shells
    int rounds = 0;
};

// Grows the Fock cutoffs (25% per round, at least +4) from the mean-field
// amplitude rule until |dE| < tol and the edge occupation is < 1e-8.
ConvergedGround converge_cutoffs(const ModelParams&,
                                 std::optional<ParitySector> sector = {},
                                 double tol = 1e-8, const GroundOptions& = {});

// Probability carried by basis states sitting on either truncation edge.
double edge_occupation(const HilbertSpace&, const Eigen::VectorXd& state);

// Initial cutoffs for the truncation rule at the given couplings.
FockCutoffs rule_cutoffs(const ModelParams&);

namespace detail {

struct LanczosResult {
    double eigenvalue = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Lowest eigenpair by Lanczos with full reorthogonalization and
// deterministic thick restarts from the current Ritz vector.
LanczosResult lanczos_lowest(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& matvec,
    const Eigen::VectorXd& seed, double tol, int max_iterations);

}  // namespace detail

}  // namespace lcav
