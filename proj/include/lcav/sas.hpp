#pragma once

#include <cstdint>
#include <stdexcept>

#include "lcav/meanfield.hpp"
#include "lcav/operators.hpp"

namespace lcav {

// Parity projection annihilated the trial state.
struct zero_norm_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitudes of |na; gamma> over the symmetric atomic basis,
// sqrt(na!/(n1! n2! n3!)) gamma1^n1 gamma2^n2 gamma3^n3 / |gamma|^na.
Eigen::VectorXd expand_matter_coherent(const std::array<double, 3>& gamma, int na);

// Truncated Glauber coherent state, renormalized; the pre-normalization
// weight beyond the cutoff is reported through *weight_loss and must stay
// below loss_tol.
Eigen::VectorXd expand_field_coherent(double alpha, int cutoff,
                                      double* weight_loss = nullptr,
                                      double loss_tol = 1e-8);

struct SasState {
    ParitySector sector;
    TrialConfiguration trial;
    Eigen::VectorXd amplitudes;  // unit norm, supported on the sector
    double norm_constant = 0.0;  // norm of the unnormalized four-term sum
};

// Parity-projected coherent product state: the four sign-flipped product
// terms combined with the sector's sign pattern.
SasState build_sas_state(const HilbertSpace&, const TrialConfiguration&,
                         const ParitySector&);

double sas_energy(const HilbertSpace&, const ModelParams&,
                  const TrialConfiguration&, const ParitySector&);

struct SasMinimum {
    ParitySector sector;
    TrialConfiguration trial;
    double energy_per_atom = 0.0;
    Eigen::MatrixXd matter_rdm;
    bool converged = false;
    int evals = 0;
};

struct SasMinimizeOptions {
    double diam_tol = 1e-8;
    int max_evals_per_start = 4000;
    int random_starts = 8;
    std::uint64_t seed = 0x5eed1;
    double r_bound = 6.0;
    double rho_bound = 50.0;
    // When set, replaces the full multi-start by {warm point, mean-field
    // critical points}; used by scans for displaced re-minimizations.
    const TrialConfiguration* warm_start = nullptr;
};

// Derivative-free minimization of the sector energy over
// (r1, r2, rho2, rho3) in [0, r_bound]^2 x [0, rho_bound]^2, multi-start
// from every mean-field critical point plus random perturbations.
SasMinimum minimize_sas(const HilbertSpace&, const ModelParams&,
                        const ParitySector&, const SasMinimizeOptions& = {});

Eigen::MatrixXd sas_matter_rdm(const HilbertSpace&, const SasState&);

// Reusable evaluation context so scans can re-couple cheaply.
class SasEnergyContext {
public:
    SasEnergyContext(const HilbertSpace& space, const ModelParams& params);

    // Energy per atom of the sector-projected trial, or +inf when the
    // projection annihilates the state / the cutoff cannot hold the fields.
    double energy(const TrialConfiguration&, const ParitySector&, double mu_a,
                  double mu_b) const;

    const HilbertSpace& space() const { return space_; }
    const HamiltonianParts& parts() const { return parts_; }

private:
    const HilbertSpace& space_;
    ModelParams params_;
    HamiltonianParts parts_;
};

}  // namespace lcav
