#pragma once

#include <utility>

#include "lcav/hilbert.hpp"
#include "lcav/sparse.hpp"

namespace lcav {

// u(3) generator A_jk = b_j^dag b_k on the symmetric atomic block (d_M x d_M).
Eigen::MatrixXd atomic_generator(const std::vector<AtomBasisState>& basis, int j, int k);

// The same generator on the full composite space (identity over both modes).
SparseOperator collective_generator(const HilbertSpace&, int j, int k);

// (annihilation, creation) pair of the given mode with standard sqrt(nu)
// matrix elements, truncated at the cutoff.
std::pair<SparseOperator, SparseOperator> boson_ops(const HilbertSpace&, int mode);

// Full Hamiltonian: mode and level diagonal terms plus the configuration's
// two dipole couplings with prefactor 1/sqrt(na).
SparseOperator build_hamiltonian(const HilbertSpace&, const ModelParams&);

enum class ParityOp { Pi1, Pi2 };

// Diagonal +-1 operator exp(i pi M) or exp(i pi K).
SparseOperator parity_operator(const HilbertSpace&, ParityOp which);

// Max residuals of C1 - na*I and C2 - na(na+2)*I on the atomic block.
std::pair<double, double> casimir_check(const HilbertSpace&);

// H split as diag + mu_a*Va + mu_b*Vb so scans can re-couple cheaply.
// Va, Vb carry the -1/sqrt(na) interaction prefactor.
struct HamiltonianParts {
    Eigen::VectorXd diagonal;
    Eigen::SparseMatrix<double> v_a, v_b;

    // <psi|H|psi> for a unit-norm real vector.
    double energy(const Eigen::VectorXd& psi, double mu_a, double mu_b) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& psi, double mu_a, double mu_b) const;
};

HamiltonianParts hamiltonian_parts(const HilbertSpace&, const ModelParams&);

// Table of expectation values <A_jk> from a matter density matrix,
// E(j-1, k-1) = Tr(rho_M A_jk).
Eigen::Matrix3d u3_expectations(const Eigen::MatrixXd& rho_matter,
                                const std::vector<AtomBasisState>& basis);

}  // namespace lcav
