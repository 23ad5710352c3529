#pragma once

#include <array>

#include <Eigen/Dense>

namespace lcav {

// Hermitian, PSD (within clamp tolerance), unit-trace matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd m, double tol = 1e-8);
    static DensityMatrix from_real(const Eigen::MatrixXd& m, double tol = 1e-8);
    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix diagonal(const Eigen::VectorXd& populations);

    const Eigen::MatrixXcd& matrix() const { return m_; }
    long dim() const { return m_.rows(); }

private:
    Eigen::MatrixXcd m_;
};

// Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2, computed through
// Hermitian eigendecompositions with eigenvalues clamped at zero
// (tolerance -1e-10; anything below is rejected).
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// chi = 2 (1 - F) / ||dx||^2
double fidelity_susceptibility(const DensityMatrix& rho_at_x,
                               const DensityMatrix& rho_at_x_plus_dx,
                               double step_norm);

// d_B = sqrt(2 - 2 sqrt(F))
double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

double linear_entropy(const DensityMatrix&);  // 1 - Tr rho^2
double vn_entropy(const DensityMatrix&);      // -Tr rho ln rho, 0 ln 0 = 0

struct OccupationProbabilities {
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

// One-particle 3x3 density matrix from the table of collective expectation
// values, rho(j,k) = <A_kj> / na; expectations(j-1, k-1) = <A_jk>.
DensityMatrix one_atom_rdm(const Eigen::Matrix3cd& expectations, int na);

OccupationProbabilities occupations(const DensityMatrix& one_atom_rdm);

double linear_entropy(const OccupationProbabilities&);
double vn_entropy(const OccupationProbabilities&);

// |<O(ik,jl)>^(na) - binom(na,2) <O(ik,jl)>^(2)| with
// O(ik,jl) = A_ij A_kl - delta_jk A_il, evaluated on the symmetric coherent
// matter state with direction gamma for na and for 2 atoms.
double two_body_reduction_residual(const std::array<double, 3>& gamma, int na,
                                   int i, int k, int j, int l);

// I(rho_1 : rho_1) = 2 S_L^(1) - S_L(rho_M) for the two-atom case.
double mutual_information_one_one(double sl_one_atom, double sl_matter);

// I(rho_M : rho_F) = 2 S(rho_M) for a pure composite state.
double mutual_information_matter_field(double s_matter);

// Equilateral-triangle embedding with vertices (0,0), (1,0), (1/2, sqrt3/2)
// at pure levels 1, 2, 3.
struct SimplexPoint {
    double u = 0.0, v = 0.0;
};

SimplexPoint simplex_embed(const OccupationProbabilities&);

// sum_k (P_k - 1/3)^2; the inscribed circle is the 1/6 level set.
double simplex_radius2(const OccupationProbabilities&);
bool inscribed_circle_test(const OccupationProbabilities&, double tol = 1e-10);

}  // namespace lcav
