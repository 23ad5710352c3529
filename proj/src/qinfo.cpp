#include "lcav/qinfo.hpp"

#include <cmath>
#include <stdexcept>

#include "lcav/operators.hpp"
#include "lcav/sas.hpp"

namespace lcav {

namespace {

constexpr double kClampTol = 1e-10;

// Eigenvalues clamped at zero; rejects genuinely negative spectra.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> psd_eigs(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.eigenvalues().minCoeff() < -kClampTol)
        throw std::invalid_argument("density matrix is not PSD within clamp tolerance");
    return es;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    const auto es = psd_eigs(m);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix not square");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
        throw std::invalid_argument("density matrix trace differs from 1");
    m_ = 0.5 * (m_ + m_.adjoint().eval());
}

DensityMatrix DensityMatrix::from_real(const Eigen::MatrixXd& m, double tol) {
    return DensityMatrix(Eigen::MatrixXcd(m.cast<std::complex<double>>()), tol);
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double n2 = psi.squaredNorm();
    if (!(n2 > 0.0)) throw std::invalid_argument("zero state vector");
    return DensityMatrix(Eigen::MatrixXcd(psi * psi.adjoint() / n2));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations) {
    return DensityMatrix(Eigen::MatrixXcd(
        populations.cast<std::complex<double>>().asDiagonal()));
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw std::invalid_argument("density matrix dimensions differ");
    // Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) equals the trace norm of
    // sqrt(rho1) sqrt(rho2); singular values avoid the sqrt amplification
    // of near-zero eigenvalue noise.
    const Eigen::MatrixXcd s1 = psd_sqrt(rho1.matrix());
    const Eigen::MatrixXcd s2 = psd_sqrt(rho2.matrix());
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s1 * s2);
    const double tr = svd.singularValues().sum();
    return std::min(1.0, tr * tr);
}

double fidelity_susceptibility(const DensityMatrix& rho_at_x,
                               const DensityMatrix& rho_at_x_plus_dx,
                               double step_norm) {
    if (!(step_norm > 0.0)) throw std::invalid_argument("step norm must be positive");
    return 2.0 * (1.0 - fidelity(rho_at_x, rho_at_x_plus_dx)) / (step_norm * step_norm);
}

double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(fidelity(rho1, rho2))));
}

double linear_entropy(const DensityMatrix& rho) {
    // Tr rho^2 = ||rho||_F^2 for Hermitian rho
    return 1.0 - rho.matrix().squaredNorm();
}

double vn_entropy(const DensityMatrix& rho) {
    const auto es = psd_eigs(rho.matrix());
    double s = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam > 0.0) s -= lam * std::log(lam);
    }
    return s;
}

DensityMatrix one_atom_rdm(const Eigen::Matrix3cd& expectations, int na) {
    if (na < 1) throw std::invalid_argument("na must be at least 1");
    const double trace = expectations.trace().real() / na;
    if (std::abs(trace - 1.0) > 1e-8 || std::abs(expectations.trace().imag()) > 1e-8)
        throw std::invalid_argument("inconsistent expectation table: trace != na");
    return DensityMatrix(Eigen::MatrixXcd(expectations.transpose() / double(na)));
}

OccupationProbabilities occupations(const DensityMatrix& rho) {
    if (rho.dim() != 3) throw std::invalid_argument("one-atom density matrix must be 3x3");
    return {rho.matrix()(0, 0).real(), rho.matrix()(1, 1).real(),
            rho.matrix()(2, 2).real()};
}

double linear_entropy(const OccupationProbabilities& p) {
    return 2.0 * (p.p1 * p.p2 + p.p1 * p.p3 + p.p2 * p.p3);
}

double vn_entropy(const OccupationProbabilities& p) {
    double s = 0.0;
    for (double q : {p.p1, p.p2, p.p3})
        if (q > 0.0) s -= q * std::log(q);
    return s;
}

double two_body_reduction_residual(const std::array<double, 3>& gamma, int na,
                                   int i, int k, int j, int l) {
    if (na < 2) throw std::invalid_argument("na must be at least 2");
    const auto expect = [&](int atoms) {
        const auto basis = enumerate_atom_basis(atoms);
        const Eigen::VectorXd psi = expand_matter_coherent(gamma, atoms);
        const Eigen::MatrixXd op = atomic_generator(basis, i, j) * atomic_generator(basis, k, l) -
                                   (j == k ? 1.0 : 0.0) * atomic_generator(basis, i, l);
        return psi.dot(op * psi);
    };
    const double pairs = 0.5 * double(na) * double(na - 1);
    return std::abs(expect(na) - pairs * expect(2));
}

double mutual_information_one_one(double sl_one_atom, double sl_matter) {
    return 2.0 * sl_one_atom - sl_matter;
}

double mutual_information_matter_field(double s_matter) { return 2.0 * s_matter; }

SimplexPoint simplex_embed(const OccupationProbabilities& p) {
    return {p.p2 + 0.5 * p.p3, 0.5 * std::sqrt(3.0) * p.p3};
}

double simplex_radius2(const OccupationProbabilities& p) {
    const double a = p.p1 - 1.0 / 3.0, b = p.p2 - 1.0 / 3.0, c = p.p3 - 1.0 / 3.0;
    return a * a + b * b + c * c;
}

bool inscribed_circle_test(const OccupationProbabilities& p, double tol) {
    return std::abs(simplex_radius2(p) - 1.0 / 6.0) < tol;
}

}  // namespace lcav
