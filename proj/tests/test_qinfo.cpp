#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lcav/qinfo.hpp"
#include "lcav/sas.hpp"

#include "test_util.hpp"

using namespace lcav;
using lcav::testutil::random_density;
using lcav::testutil::random_pure;
using lcav::testutil::random_unitary;

namespace {

DensityMatrix diag3(double a, double b, double c) {
    return DensityMatrix::diagonal(Eigen::Vector3d(a, b, c));
}

}  // namespace

TEST_CASE("fidelity on simple states") {
    std::mt19937_64 rng(3);
    const DensityMatrix rho = random_density(4, rng);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(diag3(1, 0, 0), diag3(0, 1, 0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity(diag3(0.5, 0.5, 0), diag3(1, 0, 0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity axioms on random pairs") {
    std::mt19937_64 rng(17);
    for (int d : {3, 6, 15}) {
        for (int trial = 0; trial < 25; ++trial) {
            const DensityMatrix a = random_density(d, rng), b = random_density(d, rng);
            const double f = fidelity(a, b);
            CHECK(f >= -1e-12);
            CHECK(f <= 1.0 + 1e-12);
            CHECK(std::abs(f - fidelity(b, a)) < 1e-9);
            const Eigen::MatrixXcd u = random_unitary(d, rng);
            const DensityMatrix ua(Eigen::MatrixXcd(u * a.matrix() * u.adjoint()));
            const DensityMatrix ub(Eigen::MatrixXcd(u * b.matrix() * u.adjoint()));
            CHECK(std::abs(f - fidelity(ua, ub)) < 1e-9);
        }
    }
}

TEST_CASE("pure-state fidelity reduces to the squared overlap") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXcd u = random_pure(5, rng), v = random_pure(5, rng);
        const double f = fidelity(DensityMatrix::pure(u), DensityMatrix::pure(v));
        CHECK(std::abs(f - std::norm(u.dot(v))) < 1e-10);
    }
}

TEST_CASE("susceptibility formula and unitary invariance") {
    CHECK(fidelity_susceptibility(diag3(1, 0, 0), diag3(1, 0, 0), 0.1) ==
          doctest::Approx(0.0).epsilon(1e-13));
    // pure-vs-mixed pair engineered at F = 0.98; with ||dx|| = 0.1, chi = 4
    const DensityMatrix a = diag3(1, 0, 0);
    const DensityMatrix b = diag3(0.98, 0.02, 0);
    CHECK(fidelity(a, b) == doctest::Approx(0.98).epsilon(1e-13));
    CHECK(fidelity_susceptibility(a, b, 0.1) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK_THROWS_AS(fidelity_susceptibility(a, b, 0.0), std::invalid_argument);

    std::mt19937_64 rng(29);
    const DensityMatrix r1 = random_density(4, rng), r2 = random_density(4, rng);
    const Eigen::MatrixXcd u = random_unitary(4, rng);
    const DensityMatrix u1(Eigen::MatrixXcd(u * r1.matrix() * u.adjoint()));
    const DensityMatrix u2(Eigen::MatrixXcd(u * r2.matrix() * u.adjoint()));
    CHECK(std::abs(fidelity_susceptibility(r1, r2, 1e-2) -
                   fidelity_susceptibility(u1, u2, 1e-2)) < 1e-8);
}

TEST_CASE("bures distance") {
    std::mt19937_64 rng(31);
    const DensityMatrix rho = random_density(3, rng);
    CHECK(bures_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(bures_distance(diag3(1, 0, 0), diag3(0, 1, 0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // F = 1/4 -> d_B = 1: orthogonal-support mixture engineered for F = 1/4
    const DensityMatrix a = diag3(1, 0, 0);
    const DensityMatrix b = diag3(0.25, 0.75, 0);
    CHECK(fidelity(a, b) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(bures_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropies") {
    CHECK(linear_entropy(diag3(1.0 / 3, 1.0 / 3, 1.0 / 3)) ==
          doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(vn_entropy(diag3(1.0 / 3, 1.0 / 3, 1.0 / 3)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(linear_entropy(diag3(1, 0, 0)) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(vn_entropy(diag3(1, 0, 0)) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(linear_entropy(diag3(0.5, 0.5, 0)) == doctest::Approx(0.5).epsilon(1e-14));

    // diagonal closed forms match the matrix definitions
    const OccupationProbabilities p{0.2, 0.5, 0.3};
    CHECK(std::abs(linear_entropy(p) - linear_entropy(diag3(0.2, 0.5, 0.3))) < 1e-12);
    CHECK(std::abs(vn_entropy(p) - vn_entropy(diag3(0.2, 0.5, 0.3))) < 1e-12);
}

TEST_CASE("one-atom density matrix from expectation tables") {
    // all atoms in level 1
    Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
    e(0, 0) = 4.0;
    const DensityMatrix r = one_atom_rdm(e, 4);
    CHECK((r.matrix() - Eigen::Vector3cd(1, 0, 0).asDiagonal().toDenseMatrix())
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    // na = 1: the table transposed is the matter density matrix itself
    std::mt19937_64 rng(41);
    const DensityMatrix rho1 = random_density(3, rng);
    Eigen::Matrix3cd table;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) table(j, k) = rho1.matrix()(k, j);
    CHECK((one_atom_rdm(table, 1).matrix() - rho1.matrix()).cwiseAbs().maxCoeff() < 1e-12);

    // inconsistent trace rejected
    e(0, 0) = 3.5;
    CHECK_THROWS_AS(one_atom_rdm(e, 4), std::invalid_argument);
}

TEST_CASE("two-body reduction on symmetric coherent states") {
    // <A11 A11 - A11> = na (na - 1) P1^2 for the coherent state
    const std::array<double, 3> gamma{1.0, 0.7, 0.4};
    const double norm2 = 1.0 + 0.49 + 0.16;
    const double p1 = 1.0 / norm2;
    {
        const auto basis = enumerate_atom_basis(3);
        const Eigen::VectorXd psi = expand_matter_coherent(gamma, 3);
        const Eigen::MatrixXd op =
            atomic_generator(basis, 1, 1) * atomic_generator(basis, 1, 1) -
            atomic_generator(basis, 1, 1);
        CHECK(psi.dot(op * psi) == doctest::Approx(6.0 * p1 * p1).epsilon(1e-12));
    }
    CHECK(two_body_reduction_residual(gamma, 3, 1, 1, 1, 1) < 1e-12);
    CHECK(two_body_reduction_residual(gamma, 2, 1, 1, 1, 1) < 1e-14);  // factor 1

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::array<double, 3> g{1.0, u(rng), u(rng)};
        const int na = 2 + trial % 4;
        const int i = 1 + trial % 3, k = 1 + (trial / 3) % 3;
        const int j = 1 + (trial / 9) % 3, l = 1 + (trial / 2) % 3;
        CHECK(two_body_reduction_residual(g, na, i, k, j, l) < 1e-10);
    }
}

TEST_CASE("mutual information") {
    CHECK(mutual_information_one_one(0.0, 0.0) == 0.0);  // identical pure atoms
    CHECK(mutual_information_matter_field(0.37) == doctest::Approx(0.74));
    // subadditivity for symmetric two-atom product states
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::array<double, 3> g{1.0, u(rng), u(rng)};
        const Eigen::VectorXd psi = expand_matter_coherent(g, 2);
        const auto basis = enumerate_atom_basis(2);
        const Eigen::MatrixXd rho_m = psi * psi.transpose();
        const Eigen::Matrix3d e = u3_expectations(rho_m, basis);
        const DensityMatrix atom = one_atom_rdm(e.cast<std::complex<double>>(), 2);
        const double mi = mutual_information_one_one(
            linear_entropy(atom), linear_entropy(DensityMatrix::from_real(rho_m)));
        CHECK(mi >= -1e-10);
    }
}

TEST_CASE("simplex embedding and the inscribed circle") {
    const auto centroid = simplex_embed({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(centroid.u == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(centroid.v == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-14));
    const auto vertex = simplex_embed({1, 0, 0});
    CHECK(vertex.u == 0.0);
    CHECK(vertex.v == 0.0);

    const double s = std::sqrt(1.0 / 6.0);
    for (int k = 0; k < 64; ++k) {
        const double th = 6.283185307179586 * k / 64.0;
        const double p1 = 1.0 / 3 + s * (std::cos(th) / std::sqrt(2.0) + std::sin(th) / std::sqrt(6.0));
        const double p2 = 1.0 / 3 + s * (-std::cos(th) / std::sqrt(2.0) + std::sin(th) / std::sqrt(6.0));
        const OccupationProbabilities p{p1, p2, 1.0 - p1 - p2};
        CHECK(inscribed_circle_test(p));
        CHECK(std::abs(linear_entropy(p) - 0.5) < 1e-10);
    }

    // inside the disk the entropy exceeds 1/2; purity stays in [1/3, 1]
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double p1 = u(rng), p2 = u(rng) * (1.0 - p1);
        const OccupationProbabilities p{p1, p2, 1.0 - p1 - p2};
        const double purity = 1.0 - linear_entropy(p);
        CHECK(purity >= 1.0 / 3 - 1e-12);
        CHECK(purity <= 1.0 + 1e-12);
        if (simplex_radius2(p) < 1.0 / 6 - 1e-12) CHECK(linear_entropy(p) > 0.5 - 1e-12);
        const auto pt = simplex_embed(p);
        CHECK(pt.v >= -1e-12);  // inside the closed triangle
        CHECK(pt.v <= std::sqrt(3.0) * std::min(pt.u, 1.0 - pt.u) + 1e-12);
    }
}

TEST_CASE("non-PSD input rejected beyond the clamp") {
    Eigen::MatrixXcd m = Eigen::Vector3cd(1.2, -0.2, 0.0).asDiagonal();
    CHECK_THROWS_AS(fidelity(DensityMatrix(m), DensityMatrix(m)), std::invalid_argument);
}
