#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcav/meanfield.hpp"
#include "lcav/operators.hpp"
#include "lcav/sas.hpp"

using namespace lcav;

namespace {

ModelParams lifted_params() {
    // nonzero omega1 so diagonal checks are nontrivial
    ModelParams p;
    p.omega1 = 0.3;
    p.omega2 = 0.5;
    p.omega3 = 1.2;
    p.Omega1 = 1.0;
    p.Omega2 = 0.8;
    return p;
}

}  // namespace

TEST_CASE("single-atom generators are elementary matrices") {
    const auto basis = enumerate_atom_basis(1);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            const Eigen::MatrixXd a = atomic_generator(basis, j, k);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    CHECK(a(r, c) == ((r == j - 1 && c == k - 1) ? 1.0 : 0.0));
        }
}

TEST_CASE("weight operator counts occupation") {
    const auto basis = enumerate_atom_basis(2);
    const Eigen::MatrixXd a11 = atomic_generator(basis, 1, 1);
    const HilbertSpace s(2, {0, 0});
    const int i = s.atom_index({2, 0, 0});
    CHECK(a11(i, i) == 2.0);
}

TEST_CASE("collective generator acts blockwise over the modes") {
    const HilbertSpace s(2, {1, 1});
    const Eigen::MatrixXcd a13 = collective_generator(s, 1, 3).dense();
    const Eigen::MatrixXd block = atomic_generator(s.atom_basis(), 1, 3);
    for (int nu1 = 0; nu1 <= 1; ++nu1)
        for (int nu2 = 0; nu2 <= 1; ++nu2)
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c)
                    CHECK(a13(s.index_of(nu1, nu2, r), s.index_of(nu1, nu2, c)).real() ==
                          block(r, c));
    // no elements between different Fock states
    CHECK(std::abs(a13(s.index_of(0, 0, 0), s.index_of(1, 0, 2))) == 0.0);
    const Eigen::MatrixXcd a11 = collective_generator(s, 1, 1).dense();
    const long bare = s.index_of(1, 1, s.atom_index({2, 0, 0}));
    CHECK(a11(bare, bare).real() == 2.0);
}

TEST_CASE("commutator [A12, A21] = A11 - A22 for three atoms") {
    const auto basis = enumerate_atom_basis(3);
    const Eigen::MatrixXd lhs =
        atomic_generator(basis, 1, 2) * atomic_generator(basis, 2, 1) -
        atomic_generator(basis, 2, 1) * atomic_generator(basis, 1, 2);
    const Eigen::MatrixXd rhs =
        atomic_generator(basis, 1, 1) - atomic_generator(basis, 2, 2);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("full u(3) commutator table") {
    for (int na : {1, 2, 3}) {
        const auto basis = enumerate_atom_basis(na);
        for (int l = 1; l <= 3; ++l)
            for (int m = 1; m <= 3; ++m)
                for (int k = 1; k <= 3; ++k)
                    for (int j = 1; j <= 3; ++j) {
                        Eigen::MatrixXd r =
                            atomic_generator(basis, l, m) * atomic_generator(basis, k, j) -
                            atomic_generator(basis, k, j) * atomic_generator(basis, l, m);
                        if (m == k) r -= atomic_generator(basis, l, j);
                        if (j == l) r += atomic_generator(basis, k, m);
                        CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
                    }
    }
}

TEST_CASE("casimir eigenvalues") {
    {
        const HilbertSpace s(2, {0, 0});
        const auto basis = s.atom_basis();
        Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(6, 6);
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                c2 += atomic_generator(basis, j, k) * atomic_generator(basis, k, j);
        for (int i = 0; i < 6; ++i) CHECK(c2(i, i) == doctest::Approx(8.0).epsilon(1e-14));
        const auto [r1, r2] = casimir_check(s);
        CHECK(r1 < 1e-12);
        CHECK(r2 < 1e-12);
    }
    {
        const auto [r1, r2] = casimir_check(HilbertSpace(1, {0, 0}));
        CHECK(r1 < 1e-12);
        CHECK(r2 < 1e-12);  // C2 = 1 * (1 + 2) = 3
    }
}

TEST_CASE("boson ladder operators") {
    const HilbertSpace s(1, {5, 3});
    const auto [a1, a1d] = boson_ops(s, 1);
    const Eigen::MatrixXcd a = a1.dense(), ad = a1d.dense();

    // a |nu=1> = |0> with amplitude 1
    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(s.dim());
    one[s.index_of(1, 0, 0)] = 1.0;
    Eigen::VectorXcd res = a * one;
    CHECK(std::abs(res[s.index_of(0, 0, 0)] - 1.0) < 1e-14);
    CHECK((res.squaredNorm() - 1.0) < 1e-14);

    // a^dag a diagonal with eigenvalues 0..nmax
    const Eigen::MatrixXcd num = ad * a;
    for (long i = 0; i < s.dim(); ++i)
        CHECK(std::abs(num(i, i) - double(s.labels(i).nu1)) < 1e-13);

    // [a, a^dag] = 1 away from the truncation edge
    const Eigen::MatrixXcd comm = a * ad - ad * a;
    for (long i = 0; i < s.dim(); ++i) {
        const double expected = s.labels(i).nu1 == 5 ? -5.0 : 1.0;
        CHECK(std::abs(comm(i, i) - expected) < 1e-13);
    }
}

TEST_CASE("hamiltonian is hermitian and block diagonal over parity sectors") {
    for (Config c : {Config::Xi, Config::Lambda, Config::V}) {
        ModelParams p = lifted_params();
        p.config = c;
        p.na = 2;
        p.mu_a = 0.7;
        p.mu_b = 0.4;
        const HilbertSpace s(2, {3, 3}, c);
        const SparseOperator h = build_hamiltonian(s, p);
        CHECK(h.hermiticity_residual() < 1e-14);
        for (const auto& e : h.entries) {
            CHECK(s.par_m(e.row) == s.par_m(e.col));
            CHECK(s.par_k(e.row) == s.par_k(e.col));
        }
    }
}

TEST_CASE("bare ground eigenvalue at zero coupling") {
    ModelParams p = lifted_params();
    p.na = 2;
    const HilbertSpace s(2, {2, 2});
    const Eigen::MatrixXcd h = build_hamiltonian(s, p).dense();
    const long bare = s.index_of(0, 0, s.atom_index({2, 0, 0}));
    CHECK(std::abs(h(bare, bare).real() - 2 * p.omega1) < 1e-14);
    CHECK(h.col(bare).cwiseAbs().sum() == doctest::Approx(2 * p.omega1).epsilon(1e-13));
}

TEST_CASE("single atom with one coupling reduces to the two-level Rabi model") {
    ModelParams p = lifted_params();
    p.config = Config::Lambda;
    p.na = 1;
    p.mu_a = 0.6;  // couples levels 1 and 3 through mode 1
    p.mu_b = 0.0;
    const int nmax = 6;
    const HilbertSpace s(1, {nmax, 0});
    const Eigen::MatrixXcd h = build_hamiltonian(s, p).dense();

    // level 2 decouples: no off-diagonal elements into its rows
    for (long i = 0; i < s.dim(); ++i) {
        if (s.labels(i).atom.n2 != 1) continue;
        for (long j = 0; j < s.dim(); ++j)
            if (i != j) CHECK(std::abs(h(i, j)) < 1e-15);
    }

    // the {1,3} x mode-1 block equals the hand-built quantum Rabi matrix
    const int nb = 2 * (nmax + 1);
    Eigen::MatrixXd rabi = Eigen::MatrixXd::Zero(nb, nb);
    const auto id = [&](int nu, int lvl13) { return 2 * nu + lvl13; };
    for (int nu = 0; nu <= nmax; ++nu) {
        rabi(id(nu, 0), id(nu, 0)) = p.Omega1 * nu + p.omega1;
        rabi(id(nu, 1), id(nu, 1)) = p.Omega1 * nu + p.omega3;
        for (int dnu : {-1, +1}) {
            const int nu2 = nu + dnu;
            if (nu2 < 0 || nu2 > nmax) continue;
            const double amp = -p.mu_a * std::sqrt(double(std::max(nu, nu2)));
            rabi(id(nu2, 0), id(nu, 1)) += amp;
            rabi(id(nu2, 1), id(nu, 0)) += amp;
        }
    }
    for (int nu = 0; nu <= nmax; ++nu)
        for (int nu2 = 0; nu2 <= nmax; ++nu2)
            for (int l = 0; l < 2; ++l)
                for (int l2 = 0; l2 < 2; ++l2) {
                    const long i = s.index_of(nu, 0, l == 0 ? s.atom_index({1, 0, 0})
                                                            : s.atom_index({0, 0, 1}));
                    const long j = s.index_of(nu2, 0, l2 == 0 ? s.atom_index({1, 0, 0})
                                                              : s.atom_index({0, 0, 1}));
                    CHECK(std::abs(h(i, j).real() - rabi(id(nu, l), id(nu2, l2))) < 1e-13);
                }
}

TEST_CASE("coherent product expectation matches the energy surface") {
    ModelParams p = preset("fig2");
    p.config = Config::Lambda;
    p.na = 2;
    p = with_couplings(p, {1.6, 0.9});

    TrialConfiguration t;
    t.r1 = 0.8;
    t.r2 = 0.35;
    t.rho2 = 0.35;
    t.rho3 = 0.6;

    const HilbertSpace s(2, {40, 40});
    const double sqn = std::sqrt(2.0);
    const Eigen::VectorXd f1 = expand_field_coherent(sqn * t.r1, 40);
    const Eigen::VectorXd f2 = expand_field_coherent(sqn * t.r2, 40);
    const Eigen::VectorXd mat = expand_matter_coherent(t.gamma(), 2);
    Eigen::VectorXd psi(s.dim());
    long idx = 0;
    for (int n1 = 0; n1 <= 40; ++n1)
        for (int n2 = 0; n2 <= 40; ++n2)
            for (int m = 0; m < 6; ++m, ++idx) psi[idx] = f1[n1] * f2[n2] * mat[m];

    const HamiltonianParts parts = hamiltonian_parts(s, p);
    const double numeric = parts.energy(psi, p.mu_a, p.mu_b);
    CHECK(std::abs(numeric - 2.0 * energy_surface(p, t)) < 1e-6);
}

TEST_CASE("parity operators square to identity and commute with H") {
    for (Config c : {Config::Xi, Config::Lambda, Config::V}) {
        ModelParams p = lifted_params();
        p.config = c;
        p.na = 2;
        p.mu_a = 0.9;
        p.mu_b = 0.5;
        const HilbertSpace s(2, {3, 3}, c);
        const Eigen::MatrixXcd h = build_hamiltonian(s, p).dense();
        for (ParityOp which : {ParityOp::Pi1, ParityOp::Pi2}) {
            const Eigen::MatrixXcd pi = parity_operator(s, which).dense();
            CHECK((pi * pi - Eigen::MatrixXcd::Identity(s.dim(), s.dim()))
                      .cwiseAbs()
                      .maxCoeff() < 1e-14);
            CHECK((h * pi - pi * h).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("parity eigenvalue example") {
    const HilbertSpace s(2, {2, 2}, Config::Lambda);
    const long i = s.index_of(1, 0, s.atom_index({1, 0, 1}));
    const Eigen::MatrixXcd pi1 = parity_operator(s, ParityOp::Pi1).dense();
    CHECK(std::abs(pi1(i, i).real() - 1.0) < 1e-15);  // (-1)^{1+0+1} = +1
}

TEST_CASE("config mismatch rejected") {
    ModelParams p = lifted_params();
    p.config = Config::Xi;
    const HilbertSpace s(2, {2, 2}, Config::Lambda);
    p.na = 2;
    CHECK_THROWS_AS(build_hamiltonian(s, p), std::invalid_argument);
}
