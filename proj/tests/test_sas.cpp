#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lcav/exact.hpp"
#include "lcav/sas.hpp"

using namespace lcav;

namespace {

ModelParams lambda_at(double xa, double xb, int na = 2) {
    ModelParams p = preset("fig2");
    p.config = Config::Lambda;
    p.na = na;
    return with_couplings(p, {xa, xb});
}

constexpr ParitySector kEE{Parity::Even, Parity::Even};
constexpr ParitySector kOO{Parity::Odd, Parity::Odd};

}  // namespace

TEST_CASE("matter expansion: frozen multinomial values") {
    {
        const Eigen::VectorXd a = expand_matter_coherent({1, 0, 0}, 2);
        CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-15));  // (2,0,0)
        CHECK(a.tail(5).cwiseAbs().maxCoeff() == 0.0);
    }
    {
        // gamma = (1,0,1): weights 1/2, 1/sqrt2, 1/2 on (2,0,0), (1,0,1), (0,0,2)
        const HilbertSpace s(2, {0, 0});
        const Eigen::VectorXd a = expand_matter_coherent({1, 0, 1}, 2);
        CHECK(a[s.atom_index({2, 0, 0})] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(a[s.atom_index({1, 0, 1})] ==
              doctest::Approx(0.707106781186548).epsilon(1e-14));
        CHECK(a[s.atom_index({0, 0, 2})] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(expand_matter_coherent({0, 0, 0}, 2), std::invalid_argument);
}

TEST_CASE("matter overlap power law") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const int na = 1 + trial % 5;
        const std::array<double, 3> g1{1.0, u(rng), u(rng)}, g2{1.0, u(rng), u(rng)};
        const double dot = g1[0] * g2[0] + g1[1] * g2[1] + g1[2] * g2[2];
        const double n1 = std::sqrt(g1[0] * g1[0] + g1[1] * g1[1] + g1[2] * g1[2]);
        const double n2 = std::sqrt(g2[0] * g2[0] + g2[1] * g2[1] + g2[2] * g2[2]);
        const double analytic = std::pow(dot / (n1 * n2), na);
        const double numeric =
            expand_matter_coherent(g1, na).dot(expand_matter_coherent(g2, na));
        CHECK(std::abs(analytic - numeric) < 1e-12);
    }
}

TEST_CASE("field expansion basics") {
    const Eigen::VectorXd vac = expand_field_coherent(0.0, 8);
    CHECK(vac[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(vac.tail(8).cwiseAbs().maxCoeff() == 0.0);

    // Gaussian overlap oracle and Poisson mean
    for (double a : {0.4, 1.1, 2.0}) {
        for (double b : {0.0, 0.9, 1.7}) {
            const int n = cutoff_for_amplitude(std::max(a, b));
            const double overlap =
                expand_field_coherent(a, n).dot(expand_field_coherent(b, n));
            CHECK(std::abs(overlap - std::exp(-0.5 * (a - b) * (a - b))) < 1e-8);
        }
        const int n = cutoff_for_amplitude(a);
        const Eigen::VectorXd v = expand_field_coherent(a, n);
        double mean = 0.0;
        for (int k = 0; k <= n; ++k) mean += k * v[k] * v[k];
        CHECK(std::abs(mean - a * a) < 1e-8);
    }

    double loss = 0.0;
    CHECK_THROWS_AS(expand_field_coherent(4.0, 6, &loss), std::runtime_error);
}

TEST_CASE("zero-coupling SAS state in ee is the bare ground state") {
    const HilbertSpace s(2, {4, 4});
    const TrialConfiguration t;  // all zeros, gamma = (1,0,0)
    const SasState st = build_sas_state(s, t, kEE);
    const long bare = s.index_of(0, 0, s.atom_index({2, 0, 0}));
    CHECK(std::abs(st.amplitudes[bare]) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(st.amplitudes.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("projection annihilates the bare trial in the oo sector") {
    const HilbertSpace s(2, {4, 4});
    CHECK_THROWS_AS(build_sas_state(s, TrialConfiguration{}, kOO), zero_norm_error);
}

TEST_CASE("projection is specific to the Lambda configuration") {
    const HilbertSpace s(2, {4, 4}, Config::Xi);
    CHECK_THROWS_AS(build_sas_state(s, TrialConfiguration{}, kEE), std::invalid_argument);
}

TEST_CASE("SAS states are parity eigenstates of their sector") {
    const HilbertSpace s(2, {8, 8});
    TrialConfiguration t;
    t.r1 = 0.5;
    t.r2 = 0.3;
    t.rho2 = 0.4;
    t.rho3 = 0.7;
    const Eigen::SparseMatrix<double> pi1 = parity_operator(s, ParityOp::Pi1).real_sparse();
    const Eigen::SparseMatrix<double> pi2 = parity_operator(s, ParityOp::Pi2).real_sparse();
    for (Parity pm : {Parity::Even, Parity::Odd})
        for (Parity pk : {Parity::Even, Parity::Odd}) {
            const SasState st = build_sas_state(s, t, {pm, pk});
            const double s1 = pm == Parity::Even ? 1.0 : -1.0;
            const double s2 = pk == Parity::Even ? 1.0 : -1.0;
            CHECK((pi1 * st.amplitudes - s1 * st.amplitudes).norm() < 1e-12);
            CHECK((pi2 * st.amplitudes - s2 * st.amplitudes).norm() < 1e-12);
        }
}

TEST_CASE("four-term sum equals the projector restriction of the product state") {
    const HilbertSpace s(2, {8, 8});
    TrialConfiguration t;
    t.r1 = 0.45;
    t.r2 = 0.25;
    t.rho2 = 0.3;
    t.rho3 = 0.9;

    // product state rebuilt directly
    const double sqn = std::sqrt(2.0);
    const Eigen::VectorXd f1 = expand_field_coherent(sqn * t.r1, 8);
    const Eigen::VectorXd f2 = expand_field_coherent(sqn * t.r2, 8);
    const Eigen::VectorXd mat = expand_matter_coherent(t.gamma(), 2);
    Eigen::VectorXd product(s.dim());
    for (long i = 0; i < s.dim(); ++i) {
        const auto lb = s.labels(i);
        product[i] = f1[lb.nu1] * f2[lb.nu2] * mat[s.atom_index(lb.atom)];
    }

    const SasState st = build_sas_state(s, t, kEE);
    Eigen::VectorXd projected = Eigen::VectorXd::Zero(s.dim());
    for (long i : s.sector_indices(kEE)) projected[i] = product[i];
    projected.normalize();
    CHECK((projected - st.amplitudes).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("sector energy at zero coupling is the bare energy per atom") {
    ModelParams p = preset("text-s2");
    p.config = Config::Lambda;
    p.na = 2;
    const HilbertSpace s(2, {4, 4});
    CHECK(sas_energy(s, p, TrialConfiguration{}, kEE) ==
          doctest::Approx(p.omega1).epsilon(1e-13));
}

TEST_CASE("variational bound against the sector-restricted exact ground") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const ModelParams p = lambda_at(u(rng), u(rng));
        const HilbertSpace s(2, {14, 14});
        TrialConfiguration t;
        t.r1 = u(rng) / 3.0;
        t.r2 = u(rng) / 3.0;
        t.rho2 = u(rng) / 3.0;
        t.rho3 = u(rng) / 3.0;
        const double e_sas = sas_energy(s, p, t, kEE);
        const double e_exact = ground_state(s, p, kEE).energy / 2.0;
        CHECK(e_sas >= e_exact - 1e-10);
    }
}

TEST_CASE("deep collective SAS energy approaches the mean-field value") {
    const ModelParams p = lambda_at(3.0, 0.0);
    const HilbertSpace space(2, {cutoff_for_amplitude(2.8), 12});
    const SasMinimum m = minimize_sas(space, p, kEE);
    const double e_mf = region_energy(p, RegionLabel::S13);
    CHECK(std::abs(m.energy_per_atom - e_mf) / std::abs(e_mf) < 0.02);
}

TEST_CASE("minimum at zero coupling is the bare state") {
    ModelParams p = preset("text-s2");
    p.config = Config::Lambda;
    p.na = 2;
    const HilbertSpace space(2, {12, 12});
    const SasMinimum m = minimize_sas(space, p, kEE);
    CHECK(m.energy_per_atom == doctest::Approx(p.omega1).epsilon(1e-9));
    CHECK(m.trial.r1 < 1e-4);
    CHECK(m.trial.r2 < 1e-4);
}

TEST_CASE("S13-dominated minimizer structure") {
    // the weak mode-2 coupling leaves a small finite-size dressing on
    // (r2, rho2); the state stays S13-like by an order of magnitude
    const ModelParams p = lambda_at(2.0, 0.1);
    const HilbertSpace space(2, {cutoff_for_amplitude(2.2), 12});
    const SasMinimum m = minimize_sas(space, p, kEE);
    CHECK(m.trial.r1 > 0.5);
    CHECK(m.trial.rho3 > 0.3);
    CHECK(m.trial.r2 < 0.1 * m.trial.r1);
    CHECK(m.trial.rho2 < 0.15 * m.trial.rho3);
}

TEST_CASE("projection after variation never exceeds the coherent minimum") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const ModelParams p = lambda_at(u(rng), u(rng));
        const double sqn = std::sqrt(2.0);
        const auto mf = ground_solution(p);
        const HilbertSpace space(2, {cutoff_for_amplitude(sqn * mf.trial.r1 + 0.75),
                                     cutoff_for_amplitude(sqn * mf.trial.r2 + 0.75)});
        const SasMinimum m = minimize_sas(space, p, kEE);
        CHECK(m.energy_per_atom <= mf.energy_per_atom + 1e-9);
    }
}

TEST_CASE("matter density matrix of SAS states") {
    const HilbertSpace s(2, {8, 8});

    // zero-coupling limit: rank-1, vanishing linear entropy
    const SasState bare = build_sas_state(s, TrialConfiguration{}, kEE);
    const Eigen::MatrixXd r0 = sas_matter_rdm(s, bare);
    CHECK(std::abs(r0.trace() - 1.0) < 1e-12);
    CHECK((r0 * r0 - r0).cwiseAbs().maxCoeff() < 1e-12);

    // generic state: partial trace against a direct double-loop oracle
    TrialConfiguration t;
    t.r1 = 0.5;
    t.r2 = 0.35;
    t.rho2 = 0.2;
    t.rho3 = 0.8;
    const SasState st = build_sas_state(s, t, kEE);
    const Eigen::MatrixXd rho = sas_matter_rdm(s, st);
    Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(6, 6);
    for (long i = 0; i < s.dim(); ++i)
        for (long j = 0; j < s.dim(); ++j) {
            const auto li = s.labels(i), lj = s.labels(j);
            if (li.nu1 != lj.nu1 || li.nu2 != lj.nu2) continue;
            oracle(s.atom_index(li.atom), s.atom_index(lj.atom)) +=
                st.amplitudes[i] * st.amplitudes[j];
        }
    CHECK((rho - oracle).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
}

TEST_CASE("ee is the lowest sector at ground for even atom numbers") {
    std::vector<std::tuple<int, double, double>> pts = {
        {2, 0.5, 0.5}, {2, 1.5, 0.5}, {2, 0.5, 2.0}, {2, 2.0, 2.0}, {4, 1.5, 0.5}};
    for (const auto& [na, xa, xb] : pts) {
        const ModelParams p = lambda_at(xa, xb, na);
        const auto mf = ground_solution(p);
        const double sqn = std::sqrt(double(na));
        const HilbertSpace space(na, {cutoff_for_amplitude(sqn * mf.trial.r1 + 0.75),
                                      cutoff_for_amplitude(sqn * mf.trial.r2 + 0.75)});
        double best_other = 1e300;
        for (Parity pm : {Parity::Even, Parity::Odd})
            for (Parity pk : {Parity::Even, Parity::Odd}) {
                if (pm == Parity::Even && pk == Parity::Even) continue;
                try {
                    best_other = std::min(
                        best_other, minimize_sas(space, p, {pm, pk}).energy_per_atom);
                } catch (const zero_norm_error&) {
                }
            }
        const double e_ee = minimize_sas(space, p, kEE).energy_per_atom;
        CHECK(e_ee <= best_other + 1e-10);
    }
}
