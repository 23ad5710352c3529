#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcav/hilbert.hpp"

using namespace lcav;

TEST_CASE("single-atom basis") {
    const auto b = enumerate_atom_basis(1);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == AtomBasisState{1, 0, 0});
    CHECK(b[1] == AtomBasisState{0, 1, 0});
    CHECK(b[2] == AtomBasisState{0, 0, 1});
}

TEST_CASE("basis sizes match the closed form") {
    CHECK(enumerate_atom_basis(2).size() == 6);
    CHECK(enumerate_atom_basis(4).size() == 15);
    for (int na = 1; na <= 8; ++na)
        CHECK(int(enumerate_atom_basis(na).size()) == (na + 1) * (na + 2) / 2);
}

TEST_CASE("degenerate atom count rejected") {
    CHECK_THROWS_AS(enumerate_atom_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(HilbertSpace(0, {2, 2}), std::invalid_argument);
}

TEST_CASE("occupations sum to na and order is descending-lexicographic") {
    const auto b = enumerate_atom_basis(5);
    for (const auto& s : b) CHECK(s.n1 + s.n2 + s.n3 == 5);
    for (size_t i = 1; i < b.size(); ++i) {
        const bool later = b[i].n1 < b[i - 1].n1 ||
                           (b[i].n1 == b[i - 1].n1 && b[i].n2 < b[i - 1].n2);
        CHECK(later);
    }
}

TEST_CASE("composite dimensions") {
    CHECK(HilbertSpace(2, {0, 0}).dim() == 6);
    CHECK(HilbertSpace(2, {10, 10}).dim() == 6 * 121);
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(HilbertSpace(6, {1000, 1000}), std::runtime_error);
}

TEST_CASE("index round trip is the identity") {
    const HilbertSpace s(3, {4, 3});
    for (long i = 0; i < s.dim(); ++i) {
        const auto lb = s.labels(i);
        CHECK(s.index_of(lb.nu1, lb.nu2, s.atom_index(lb.atom)) == i);
    }
}

TEST_CASE("parity labels from hand-evaluated formulas (Lambda)") {
    const HilbertSpace s(2, {2, 2}, Config::Lambda);
    // (nu1=0, nu2=0, n=(2,0,0)): M = 0, K = 2 -> both even, sector ee
    const long bare = s.index_of(0, 0, s.atom_index({2, 0, 0}));
    CHECK(s.par_m(bare) == Parity::Even);
    CHECK(s.par_k(bare) == Parity::Even);
    CHECK(sector_name(s.sector(bare)) == "ee");
    // (nu1=1, nu2=0, n=(1,0,1)): M = 1+0+1 = 2 -> even
    const long mixed = s.index_of(1, 0, s.atom_index({1, 0, 1}));
    CHECK(s.par_m(mixed) == Parity::Even);
    // K = 0 + n1 + n3 = 2 -> even
    CHECK(s.par_k(mixed) == Parity::Even);
}

TEST_CASE("four sectors partition the basis") {
    for (Config c : {Config::Xi, Config::Lambda, Config::V}) {
        const HilbertSpace s(2, {1, 1}, c);
        std::vector<char> seen(s.dim(), 0);
        long total = 0;
        for (Parity pm : {Parity::Even, Parity::Odd})
            for (Parity pk : {Parity::Even, Parity::Odd}) {
                const auto idx = s.sector_indices(pm, pk);
                total += idx.size();
                for (long i : idx) {
                    CHECK(!seen[i]);
                    seen[i] = 1;
                }
            }
        CHECK(total == 24);
    }
}

TEST_CASE("cutoff rule floors at 12") {
    CHECK(cutoff_for_amplitude(0.0) == 12);
    CHECK(cutoff_for_amplitude(2.0) == 26);
    CHECK(cutoff_for_amplitude(-2.0) == 26);
}

TEST_CASE("partial traces of a product state are rank one") {
    const HilbertSpace s(2, {2, 2});
    Eigen::VectorXd field = Eigen::VectorXd::Zero(9);
    field[4] = 1.0;  // |nu1=1, nu2=1>
    Eigen::VectorXd atom(6);
    atom << 0.5, 0.5, 0.5, 0.5, 0.0, 0.0;
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(s.dim());
    for (int f = 0; f < 9; ++f)
        for (int m = 0; m < 6; ++m) psi[f * 6 + m] = field[f] * atom[m];
    const Eigen::MatrixXd rm = matter_rdm(s, psi);
    const Eigen::MatrixXd rf = field_rdm(s, psi);
    CHECK(std::abs(rm.trace() - 1.0) < 1e-12);
    CHECK(std::abs(rf.trace() - 1.0) < 1e-12);
    CHECK((rm * rm - rm).cwiseAbs().maxCoeff() < 1e-12);  // projector
    CHECK((rf * rf - rf).cwiseAbs().maxCoeff() < 1e-12);
}
