#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lcav/model.hpp"

namespace lcav {

// One totally symmetric atomic basis state: occupation counts of the three
// levels, n1 + n2 + n3 = na.
struct AtomBasisState {
    int n1 = 0, n2 = 0, n3 = 0;

    int occ(int level) const;
    bool operator==(const AtomBasisState&) const = default;
};

// Ordered lexicographically with n1 descending, then n2 descending.
std::vector<AtomBasisState> enumerate_atom_basis(int na);

// d_M = (na+1)(na+2)/2
int atom_basis_dim(int na);

struct FockCutoffs {
    int nmax1 = 12;
    int nmax2 = 12;
};

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

struct ParitySector {
    Parity par_m = Parity::Even;
    Parity par_k = Parity::Even;
    bool operator==(const ParitySector&) const = default;
};

std::string sector_name(const ParitySector&);          // "ee", "eo", "oe", "oo"
ParitySector sector_from_name(const std::string&);

struct BasisLabels {
    int nu1 = 0, nu2 = 0;
    AtomBasisState atom;
};

// Composite basis |nu1, nu2> (x) |n1 n2 n3>, flat index row-major with nu1
// outer, nu2 middle, atom inner.  Parity labels come from the two weighted
// parities conserved by the configuration's interaction: a term that flips
// nu_s and moves one atom between levels j and k preserves
// sum_s c_s nu_s + sum_k d_k n_k (mod 2) iff c_s + d_j + d_k is even for
// both couplings.  Choosing c = (1,1) with minimal d gives
//   M = nu1 + nu2 + n_shared,
// and c = (0,1) gives
//   K = nu2 + n_j + n_k  with (j,k) the mode-1 pair.
class HilbertSpace {
public:
    HilbertSpace(int na, FockCutoffs cutoffs, Config config = Config::Lambda);

    int na() const { return na_; }
    FockCutoffs cutoffs() const { return cutoffs_; }
    Config config() const { return config_; }
    long dim() const { return dim_; }
    int atom_dim() const { return static_cast<int>(atom_basis_.size()); }
    const std::vector<AtomBasisState>& atom_basis() const { return atom_basis_; }
    int atom_index(const AtomBasisState& s) const;

    long index_of(int nu1, int nu2, int atom_idx) const;
    BasisLabels labels(long index) const;

    Parity par_m(long index) const { return static_cast<Parity>(par_m_[index]); }
    Parity par_k(long index) const { return static_cast<Parity>(par_k_[index]); }
    ParitySector sector(long index) const { return {par_m(index), par_k(index)}; }

    std::vector<long> sector_indices(Parity par_m, Parity par_k) const;
    std::vector<long> sector_indices(const ParitySector& s) const {
        return sector_indices(s.par_m, s.par_k);
    }

private:
    int na_;
    FockCutoffs cutoffs_;
    Config config_;
    long dim_;
    std::vector<AtomBasisState> atom_basis_;
    std::vector<int> atom_index_;          // dense lookup keyed by (n1, n2)
    std::vector<std::uint8_t> par_m_, par_k_;
};

// Truncation rule nmax = max(12, ceil(a^2 + 6a + 10)) for coherent
// amplitude a = |alpha|; covers the Poissonian tail to ~1e-8 weight.
int cutoff_for_amplitude(double alpha);

// Partial traces of a pure state over the composite basis.
Eigen::MatrixXd matter_rdm(const HilbertSpace&, const Eigen::VectorXd& state);
Eigen::MatrixXd field_rdm(const HilbertSpace&, const Eigen::VectorXd& state);

}  // namespace lcav
