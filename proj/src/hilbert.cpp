#include "lcav/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace lcav {

int AtomBasisState::occ(int level) const {
    switch (level) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
    }
    throw std::out_of_range("atomic level must be 1..3");
}

std::vector<AtomBasisState> enumerate_atom_basis(int na) {
    if (na < 1) throw std::invalid_argument("na must be at least 1");
    std::vector<AtomBasisState> basis;
    basis.reserve(atom_basis_dim(na));
    for (int n1 = na; n1 >= 0; --n1)
        for (int n2 = na - n1; n2 >= 0; --n2)
            basis.push_back({n1, n2, na - n1 - n2});
    return basis;
}

int atom_basis_dim(int na) { return (na + 1) * (na + 2) / 2; }

std::string sector_name(const ParitySector& s) {
    std::string out;
    out += (s.par_m == Parity::Even) ? 'e' : 'o';
    out += (s.par_k == Parity::Even) ? 'e' : 'o';
    return out;
}

ParitySector sector_from_name(const std::string& name) {
    if (name.size() != 2 || (name[0] != 'e' && name[0] != 'o') ||
        (name[1] != 'e' && name[1] != 'o'))
        throw std::invalid_argument("sector must be one of ee, eo, oe, oo");
    return {name[0] == 'e' ? Parity::Even : Parity::Odd,
            name[1] == 'e' ? Parity::Even : Parity::Odd};
}

HilbertSpace::HilbertSpace(int na, FockCutoffs cutoffs, Config config)
    : na_(na), cutoffs_(cutoffs), config_(config) {
    if (na < 1) throw std::invalid_argument("na must be at least 1");
    if (cutoffs.nmax1 < 0 || cutoffs.nmax2 < 0)
        throw std::invalid_argument("Fock cutoffs must be nonnegative");

    atom_basis_ = enumerate_atom_basis(na);
    const long dm = static_cast<long>(atom_basis_.size());
    const long l1 = cutoffs.nmax1 + 1, l2 = cutoffs.nmax2 + 1;
    dim_ = dm * l1 * l2;
    if (dim_ > 10'000'000L)
        throw std::runtime_error("basis dimension exceeds 1e7 guard");

    atom_index_.assign(static_cast<size_t>((na + 1) * (na + 1)), -1);
    for (int i = 0; i < dm; ++i) {
        const auto& s = atom_basis_[i];
        atom_index_[static_cast<size_t>(s.n1 * (na + 1) + s.n2)] = i;
    }

    const auto scheme = coupling_scheme(config);
    par_m_.resize(static_cast<size_t>(dim_));
    par_k_.resize(static_cast<size_t>(dim_));
    for (long idx = 0; idx < dim_; ++idx) {
        const auto lb = labels(idx);
        const int m = lb.nu1 + lb.nu2 + lb.atom.occ(scheme.shared_level);
        const int k = lb.nu2 + lb.atom.occ(scheme.mode1_pair[0]) +
                      lb.atom.occ(scheme.mode1_pair[1]);
        par_m_[static_cast<size_t>(idx)] = static_cast<std::uint8_t>(m & 1);
        par_k_[static_cast<size_t>(idx)] = static_cast<std::uint8_t>(k & 1);
    }
}

int HilbertSpace::atom_index(const AtomBasisState& s) const {
    if (s.n1 < 0 || s.n2 < 0 || s.n3 < 0 || s.n1 + s.n2 + s.n3 != na_)
        throw std::out_of_range("atomic occupations do not sum to na");
    return atom_index_[static_cast<size_t>(s.n1 * (na_ + 1) + s.n2)];
}

long HilbertSpace::index_of(int nu1, int nu2, int atom_idx) const {
    if (nu1 < 0 || nu1 > cutoffs_.nmax1 || nu2 < 0 || nu2 > cutoffs_.nmax2 ||
        atom_idx < 0 || atom_idx >= atom_dim())
        throw std::out_of_range("basis labels out of range");
    const long l2 = cutoffs_.nmax2 + 1;
    return (static_cast<long>(nu1) * l2 + nu2) * atom_dim() + atom_idx;
}

BasisLabels HilbertSpace::labels(long index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("basis index out of range");
    const long dm = atom_dim();
    const long l2 = cutoffs_.nmax2 + 1;
    const int atom = static_cast<int>(index % dm);
    const long f = index / dm;
    return {static_cast<int>(f / l2), static_cast<int>(f % l2), atom_basis_[atom]};
}

std::vector<long> HilbertSpace::sector_indices(Parity pm, Parity pk) const {
    std::vector<long> out;
    for (long i = 0; i < dim_; ++i)
        if (par_m(i) == pm && par_k(i) == pk) out.push_back(i);
    return out;
}

int cutoff_for_amplitude(double alpha) {
    const double a = std::abs(alpha);
    const int n = static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
    return std::max(12, n);
}

Eigen::MatrixXd matter_rdm(const HilbertSpace& space, const Eigen::VectorXd& state) {
    if (state.size() != space.dim())
        throw std::invalid_argument("state dimension mismatch");
    const int dm = space.atom_dim();
    const long nblocks = space.dim() / dm;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dm, dm);
    for (long b = 0; b < nblocks; ++b)
        rho.noalias() += state.segment(b * dm, dm) * state.segment(b * dm, dm).transpose();
    return rho;
}

Eigen::MatrixXd field_rdm(const HilbertSpace& space, const Eigen::VectorXd& state) {
    if (state.size() != space.dim())
        throw std::invalid_argument("state dimension mismatch");
    const int dm = space.atom_dim();
    const long nblocks = space.dim() / dm;
    Eigen::Map<const Eigen::MatrixXd> psi(state.data(), dm, nblocks);
    return psi.transpose() * psi;
}

}  // namespace lcav
