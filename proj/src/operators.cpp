#include "lcav/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace lcav {

namespace {

// Occupation lookup for a symmetric atomic basis.
class AtomIndex {
public:
    explicit AtomIndex(const std::vector<AtomBasisState>& basis) {
        na_ = basis.front().n1 + basis.front().n2 + basis.front().n3;
        table_.assign(static_cast<size_t>((na_ + 1) * (na_ + 1)), -1);
        for (size_t i = 0; i < basis.size(); ++i)
            table_[key(basis[i].n1, basis[i].n2)] = static_cast<int>(i);
    }
    int operator()(int n1, int n2, int n3) const {
        if (n1 < 0 || n2 < 0 || n3 < 0) return -1;
        return table_[key(n1, n2)];
    }

private:
    size_t key(int n1, int n2) const { return static_cast<size_t>(n1 * (na_ + 1) + n2); }
    int na_ = 0;
    std::vector<int> table_;
};

void check_level(int j) {
    if (j < 1 || j > 3) throw std::out_of_range("level index must be 1..3");
}

// column-state shifts for A_jk = b_j^dag b_k: n -> n + e_j - e_k
AtomBasisState shifted(const AtomBasisState& s, int j, int k) {
    AtomBasisState t = s;
    int* n[3] = {&t.n1, &t.n2, &t.n3};
    ++*n[j - 1];
    --*n[k - 1];
    return t;
}

}  // namespace

Eigen::MatrixXd atomic_generator(const std::vector<AtomBasisState>& basis, int j, int k) {
    check_level(j);
    check_level(k);
    const AtomIndex index(basis);
    const int dm = static_cast<int>(basis.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dm, dm);
    for (int col = 0; col < dm; ++col) {
        const auto& s = basis[col];
        if (j == k) {
            a(col, col) = s.occ(k);
            continue;
        }
        if (s.occ(k) == 0) continue;
        const auto t = shifted(s, j, k);
        const int row = index(t.n1, t.n2, t.n3);
        a(row, col) = std::sqrt(double(s.occ(k)) * double(s.occ(j) + 1));
    }
    return a;
}

SparseOperator collective_generator(const HilbertSpace& space, int j, int k) {
    const Eigen::MatrixXd block = atomic_generator(space.atom_basis(), j, k);
    const int dm = space.atom_dim();
    const long nblocks = space.dim() / dm;
    SparseOperator op(space.dim());
    for (long b = 0; b < nblocks; ++b)
        for (int c = 0; c < dm; ++c)
            for (int r = 0; r < dm; ++r)
                if (block(r, c) != 0.0) op.add(b * dm + r, b * dm + c, block(r, c));
    return op;
}

std::pair<SparseOperator, SparseOperator> boson_ops(const HilbertSpace& space, int mode) {
    if (mode != 1 && mode != 2) throw std::out_of_range("field mode must be 1 or 2");
    SparseOperator a(space.dim()), adag(space.dim());
    for (long idx = 0; idx < space.dim(); ++idx) {
        const auto lb = space.labels(idx);
        const int nu = (mode == 1) ? lb.nu1 : lb.nu2;
        const int atom = space.atom_index(lb.atom);
        if (nu > 0) {
            const long row = (mode == 1) ? space.index_of(lb.nu1 - 1, lb.nu2, atom)
                                         : space.index_of(lb.nu1, lb.nu2 - 1, atom);
            a.add(row, idx, std::sqrt(double(nu)));
            adag.add(idx, row, std::sqrt(double(nu)));
        }
    }
    return {std::move(a), std::move(adag)};
}

namespace {

// Appends the entries of -(mu/sqrt(na)) (A_jk + A_kj)(a_s + a_s^dag) for
// one column of the composite basis.
void add_interaction_column(SparseOperator& op, const HilbertSpace& space,
                            const BasisLabels& lb, long col, int j, int k, int mode,
                            double prefactor, const AtomIndex& index) {
    if (prefactor == 0.0) return;
    const int nu = (mode == 1) ? lb.nu1 : lb.nu2;
    const int nmax = (mode == 1) ? space.cutoffs().nmax1 : space.cutoffs().nmax2;

    // (atom row index, matrix element) for A_jk + A_kj acting on lb.atom
    std::pair<int, double> hops[2];
    int nhops = 0;
    for (auto [to, from] : {std::pair{j, k}, std::pair{k, j}}) {
        if (lb.atom.occ(from) == 0) continue;
        const auto t = shifted(lb.atom, to, from);
        const double amp =
            std::sqrt(double(lb.atom.occ(from)) * double(lb.atom.occ(to) + 1));
        hops[nhops++] = {index(t.n1, t.n2, t.n3), amp};
    }

    for (int h = 0; h < nhops; ++h) {
        const auto [atom_row, amp] = hops[h];
        if (nu + 1 <= nmax) {
            const long row = (mode == 1) ? space.index_of(lb.nu1 + 1, lb.nu2, atom_row)
                                         : space.index_of(lb.nu1, lb.nu2 + 1, atom_row);
            op.add(row, col, prefactor * amp * std::sqrt(double(nu + 1)));
        }
        if (nu > 0) {
            const long row = (mode == 1) ? space.index_of(lb.nu1 - 1, lb.nu2, atom_row)
                                         : space.index_of(lb.nu1, lb.nu2 - 1, atom_row);
            op.add(row, col, prefactor * amp * std::sqrt(double(nu)));
        }
    }
}

}  // namespace

SparseOperator build_hamiltonian(const HilbertSpace& space, const ModelParams& params) {
    params.validate();
    if (params.na != space.na())
        throw std::invalid_argument("params.na does not match the Hilbert space");
    if (params.config != space.config())
        throw std::invalid_argument("params.config does not match the Hilbert space");

    const auto scheme = coupling_scheme(params.config);
    const AtomIndex index(space.atom_basis());
    const double pref_a = -params.mu_a / std::sqrt(double(params.na));
    const double pref_b = -params.mu_b / std::sqrt(double(params.na));

    SparseOperator h(space.dim());
    for (long col = 0; col < space.dim(); ++col) {
        const auto lb = space.labels(col);
        const double diag = params.Omega1 * lb.nu1 + params.Omega2 * lb.nu2 +
                            params.omega1 * lb.atom.n1 + params.omega2 * lb.atom.n2 +
                            params.omega3 * lb.atom.n3;
        h.add(col, col, diag);
        add_interaction_column(h, space, lb, col, scheme.mode1_pair[0],
                               scheme.mode1_pair[1], 1, pref_a, index);
        add_interaction_column(h, space, lb, col, scheme.mode2_pair[0],
                               scheme.mode2_pair[1], 2, pref_b, index);
    }
    return h;
}

SparseOperator parity_operator(const HilbertSpace& space, ParityOp which) {
    SparseOperator op(space.dim());
    for (long i = 0; i < space.dim(); ++i) {
        const Parity p = (which == ParityOp::Pi1) ? space.par_m(i) : space.par_k(i);
        op.add(i, i, p == Parity::Even ? 1.0 : -1.0);
    }
    return op;
}

std::pair<double, double> casimir_check(const HilbertSpace& space) {
    const auto& basis = space.atom_basis();
    const int dm = space.atom_dim();
    const double na = space.na();

    Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(dm, dm);
    Eigen::MatrixXd c2 = Eigen::MatrixXd::Zero(dm, dm);
    for (int k = 1; k <= 3; ++k) c1 += atomic_generator(basis, k, k);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
            c2.noalias() +=
                atomic_generator(basis, j, k) * atomic_generator(basis, k, j);

    const double r1 = (c1 - na * Eigen::MatrixXd::Identity(dm, dm)).cwiseAbs().maxCoeff();
    const double r2 =
        (c2 - na * (na + 2.0) * Eigen::MatrixXd::Identity(dm, dm)).cwiseAbs().maxCoeff();
    return {r1, r2};
}

namespace {

double quadratic_form(const Eigen::SparseMatrix<double>& m, const Eigen::VectorXd& psi) {
    double acc = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            acc += it.value() * psi[it.row()] * psi[it.col()];
    return acc;
}

}  // namespace

double HamiltonianParts::energy(const Eigen::VectorXd& psi, double mu_a,
                                double mu_b) const {
    double e = diagonal.dot(psi.cwiseAbs2());
    if (mu_a != 0.0) e += mu_a * quadratic_form(v_a, psi);
    if (mu_b != 0.0) e += mu_b * quadratic_form(v_b, psi);
    return e;
}

Eigen::VectorXd HamiltonianParts::apply(const Eigen::VectorXd& psi, double mu_a,
                                        double mu_b) const {
    Eigen::VectorXd out = diagonal.cwiseProduct(psi);
    if (mu_a != 0.0) out.noalias() += mu_a * (v_a * psi);
    if (mu_b != 0.0) out.noalias() += mu_b * (v_b * psi);
    return out;
}

HamiltonianParts hamiltonian_parts(const HilbertSpace& space, const ModelParams& params) {
    HamiltonianParts parts;
    parts.diagonal.resize(space.dim());
    for (long i = 0; i < space.dim(); ++i) {
        const auto lb = space.labels(i);
        parts.diagonal[i] = params.Omega1 * lb.nu1 + params.Omega2 * lb.nu2 +
                            params.omega1 * lb.atom.n1 + params.omega2 * lb.atom.n2 +
                            params.omega3 * lb.atom.n3;
    }

    const auto scheme = coupling_scheme(params.config);
    const AtomIndex index(space.atom_basis());
    const double pref = -1.0 / std::sqrt(double(params.na));
    SparseOperator va(space.dim()), vb(space.dim());
    for (long col = 0; col < space.dim(); ++col) {
        const auto lb = space.labels(col);
        add_interaction_column(va, space, lb, col, scheme.mode1_pair[0],
                               scheme.mode1_pair[1], 1, pref, index);
        add_interaction_column(vb, space, lb, col, scheme.mode2_pair[0],
                               scheme.mode2_pair[1], 2, pref, index);
    }
    parts.v_a = va.real_sparse();
    parts.v_b = vb.real_sparse();
    return parts;
}

Eigen::Matrix3d u3_expectations(const Eigen::MatrixXd& rho_matter,
                                const std::vector<AtomBasisState>& basis) {
    Eigen::Matrix3d e;
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
            e(j - 1, k - 1) = (rho_matter * atomic_generator(basis, j, k)).trace();
    return e;
}

}  // namespace lcav
