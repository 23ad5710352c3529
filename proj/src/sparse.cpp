#include "lcav/sparse.hpp"

#include <stdexcept>

namespace lcav {

void SparseOperator::add(long row, long col, std::complex<double> value) {
    if (row < 0 || row >= dim || col < 0 || col >= dim)
        throw std::out_of_range("sparse entry outside operator dimension");
    if (value != std::complex<double>(0.0, 0.0)) entries.push_back({row, col, value});
}

Eigen::MatrixXcd SparseOperator::dense() const {
    if (dim > 4000)
        throw std::runtime_error("dense conversion above dimension 4000 refused");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
}

bool SparseOperator::is_real(double tol) const {
    for (const auto& e : entries)
        if (std::abs(e.value.imag()) > tol) return false;
    return true;
}

Eigen::SparseMatrix<double> SparseOperator::real_sparse() const {
    if (!is_real()) throw std::runtime_error("operator has imaginary entries");
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries)
        trips.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value.real());
    Eigen::SparseMatrix<double> m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

double SparseOperator::hermiticity_residual() const {
    // Accumulate A and A^dagger in map form over touched entries.
    std::vector<Eigen::Triplet<std::complex<double>>> trips;
    trips.reserve(2 * entries.size());
    for (const auto& e : entries) {
        trips.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
        trips.emplace_back(static_cast<int>(e.col), static_cast<int>(e.row),
                           -std::conj(e.value));
    }
    Eigen::SparseMatrix<std::complex<double>> d(dim, dim);
    d.setFromTriplets(trips.begin(), trips.end());
    double worst = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(d, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

}  // namespace lcav
