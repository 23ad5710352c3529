#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lcav {

// Triplet-list operator with deterministic entry order (order of add calls).
struct SparseOperator {
    struct Entry {
        long row = 0, col = 0;
        std::complex<double> value;
    };

    long dim = 0;
    std::vector<Entry> entries;

    explicit SparseOperator(long dimension = 0) : dim(dimension) {}

    void add(long row, long col, std::complex<double> value);

    // Dense conversion is an oracle path; guarded at dimension 4000.
    Eigen::MatrixXcd dense() const;

    bool is_real(double tol = 0.0) const;
    // Compressed real form for fast matvec; throws on imaginary entries.
    Eigen::SparseMatrix<double> real_sparse() const;

    double hermiticity_residual() const;  // max |A - A^dagger| entrywise
};

}  // namespace lcav
