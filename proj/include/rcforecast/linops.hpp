#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace rcf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Compressed-row sparse matrix. Only what the reservoir needs: matvec,
/// transposed matvec, value scaling, and densification for small oracles.
struct CsrMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<long> row_ptr;   // size rows + 1
    std::vector<long> col_idx;   // size nnz
    std::vector<double> values;  // size nnz

    long nnz() const { return static_cast<long>(values.size()); }

    VectorXd multiply(const VectorXd& x) const;
    VectorXd multiply_transpose(const VectorXd& x) const;
    MatrixXd dense() const;
    void scale(double s);

    /// Build from entries sorted by (row, col); no duplicates allowed.
    static CsrMatrix from_sorted_entries(long rows, long cols,
                                         const std::vector<std::pair<long, long>>& positions,
                                         const std::vector<double>& vals);
};

/// Estimate of |lambda_max| of a square linear operator, via subspace
/// iteration with a two-column block so that a dominant complex-conjugate
/// pair is resolved by the 2x2 projected eigenproblem (magnitude only).
/// Relative tolerance `tol`; throws rcf::numerical_error past `max_iter`.
double spectral_radius(const std::function<VectorXd(const VectorXd&)>& apply, long n,
                       double tol = 1e-8, long max_iter = 10000);

double spectral_radius(const CsrMatrix& a, double tol = 1e-8, long max_iter = 10000);

/// Largest singular value via power iteration on A^T A, relative tolerance
/// `tol`. Throws rcf::numerical_error if not converged after `max_iter`.
double top_singular_value(const std::function<VectorXd(const VectorXd&)>& apply,
                          const std::function<VectorXd(const VectorXd&)>& apply_transpose,
                          long ncols, double tol = 1e-8, long max_iter = 10000);

double top_singular_value(const MatrixXd& a, double tol = 1e-8, long max_iter = 10000);
double top_singular_value(const CsrMatrix& a, double tol = 1e-8, long max_iter = 10000);

}  // namespace rcf
