#include "rcforecast/linops.hpp"

#include <cmath>

#include "rcforecast/errors.hpp"
#include "rcforecast/rng.hpp"

namespace rcf {

VectorXd CsrMatrix::multiply(const VectorXd& x) const {
    VectorXd y = VectorXd::Zero(rows);
    for (long r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (long k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += values[k] * x[col_idx[k]];
        y[r] = acc;
    }
    return y;
}

VectorXd CsrMatrix::multiply_transpose(const VectorXd& x) const {
    VectorXd y = VectorXd::Zero(cols);
    for (long r = 0; r < rows; ++r)
        for (long k = row_ptr[r]; k < row_ptr[r + 1]; ++k) y[col_idx[k]] += values[k] * x[r];
    return y;
}

MatrixXd CsrMatrix::dense() const {
    MatrixXd m = MatrixXd::Zero(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long k = row_ptr[r]; k < row_ptr[r + 1]; ++k) m(r, col_idx[k]) = values[k];
    return m;
}

void CsrMatrix::scale(double s) {
    for (double& v : values) v *= s;
}

CsrMatrix CsrMatrix::from_sorted_entries(long rows, long cols,
                                         const std::vector<std::pair<long, long>>& positions,
                                         const std::vector<double>& vals) {
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    m.col_idx.reserve(positions.size());
    m.values = vals;
    for (const auto& [r, c] : positions) {
        m.row_ptr[r + 1]++;
        m.col_idx.push_back(c);
    }
    for (long r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
    return m;
}

namespace {

// Magnitude of the largest eigenvalue of a real 2x2 matrix. For a complex
// pair (negative discriminant) |lambda|^2 equals the determinant.
double max_abs_eig_2x2(double a, double b, double c, double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = 0.25 * tr * tr - det;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return std::max(std::abs(0.5 * tr + s), std::abs(0.5 * tr - s));
    }
    return std::sqrt(det);
}

}  // namespace

double spectral_radius(const std::function<VectorXd(const VectorXd&)>& apply, long n, double tol,
                       long max_iter) {
    if (n == 1) {
        VectorXd e(1);
        e[0] = 1.0;
        return std::abs(apply(e)[0]);
    }
    // Deterministic start block; the fixed seed keeps every estimate
    // reproducible across runs.
    SplitMix64 rng(0x5eed5eedULL);
    MatrixXd v(n, 2);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < 2; ++j) v(i, j) = rng.uniform(-1.0, 1.0);
    Eigen::HouseholderQR<MatrixXd> qr0(v);
    v = qr0.householderQ() * MatrixXd::Identity(n, 2);

    double est = 0.0;
    int settled = 0;
    for (long it = 0; it < max_iter; ++it) {
        MatrixXd w(n, 2);
        w.col(0) = apply(v.col(0));
        w.col(1) = apply(v.col(1));
        const MatrixXd h = v.transpose() * w;  // 2x2 Rayleigh block
        const double next = max_abs_eig_2x2(h(0, 0), h(0, 1), h(1, 0), h(1, 1));
        if (w.norm() == 0.0) return 0.0;
        Eigen::HouseholderQR<MatrixXd> qr(w);
        v = qr.householderQ() * MatrixXd::Identity(n, 2);
        if (it > 0 && std::abs(next - est) <= tol * std::max(std::abs(next), 1e-300)) {
            if (++settled >= 2) return next;
        } else {
            settled = 0;
        }
        est = next;
    }
    throw numerical_error("spectral_radius: power iteration did not converge within " +
                          std::to_string(max_iter) + " iterations");
}

double spectral_radius(const CsrMatrix& a, double tol, long max_iter) {
    return spectral_radius([&a](const VectorXd& x) { return a.multiply(x); }, a.rows, tol,
                           max_iter);
}

double top_singular_value(const std::function<VectorXd(const VectorXd&)>& apply,
                          const std::function<VectorXd(const VectorXd&)>& apply_transpose,
                          long ncols, double tol, long max_iter) {
    SplitMix64 rng(0x51d3c0deULL);
    VectorXd v(ncols);
    for (long i = 0; i < ncols; ++i) v[i] = rng.uniform(-1.0, 1.0);
    const double vn = v.norm();
    if (vn == 0.0 || ncols == 0) return 0.0;
    v /= vn;

    double sigma = 0.0;
    int settled = 0;
    for (long it = 0; it < max_iter; ++it) {
        const VectorXd av = apply(v);
        const double next = av.norm();  // ||A v|| -> sigma_max as v aligns
        if (next == 0.0) return 0.0;
        VectorXd w = apply_transpose(av);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(next - sigma) <= tol * next) {
            if (++settled >= 2) return next;
        } else {
            settled = 0;
        }
        sigma = next;
    }
    throw numerical_error("top_singular_value: power iteration did not converge within " +
                          std::to_string(max_iter) + " iterations");
}

double top_singular_value(const MatrixXd& a, double tol, long max_iter) {
    return top_singular_value([&a](const VectorXd& x) { return VectorXd(a * x); },
                              [&a](const VectorXd& x) { return VectorXd(a.transpose() * x); },
                              a.cols(), tol, max_iter);
}

double top_singular_value(const CsrMatrix& a, double tol, long max_iter) {
    return top_singular_value([&a](const VectorXd& x) { return a.multiply(x); },
                              [&a](const VectorXd& x) { return a.multiply_transpose(x); }, a.cols,
                              tol, max_iter);
}

}  // namespace rcf
