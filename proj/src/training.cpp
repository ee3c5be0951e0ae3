#include "rcforecast/training.hpp"

#include <iostream>

#include "rcforecast/errors.hpp"

namespace rcf {

namespace {

MatrixXd solve_normal_equations(const MatrixXd& gram, const MatrixXd& rhs, double alpha) {
    Eigen::LLT<MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        if (alpha == 0.0)
            throw numerical_error(
                "ridge_regression: singular normal matrix with alpha = 0; use alpha > 0");
        Eigen::LDLT<MatrixXd> ldlt(gram);
        if (ldlt.info() != Eigen::Success)
            throw numerical_error("ridge_regression: normal matrix factorization failed");
        return ldlt.solve(rhs);
    }
    return llt.solve(rhs);
}

}  // namespace

Readout ridge_regression(const MatrixXd& x, const MatrixXd& y, double alpha, bool center) {
    if (x.rows() != y.rows()) throw std::invalid_argument("ridge_regression: row mismatch");
    if (x.rows() == 0) throw std::invalid_argument("ridge_regression: empty data");
    if (alpha < 0.0) throw std::invalid_argument("ridge_regression: alpha must be >= 0");
    if (alpha > 0.0 && alpha < 1e-16)
        std::cerr << "ridge_regression: warning: alpha below 1e-16 is conditioning-fragile\n";

    const long p = x.cols();
    MatrixXd gram;
    MatrixXd rhs;
    Eigen::RowVectorXd xm, ym;
    if (center) {
        xm = x.colwise().mean();
        ym = y.colwise().mean();
        const MatrixXd xc = x.rowwise() - xm;
        const MatrixXd yc = y.rowwise() - ym;
        gram = xc.transpose() * xc;
        rhs = xc.transpose() * yc;
    } else {
        gram = x.transpose() * x;
        rhs = x.transpose() * y;
    }
    gram.diagonal().array() += alpha;

    const MatrixXd wt = solve_normal_equations(gram, rhs, alpha);
    Readout r;
    r.w = wt.transpose();
    if (center)
        r.a = (ym - xm * wt).transpose();
    else
        r.a = VectorXd::Zero(y.cols());
    return r;
}

Readout fit_readout(const Trajectory& states, const Trajectory& targets, const TrainSpec& spec) {
    if (states.rows() != targets.rows())
        throw std::invalid_argument("fit_readout: states and targets must be row-aligned");
    if (spec.washout < 0 || spec.washout >= states.rows())
        throw std::invalid_argument("fit_readout: washout must be in [0, rows)");
    const long n = states.rows() - spec.washout;
    if (n < states.cols() + 1)
        std::cerr << "fit_readout: warning: only " << n << " pairs for " << states.cols()
                  << " reservoir units; recommend rows - washout >= L + 1\n";
    return ridge_regression(states.data.bottomRows(n), targets.data.bottomRows(n), spec.alpha,
                            true);
}

TrainedEsn train_pipeline(const EsnParams& esn, const Trajectory& observations,
                          const TrainSpec& spec) {
    if (observations.cols() != esn.input_dim)
        throw std::invalid_argument("train_pipeline: observation dimension mismatch");
    if (spec.washout < 1) throw std::invalid_argument("train_pipeline: washout must be >= 1");
    if (observations.rows() < spec.washout + 3)
        throw std::invalid_argument("train_pipeline: need at least washout + 3 observation rows");

    const long n = observations.rows();
    // x_t accumulates inputs up to y_{t-1}; the last row is a target only.
    const Trajectory states =
        drive(esn, VectorXd::Zero(esn.reservoir_size), observations.prefix(n - 1));
    // states row t-1 holds x_t; pair (x_t, y_t) for t in [washout, n).
    Trajectory xs, ys;
    xs.dt = ys.dt = observations.dt;
    xs.data = states.data.bottomRows(n - spec.washout);
    ys.data = observations.data.bottomRows(n - spec.washout);

    TrainSpec flat = spec;
    flat.washout = 0;  // already sliced
    TrainedEsn te;
    te.params = esn;
    te.readout = fit_readout(xs, ys, flat);
    te.lipschitz = lipschitz_constants(esn, te.readout);
    return te;
}

double estimate_epsilon(const TrainedEsn& te, const Trajectory& observations, long washout) {
    if (observations.cols() != te.params.input_dim)
        throw std::invalid_argument("estimate_epsilon: observation dimension mismatch");
    if (washout < 1 || washout >= observations.rows())
        throw std::invalid_argument("estimate_epsilon: washout out of range");
    const long n = observations.rows();
    const Trajectory states =
        drive(te.params, VectorXd::Zero(te.params.reservoir_size), observations.prefix(n - 1));
    double eps = 0.0;
    for (long t = washout; t < n; ++t) {
        const VectorXd pred = te.readout.apply(states.data.row(t - 1).transpose());
        eps = std::max(eps, (observations.data.row(t).transpose() - pred).norm());
    }
    return eps;
}

}  // namespace rcf
