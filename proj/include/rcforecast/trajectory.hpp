#pragma once

#include <Eigen/Dense>
#include <string>

namespace rcf {

/// Uniformly sampled multivariate time series. Row t holds the state at
/// model time t0 + t*dt.
struct Trajectory {
    Eigen::MatrixXd data;  // T x n, rows are time steps
    double dt = 0.0;
    double t0 = 0.0;

    long rows() const { return data.rows(); }
    long cols() const { return data.cols(); }
    double time_at(long row) const { return t0 + static_cast<double>(row) * dt; }

    /// First `n` rows, same dt, same t0.
    Trajectory prefix(long n) const { return {data.topRows(n), dt, t0}; }
    /// Rows [from, T), with t0 advanced accordingly.
    Trajectory tail_from(long from) const {
        return {data.bottomRows(data.rows() - from), dt, time_at(from)};
    }
};

/// Write `t,x0,x1,...` rows, floats with 17 significant digits.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace rcf
