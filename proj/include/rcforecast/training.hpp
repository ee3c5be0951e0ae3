#pragma once

#include <Eigen/Dense>

#include "rcforecast/reservoir.hpp"
#include "rcforecast/trajectory.hpp"

namespace rcf {

struct TrainSpec {
    long washout = 0;       // discarded teacher-forcing steps
    double alpha = 0.0;     // ridge constant, >= 0
    long target_shift = 1;  // one-step-ahead; fixed in v1
};

/// Tikhonov solve of min ||X W^T + 1 a^T - Y||_F^2 + alpha ||W||_F^2.
/// With `center` the bias is handled by data centering, which leaves it
/// unregularized; without it the plain monomial form (a = 0) is solved.
/// A singular normal matrix at alpha = 0 raises a numerical_error advising
/// alpha > 0.
Readout ridge_regression(const MatrixXd& x, const MatrixXd& y, double alpha, bool center = true);

/// Fit the affine readout on row-aligned (state, target) pairs after washout
/// removal. Warns (stderr) when fewer than L + 1 pairs remain.
Readout fit_readout(const Trajectory& states, const Trajectory& targets, const TrainSpec& spec);

/// Full training pass: drive the reservoir from x = 0 along the
/// observations, drop the washout, regress state x_t on observation y_t
/// (x_t accumulates inputs strictly before t), fill Lipschitz constants.
TrainedEsn train_pipeline(const EsnParams& esn, const Trajectory& observations,
                          const TrainSpec& spec);

/// Max one-step-ahead training error: eps = max_t ||y_t - h(x_t)||_2 over
/// post-washout t with teacher-forced states.
double estimate_epsilon(const TrainedEsn& te, const Trajectory& observations, long washout);

}  // namespace rcf
