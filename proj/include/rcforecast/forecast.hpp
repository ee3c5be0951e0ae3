#pragma once

#include <optional>
#include <string>

#include "rcforecast/reservoir.hpp"
#include "rcforecast/trajectory.hpp"

namespace rcf {

/// Paired truth/prediction with per-step error norms. Step t (1-based)
/// lives at row t-1 of every matrix here. State sequences are kept so the
/// error-decomposition oracles can replay the run.
struct ForecastRun {
    Trajectory truth;
    Trajectory predicted;
    VectorXd err_norms;        // ||truth_t - pred_t||_2, entry t-1
    VectorXd state_err_norms;  // ||x_t - x~_t||_2, entry t-1
    double dt = 0.0;

    VectorXd y0;            // last warmup row (= y_0)
    VectorXd x0;            // shared initial state x_0 = x~_0
    MatrixXd true_states;   // row t-1 = x_t (teacher-forced along truth)
    MatrixXd pred_states;   // row t-1 = x~_t (closed loop)
};

/// Iterated multistep forecast. The reservoir is teacher-forced from x = 0
/// through all warmup rows but the last, giving x~_0; y~_0 is the last
/// warmup row; then x~_t = F(x~_{t-1}, y~_{t-1}), y~_t = h(x~_t). Returns
/// y~_1 .. y~_horizon.
Trajectory forecast(const TrainedEsn& te, const Trajectory& warmup, long horizon);

/// Forecast against ground truth; also teacher-forces the reservoir along
/// the true future so state errors x_t - x~_t are available.
ForecastRun evaluate(const TrainedEsn& te, const Trajectory& warmup,
                     const Trajectory& truth_future);

/// Columns `step,t_model,t_lyap,truth...,pred...,err_norm`; t_lyap is
/// step*dt*lambda1 when a top exponent is supplied, else 0.
void write_forecast_csv(const ForecastRun& run, const std::string& path,
                        std::optional<double> lambda1 = std::nullopt);

}  // namespace rcf
