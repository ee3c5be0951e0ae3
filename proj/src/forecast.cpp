#include "rcforecast/forecast.hpp"

#include "rcforecast/textio.hpp"

namespace rcf {

namespace {

// x~_0 - the reservoir state after consuming all warmup rows but the last.
VectorXd warm_state(const TrainedEsn& te, const Trajectory& warmup) {
    VectorXd x = VectorXd::Zero(te.params.reservoir_size);
    for (long t = 0; t + 1 < warmup.rows(); ++t)
        x = step(te.params, x, warmup.data.row(t).transpose());
    return x;
}

}  // namespace

Trajectory forecast(const TrainedEsn& te, const Trajectory& warmup, long horizon) {
    if (warmup.rows() < 1) throw std::invalid_argument("forecast: warmup needs >= 1 row");
    if (horizon < 1) throw std::invalid_argument("forecast: horizon must be >= 1");
    if (warmup.cols() != te.params.input_dim)
        throw std::invalid_argument("forecast: warmup dimension mismatch");

    VectorXd x = warm_state(te, warmup);
    VectorXd y = warmup.data.row(warmup.rows() - 1).transpose();

    Trajectory pred;
    pred.dt = warmup.dt;
    pred.t0 = warmup.time_at(warmup.rows() - 1) + warmup.dt;
    pred.data.resize(horizon, te.params.input_dim);
    for (long t = 0; t < horizon; ++t) {
        x = step(te.params, x, y);
        y = te.readout.apply(x);
        pred.data.row(t) = y.transpose();
    }
    return pred;
}

ForecastRun evaluate(const TrainedEsn& te, const Trajectory& warmup,
                     const Trajectory& truth_future) {
    if (truth_future.cols() != te.params.input_dim)
        throw std::invalid_argument("evaluate: truth dimension mismatch");
    if (warmup.cols() != te.params.input_dim)
        throw std::invalid_argument("evaluate: warmup dimension mismatch");
    if (truth_future.rows() < 1) throw std::invalid_argument("evaluate: empty truth");

    const long horizon = truth_future.rows();
    const long l = te.params.reservoir_size;

    ForecastRun run;
    run.dt = warmup.dt;
    run.truth = truth_future;
    run.y0 = warmup.data.row(warmup.rows() - 1).transpose();
    run.x0 = warm_state(te, warmup);
    run.err_norms.resize(horizon);
    run.state_err_norms.resize(horizon);
    run.true_states.resize(horizon, l);
    run.pred_states.resize(horizon, l);

    run.predicted.dt = truth_future.dt;
    run.predicted.t0 = truth_future.t0;
    run.predicted.data.resize(horizon, te.params.input_dim);

    VectorXd x_pred = run.x0;
    VectorXd y_pred = run.y0;
    VectorXd x_true = run.x0;
    for (long t = 1; t <= horizon; ++t) {
        // closed loop
        x_pred = step(te.params, x_pred, y_pred);
        y_pred = te.readout.apply(x_pred);
        // teacher forcing along the truth: x_t = H^F(y_{t-1}, ...)
        const VectorXd y_prev =
            (t == 1) ? run.y0 : VectorXd(truth_future.data.row(t - 2).transpose());
        x_true = step(te.params, x_true, y_prev);

        run.pred_states.row(t - 1) = x_pred.transpose();
        run.true_states.row(t - 1) = x_true.transpose();
        run.predicted.data.row(t - 1) = y_pred.transpose();
        run.err_norms[t - 1] =
            (truth_future.data.row(t - 1) - run.predicted.data.row(t - 1)).norm();
        run.state_err_norms[t - 1] = (x_true - x_pred).norm();
    }
    return run;
}

void write_forecast_csv(const ForecastRun& run, const std::string& path,
                        std::optional<double> lambda1) {
    std::ofstream out;
    open_or_throw(out, path);
    const long d = run.truth.cols();
    out << "step,t_model,t_lyap";
    for (long c = 0; c < d; ++c) out << ",truth" << c;
    for (long c = 0; c < d; ++c) out << ",pred" << c;
    out << ",err_norm\n";
    for (long t = 1; t <= run.truth.rows(); ++t) {
        const double tm = static_cast<double>(t) * run.dt;
        out << t << "," << fmt_g17(tm) << ","
            << fmt_g17(lambda1 ? tm * (*lambda1) : 0.0);
        for (long c = 0; c < d; ++c) out << "," << fmt_g17(run.truth.data(t - 1, c));
        for (long c = 0; c < d; ++c) out << "," << fmt_g17(run.predicted.data(t - 1, c));
        out << "," << fmt_g17(run.err_norms[t - 1]) << "\n";
    }
}

}  // namespace rcf
