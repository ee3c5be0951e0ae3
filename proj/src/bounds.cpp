#include "rcforecast/bounds.hpp"

#include <cmath>

#include "rcforecast/errors.hpp"
#include "rcforecast/textio.hpp"

namespace rcf {

double bound_y(const BoundParams& bp, long t) {
    if (t < 1) throw std::invalid_argument("bound_y: t must be >= 1");
    return bp.eps * (1.0 + 2.0 * bp.l_h * bp.l_z * bp.r * std::exp(static_cast<double>(t) * bp.rate()));
}

double bound_x(const BoundParams& bp, long t) {
    if (t < 0) throw std::invalid_argument("bound_x: t must be >= 0");
    return 2.0 * bp.eps * bp.l_z * bp.r * std::exp(static_cast<double>(t) * bp.rate());
}

RFit fit_R(const VectorXd& err_norms, double eps, double delta, double lambda1, double l_h,
           double l_z, double dt, TimeUnits units) {
    if (err_norms.size() == 0) throw std::invalid_argument("fit_R: empty error vector");
    if (eps <= 0.0) throw std::invalid_argument("fit_R: eps must be positive");

    BoundParams bp;
    bp.eps = eps;
    bp.delta = delta;
    bp.lambda1 = lambda1;
    bp.l_h = l_h;
    bp.l_z = l_z;
    bp.dt = dt;
    bp.units = units;

    RFit fit;
    for (long i = 0; i < err_norms.size(); ++i) {
        const long t = i + 1;
        const double excess = err_norms[i] / eps - 1.0;
        if (excess <= 0.0) continue;
        const double r = excess / (2.0 * l_h * l_z * std::exp(static_cast<double>(t) * bp.rate()));
        if (r > fit.r) {
            fit.r = r;
            fit.tight_step = t;
        }
    }
    fit.trivial = (fit.r == 0.0);
    return fit;
}

double lipschitz_bound(double eps, double l_x, double l_h, double l_z, long t) {
    if (t < 1) throw std::invalid_argument("lipschitz_bound: t must be >= 1");
    if (t == 1) return eps;  // empty sum
    const double ratio = l_x + l_h * l_z;
    double partial;  // sum_{j=0}^{t-2} ratio^j
    if (ratio == 1.0)
        partial = static_cast<double>(t - 1);
    else
        partial = (std::pow(ratio, static_cast<double>(t - 1)) - 1.0) / (ratio - 1.0);
    return eps * (1.0 + l_h * l_z * partial);
}

std::optional<double> lipschitz_uniform_limit(double eps, double l_x, double l_h, double l_z) {
    const double ratio = l_x + l_h * l_z;
    if (ratio >= 1.0) return std::nullopt;
    return eps * (1.0 - l_x) / (1.0 - ratio);
}

SaturationEstimate estimate_saturation(const TrainedEsn& te, const Trajectory& warmup,
                                       const VectorXd& perturbation, long horizon, long window) {
    if (window < 10) throw std::invalid_argument("estimate_saturation: window must be >= 10");
    if (horizon < window)
        throw std::invalid_argument("estimate_saturation: horizon must be >= window");
    if (perturbation.size() != warmup.cols())
        throw std::invalid_argument("estimate_saturation: perturbation dimension mismatch");

    Trajectory shifted = warmup;
    shifted.data.row(shifted.rows() - 1) += perturbation.transpose();

    const Trajectory run_a = forecast(te, warmup, horizon);
    const Trajectory run_b = forecast(te, shifted, horizon);
    VectorXd sep(horizon);
    for (long t = 0; t < horizon; ++t) sep[t] = (run_a.data.row(t) - run_b.data.row(t)).norm();

    const long blocks = horizon / window;
    double prev_mean = 0.0;
    for (long b = 0; b < blocks; ++b) {
        const double mean = sep.segment(b * window, window).mean();
        if (b > 0 && std::abs(mean - prev_mean) <= 0.05 * prev_mean) {
            SaturationEstimate est;
            est.value = mean;
            est.settle_step = b * window;
            est.window = window;
            return est;
        }
        prev_mean = mean;
    }
    throw numerical_error("estimate_saturation: no stabilization within horizon (last windowed "
                          "mean " +
                          fmt_g17(prev_mean) + ")");
}

std::optional<long> valid_horizon(const BoundParams& bp, double saturation) {
    if (saturation <= bp.eps)
        throw std::invalid_argument("valid_horizon: saturation must exceed eps");
    const double coeff = 2.0 * bp.l_h * bp.l_z * bp.r;
    const double rate = bp.rate();
    if (coeff <= 0.0) return std::nullopt;  // bound constant at eps < saturation
    if (rate <= 0.0) {
        // flat bound: crosses iff already above
        if (bp.eps * (1.0 + coeff) >= saturation) return 1;
        return std::nullopt;
    }
    const double target = (saturation / bp.eps - 1.0) / coeff;
    long t = 1;
    if (target > 0.0)
        t = static_cast<long>(std::ceil(std::log(target) / rate));
    if (t < 1) t = 1;
    // fp-rounding repair around the closed-form candidate
    while (t > 1 && bound_y(bp, t - 1) >= saturation) --t;
    while (bound_y(bp, t) < saturation) {
        ++t;
        if (t > static_cast<long>(1e9))
            throw numerical_error("valid_horizon: crossing not found below 1e9 steps");
    }
    return t;
}

long horizon_T(double eps, double l_z, double l_phi, double k, double r, double lambda1,
               double delta) {
    if (eps <= 0.0 || l_z <= 0.0 || l_phi <= 0.0 || k <= 0.0 || r <= 0.0 || delta <= 0.0)
        throw std::invalid_argument("horizon_T: all inputs must be positive");
    const double lp = std::max(lambda1, 0.0);
    const double rate = lp + 5.0 * delta;
    const double arg =
        (std::exp(rate) - 1.0) / (4.0 * eps * l_z * l_phi * k * r * std::exp(8.0 * delta));
    if (arg <= 0.0) return 0;  // horizon-zero sentinel
    const long t = static_cast<long>(std::floor(std::log(arg) / rate)) + 1;
    return std::max<long>(1, t);
}

void write_bound_csv(const VectorXd& err_norms, const BoundParams& bp, const std::string& path) {
    std::ofstream out;
    open_or_throw(out, path);
    out << "step,t_model,err_norm,bound_y,log10_err,log10_bound\n";
    for (long i = 0; i < err_norms.size(); ++i) {
        const long t = i + 1;
        const double b = bound_y(bp, t);
        const double err = err_norms[i];
        out << t << "," << fmt_g17(static_cast<double>(t) * bp.dt) << "," << fmt_g17(err) << ","
            << fmt_g17(b) << "," << fmt_g17(std::log10(std::max(err, 1e-300))) << ","
            << fmt_g17(std::log10(std::max(b, 1e-300))) << "\n";
    }
}

}  // namespace rcf
