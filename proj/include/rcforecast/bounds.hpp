#pragma once

#include <optional>
#include <string>

#include "rcforecast/forecast.hpp"
#include "rcforecast/reservoir.hpp"

namespace rcf {

enum class TimeUnits { ModelTime, PerStep };

/// Parameters of the exponential error-envelope curves. With ModelTime the
/// exponent is t*dt*(lambda1^pos + delta), lambda1 in per-model-time units;
/// with PerStep dt is ignored and lambda1 is per iteration.
struct BoundParams {
    double eps = 0.0;      // uniform one-step approximation error
    double delta = 0.0;    // leakage constant, > 0
    double lambda1 = 0.0;  // top Lyapunov exponent
    double r = 0.0;        // fitted envelope constant
    double l_h = 0.0;
    double l_z = 0.0;
    double dt = 1.0;
    TimeUnits units = TimeUnits::ModelTime;

    double rate() const {
        const double lp = std::max(lambda1, 0.0);
        return (units == TimeUnits::ModelTime ? dt : 1.0) * (lp + delta);
    }
};

/// eps * (1 + 2 L_h L_z R e^{t dt (lambda1^pos + delta)}).
double bound_y(const BoundParams& bp, long t);

/// 2 eps L_z R e^{t dt (lambda1^pos + delta)}; bound_y = eps + L_h bound_x.
double bound_x(const BoundParams& bp, long t);

struct RFit {
    double r = 0.0;
    bool trivial = false;  // all errors <= eps, bound holds with R = 0
    long tight_step = 0;   // 1-based step where the envelope touches
};

/// Minimal R making bound_y an envelope of the observed errors:
/// R = max_t max(0, err_t/eps - 1) / (2 L_h L_z e^{t dt (l1^pos + delta)}),
/// err_norms entry i taken as step t = i + 1.
RFit fit_R(const VectorXd& err_norms, double eps, double delta, double lambda1, double l_h,
           double l_z, double dt, TimeUnits units = TimeUnits::ModelTime);

/// Lipschitz-only comparison bound
/// eps (1 + L_h L_z sum_{j=0}^{t-2} (L_x + L_h L_z)^j); t = 1 gives eps.
double lipschitz_bound(double eps, double l_x, double l_h, double l_z, long t);

/// Horizon-uniform limit eps (1 - L_x)/(1 - (L_x + L_h L_z)), defined when
/// L_x + L_h L_z < 1.
std::optional<double> lipschitz_uniform_limit(double eps, double l_x, double l_h, double l_z);

struct SaturationEstimate {
    double value = 0.0;
    long settle_step = 0;  // 0-based offset into the forecast horizon
    long window = 0;
};

/// Separation plateau of two closed-loop forecasts whose warmups differ by
/// `perturbation` in the last row. Windowed means over consecutive blocks;
/// accepted once the mean changes by <= 5% between blocks.
SaturationEstimate estimate_saturation(const TrainedEsn& te, const Trajectory& warmup,
                                       const VectorXd& perturbation, long horizon, long window);

/// Smallest t >= 1 with bound_y(bp, t) >= saturation; closed form refined by
/// a local scan. nullopt when the bound never crosses.
std::optional<long> valid_horizon(const BoundParams& bp, double saturation);

/// Forecasting-horizon formula
/// T = floor( ln((e^{l+5d}-1)/(4 eps L_z L_phi K R e^{8d})) / (l+5d) ) + 1,
/// l = lambda1^pos per iteration; floored at 1. Returns 0 (sentinel) when
/// the log argument is not positive.
long horizon_T(double eps, double l_z, double l_phi, double k, double r, double lambda1,
               double delta);

/// Columns `step,t_model,err_norm,bound_y,log10_err,log10_bound`.
void write_bound_csv(const VectorXd& err_norms, const BoundParams& bp, const std::string& path);

}  // namespace rcf
