#pragma once

#include <string>
#include <vector>

#include "rcforecast/maps.hpp"

namespace rcf {

/// Lyapunov exponents of a discrete-time map, both per iteration and per
/// model-time unit (per_step / dt). Sorted descending.
struct LyapunovEstimate {
    std::vector<double> exponents;  // per model-time unit
    std::vector<double> per_step;   // per iteration
    long steps_used = 0;
    long renorm_interval = 1;
    double dt = 1.0;

    double top() const { return exponents.front(); }
    double top_per_step() const { return per_step.front(); }
};

/// Benettin's method: propagate one tangent vector by Jacobian products,
/// renormalize every `renorm` steps, average the log norms. The transient
/// block (map and tangent, no accumulation) aligns the vector first.
LyapunovEstimate top_lyapunov(const DifferentiableMap& map, const VectorXd& x0, long steps,
                              long renorm = 1, double dt = 1.0, long transient = 1000);

/// QR spectrum: propagate a k-frame, re-orthonormalize by QR every `renorm`
/// steps, exponent i = (sum log |R_ii|)/steps/dt.
LyapunovEstimate spectrum_qr(const DifferentiableMap& map, const VectorXd& x0, long k, long steps,
                             long renorm = 1, double dt = 1.0, long transient = 1000);

/// Columns `index,exponent_per_time,exponent_per_step`.
void write_lyapunov_csv(const LyapunovEstimate& est, const std::string& path);

}  // namespace rcf
