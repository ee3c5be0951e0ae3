#include "rcforecast/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "rcforecast/errors.hpp"
#include "rcforecast/rng.hpp"
#include "rcforecast/textio.hpp"

namespace rcf {

namespace {

// Thin QR; overwrites the frame with Q and adds log|R_ii| into sums (when
// accumulating). Throws if the frame has collapsed.
void renormalize(MatrixXd& frame, std::vector<double>* sums) {
    const long k = frame.cols();
    Eigen::HouseholderQR<MatrixXd> qr(frame);
    const MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (long i = 0; i < k; ++i) {
        const double rii = std::abs(r(i, i));
        if (!(rii > 1e-300))
            throw numerical_error("lyapunov: tangent frame collapsed during renormalization");
        if (sums) (*sums)[i] += std::log(rii);
    }
    frame = qr.householderQ() * MatrixXd::Identity(frame.rows(), k);
}

LyapunovEstimate frame_exponents(const DifferentiableMap& map, const VectorXd& x0, long k,
                                 long steps, long renorm, double dt, long transient) {
    const long n = map.dim();
    if (x0.size() != n) throw std::invalid_argument("lyapunov: x0 dimension mismatch");
    if (k < 1 || k > n) throw std::invalid_argument("lyapunov: need 1 <= k <= dim");
    if (renorm < 1 || steps < renorm)
        throw std::invalid_argument("lyapunov: need steps >= renorm >= 1");
    if (dt <= 0.0) throw std::invalid_argument("lyapunov: dt must be positive");
    if (steps < 1000)
        std::cerr << "lyapunov: warning: " << steps << " steps is below the 1000-step "
                  << "stability threshold\n";

    // Pseudo-random frame (fixed seed): generic alignment with the dominant
    // directions regardless of the map's eigenstructure.
    SplitMix64 rng(0x11aab5ULL);
    MatrixXd frame(n, k);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < k; ++j) frame(i, j) = rng.uniform(-1.0, 1.0);
    renormalize(frame, nullptr);

    VectorXd x = x0;
    for (long t = 0; t < transient; ++t) {
        frame = map.apply_tangent(x, frame);
        x = map.apply(x);
        if ((t + 1) % renorm == 0) renormalize(frame, nullptr);
    }
    renormalize(frame, nullptr);

    std::vector<double> sums(k, 0.0);
    for (long t = 1; t <= steps; ++t) {
        frame = map.apply_tangent(x, frame);
        x = map.apply(x);
        if (t % renorm == 0 || t == steps) renormalize(frame, &sums);
    }

    LyapunovEstimate est;
    est.steps_used = steps;
    est.renorm_interval = renorm;
    est.dt = dt;
    est.per_step.resize(k);
    for (long i = 0; i < k; ++i) est.per_step[i] = sums[i] / static_cast<double>(steps);
    std::sort(est.per_step.begin(), est.per_step.end(), std::greater<double>());
    est.exponents.resize(k);
    for (long i = 0; i < k; ++i) est.exponents[i] = est.per_step[i] / dt;
    return est;
}

}  // namespace

LyapunovEstimate top_lyapunov(const DifferentiableMap& map, const VectorXd& x0, long steps,
                              long renorm, double dt, long transient) {
    return frame_exponents(map, x0, 1, steps, renorm, dt, transient);
}

LyapunovEstimate spectrum_qr(const DifferentiableMap& map, const VectorXd& x0, long k, long steps,
                             long renorm, double dt, long transient) {
    return frame_exponents(map, x0, k, steps, renorm, dt, transient);
}

void write_lyapunov_csv(const LyapunovEstimate& est, const std::string& path) {
    std::ofstream out;
    open_or_throw(out, path);
    out << "index,exponent_per_time,exponent_per_step\n";
    for (size_t i = 0; i < est.exponents.size(); ++i)
        out << i << "," << fmt_g17(est.exponents[i]) << "," << fmt_g17(est.per_step[i]) << "\n";
}

}  // namespace rcf
