#include "rcforecast/dynsys.hpp"

#include <cmath>

#include "rcforecast/errors.hpp"

namespace rcf {

namespace {

constexpr double kBlowupLimit = 1e8;

void check_dim(const OdeSystem& system, const VectorXd& state) {
    if (state.size() != system.dim)
        throw std::invalid_argument("state dimension " + std::to_string(state.size()) +
                                    " does not match system dimension " +
                                    std::to_string(system.dim));
}

bool state_ok(const VectorXd& x) {
    for (long i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || std::abs(x[i]) > kBlowupLimit) return false;
    return true;
}

}  // namespace

OdeSystem lorenz(double sigma, double rho, double beta) {
    OdeSystem s;
    s.name = SystemName::Lorenz;
    s.dim = 3;
    s.p0 = sigma;
    s.p1 = rho;
    s.p2 = beta;
    return s;
}

OdeSystem rossler(double a, double b, double c) {
    OdeSystem s;
    s.name = SystemName::Rossler;
    s.dim = 3;
    s.p0 = a;
    s.p1 = b;
    s.p2 = c;
    return s;
}

OdeSystem custom_system(long dim, std::function<VectorXd(const VectorXd&)> rhs,
                        std::function<MatrixXd(const VectorXd&)> jacobian) {
    OdeSystem s;
    s.name = SystemName::Custom;
    s.dim = dim;
    s.custom_rhs = std::move(rhs);
    s.custom_jacobian = std::move(jacobian);
    return s;
}

VectorXd derivative(const OdeSystem& system, const VectorXd& state) {
    check_dim(system, state);
    VectorXd d(system.dim);
    switch (system.name) {
        case SystemName::Lorenz: {
            const double sigma = system.p0, rho = system.p1, beta = system.p2;
            d[0] = -sigma * (state[0] - state[1]);
            d[1] = rho * state[0] - state[1] - state[0] * state[2];
            d[2] = -beta * state[2] + state[0] * state[1];
            return d;
        }
        case SystemName::Rossler: {
            const double a = system.p0, b = system.p1, c = system.p2;
            d[0] = -state[1] - state[2];
            d[1] = state[0] + a * state[1];
            d[2] = b + state[2] * (state[0] - c);
            return d;
        }
        case SystemName::Custom:
            if (!system.custom_rhs) throw std::invalid_argument("custom system without rhs");
            return system.custom_rhs(state);
    }
    throw std::invalid_argument("unknown system");
}

MatrixXd system_jacobian(const OdeSystem& system, const VectorXd& state) {
    check_dim(system, state);
    switch (system.name) {
        case SystemName::Lorenz: {
            const double sigma = system.p0, rho = system.p1, beta = system.p2;
            MatrixXd j(3, 3);
            j << -sigma, sigma, 0.0,  //
                rho - state[2], -1.0, -state[0],  //
                state[1], state[0], -beta;
            return j;
        }
        case SystemName::Rossler: {
            const double a = system.p0, c = system.p2;
            MatrixXd j(3, 3);
            j << 0.0, -1.0, -1.0,  //
                1.0, a, 0.0,  //
                state[2], 0.0, state[0] - c;
            return j;
        }
        case SystemName::Custom:
            break;
    }
    if (system.custom_jacobian) return system.custom_jacobian(state);
    // centered finite differences
    const double h = 1e-7;
    MatrixXd j(system.dim, system.dim);
    VectorXd xp = state, xm = state;
    for (long c = 0; c < system.dim; ++c) {
        xp[c] += h;
        xm[c] -= h;
        j.col(c) = (derivative(system, xp) - derivative(system, xm)) / (2.0 * h);
        xp[c] = state[c];
        xm[c] = state[c];
    }
    return j;
}

VectorXd rk4_step(const OdeSystem& system, const VectorXd& x, double h) {
    const VectorXd k1 = derivative(system, x);
    const VectorXd k2 = derivative(system, x + 0.5 * h * k1);
    const VectorXd k3 = derivative(system, x + 0.5 * h * k2);
    const VectorXd k4 = derivative(system, x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;
constexpr double kTol = 1e-10;  // absolute and relative

struct Dopri5 {
    const OdeSystem& system;
    VectorXd k1;  // FSAL slot
    bool have_k1 = false;

    // One attempted step; on acceptance updates x and returns true.
    bool try_step(VectorXd& x, double h, double& err_out) {
        if (!have_k1) {
            k1 = derivative(system, x);
            have_k1 = true;
        }
        const VectorXd k2 = derivative(system, x + h * (kA21 * k1));
        const VectorXd k3 = derivative(system, x + h * (kA31 * k1 + kA32 * k2));
        const VectorXd k4 = derivative(system, x + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        const VectorXd k5 =
            derivative(system, x + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        const VectorXd k6 = derivative(
            system, x + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
        const VectorXd x5 = x + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        const VectorXd k7 = derivative(system, x5);
        const VectorXd e = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

        double err = 0.0;
        for (long i = 0; i < x.size(); ++i) {
            const double sc = kTol + kTol * std::max(std::abs(x[i]), std::abs(x5[i]));
            const double r = e[i] / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(x.size()));
        err_out = err;
        if (err <= 1.0) {
            x = x5;
            k1 = k7;  // first-same-as-last
            return true;
        }
        have_k1 = true;  // k1 still valid at unchanged x
        return false;
    }
};

}  // namespace

Trajectory integrate(const OdeSystem& system, const VectorXd& x0, double dt, long steps,
                     IntegrationMethod method, double t0) {
    check_dim(system, x0);
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be positive");
    if (steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
    if (!state_ok(x0)) throw std::invalid_argument("integrate: x0 must be finite");

    Trajectory traj;
    traj.dt = dt;
    traj.t0 = t0;
    traj.data.resize(steps + 1, system.dim);
    traj.data.row(0) = x0.transpose();

    VectorXd x = x0;
    if (method == IntegrationMethod::RK4) {
        for (long s = 1; s <= steps; ++s) {
            x = rk4_step(system, x, dt);
            if (!state_ok(x)) throw integration_error("integration blow-up", s);
            traj.data.row(s) = x.transpose();
        }
        return traj;
    }

    Dopri5 stepper{system};
    double h = dt / 10.0;
    for (long s = 1; s <= steps; ++s) {
        double remaining = dt;
        while (remaining > 0.0) {
            // clip so the sample time is hit exactly
            const double hs = std::min(h, remaining);
            const bool clipped = hs < h;
            double err = 0.0;
            const bool accepted = stepper.try_step(x, hs, err);
            const double safety =
                0.9 * std::pow(std::max(err, 1e-16), -0.2);  // 5th-order controller
            const double proposal = hs * std::min(5.0, std::max(0.2, safety));
            if (accepted) {
                remaining -= hs;
                if (!state_ok(x)) throw integration_error("integration blow-up", s);
                // a clipped step must not shrink the natural step size
                h = clipped ? std::max(h, proposal) : proposal;
            } else {
                h = proposal;
            }
            if (h < 1e-14 * dt) throw integration_error("integration step size collapsed", s);
        }
        traj.data.row(s) = x.transpose();
    }
    return traj;
}

ObservationMap identity_observation() { return {ObservationKind::Identity, 0, 0, nullptr}; }

ObservationMap coordinate_observation(long index) {
    return {ObservationKind::Coordinate, 1, index, nullptr};
}

Trajectory observe(const Trajectory& traj, const ObservationMap& map) {
    Trajectory out;
    out.dt = traj.dt;
    out.t0 = traj.t0;
    switch (map.kind) {
        case ObservationKind::Identity:
            out.data = traj.data;
            return out;
        case ObservationKind::Coordinate:
            if (map.index < 0 || map.index >= traj.cols())
                throw std::invalid_argument("observe: coordinate index " +
                                            std::to_string(map.index) + " out of range for " +
                                            std::to_string(traj.cols()) + " columns");
            out.data = traj.data.col(map.index);
            return out;
        case ObservationKind::Custom: {
            if (!map.custom) throw std::invalid_argument("observe: custom map without callback");
            out.data.resize(traj.rows(), map.out_dim);
            for (long r = 0; r < traj.rows(); ++r)
                out.data.row(r) = map.custom(traj.data.row(r).transpose()).transpose();
            return out;
        }
    }
    throw std::invalid_argument("observe: unknown map kind");
}

std::string to_string(SystemName name) {
    switch (name) {
        case SystemName::Lorenz: return "lorenz";
        case SystemName::Rossler: return "rossler";
        case SystemName::Custom: return "custom";
    }
    return "?";
}

}  // namespace rcf
