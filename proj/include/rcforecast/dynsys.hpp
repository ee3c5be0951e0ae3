#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "rcforecast/trajectory.hpp"

namespace rcf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SystemName { Lorenz, Rossler, Custom };
enum class IntegrationMethod { RK4, RK45 };

/// Continuous-time system dx/dt = f(x). Built-ins carry analytic Jacobians;
/// custom systems register a derivative callback (and optionally a Jacobian,
/// otherwise tangent maps fall back to finite differences).
struct OdeSystem {
    SystemName name = SystemName::Custom;
    long dim = 0;
    // Lorenz: sigma, rho, beta. Rossler: a, b, c. Unused for Custom.
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    std::function<VectorXd(const VectorXd&)> custom_rhs;
    std::function<MatrixXd(const VectorXd&)> custom_jacobian;

    bool has_analytic_jacobian() const {
        return name != SystemName::Custom || static_cast<bool>(custom_jacobian);
    }
};

OdeSystem lorenz(double sigma = 10.0, double rho = 28.0, double beta = 8.0 / 3.0);
OdeSystem rossler(double a = 0.1, double b = 0.1, double c = 14.0);
OdeSystem custom_system(long dim, std::function<VectorXd(const VectorXd&)> rhs,
                        std::function<MatrixXd(const VectorXd&)> jacobian = nullptr);

/// Right-hand side of the system's ODE at `state`.
VectorXd derivative(const OdeSystem& system, const VectorXd& state);

/// Jacobian of the right-hand side; analytic for built-ins, centered finite
/// differences (h = 1e-7) for unregistered custom systems.
MatrixXd system_jacobian(const OdeSystem& system, const VectorXd& state);

/// Integrate and sample every `dt`, producing steps+1 rows (row 0 = x0).
///
/// RK4 takes one fixed internal step per sample. RK45 (Dormand-Prince 5(4))
/// adapts between samples with absolute/relative tolerance 1e-10 and clips
/// steps so every sample time is hit exactly. States above 1e8 in magnitude
/// abort with an integration_error carrying the failing sample index.
Trajectory integrate(const OdeSystem& system, const VectorXd& x0, double dt, long steps,
                     IntegrationMethod method = IntegrationMethod::RK45, double t0 = 0.0);

/// Single RK4 step of size h (exposed for tangent-map propagation and tests).
VectorXd rk4_step(const OdeSystem& system, const VectorXd& x, double h);

enum class ObservationKind { Identity, Coordinate, Custom };

struct ObservationMap {
    ObservationKind kind = ObservationKind::Identity;
    long out_dim = 0;  // 0 with Identity means "same as input"
    long index = 0;    // Coordinate only
    std::function<VectorXd(const VectorXd&)> custom;
};

ObservationMap identity_observation();
ObservationMap coordinate_observation(long index);

/// Apply the observation map row-wise; keeps T, dt, t0.
Trajectory observe(const Trajectory& traj, const ObservationMap& map);

std::string to_string(SystemName name);

}  // namespace rcf
