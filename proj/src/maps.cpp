#include "rcforecast/maps.hpp"

namespace rcf {

FlowMap::FlowMap(OdeSystem system, double dt, long substeps)
    : system_(std::move(system)), dt_(dt), substeps_(substeps) {
    if (dt <= 0.0) throw std::invalid_argument("FlowMap: dt must be positive");
    if (substeps < 1) throw std::invalid_argument("FlowMap: substeps must be >= 1");
}

VectorXd FlowMap::apply(const VectorXd& x) const {
    const double h = dt_ / static_cast<double>(substeps_);
    VectorXd y = x;
    for (long s = 0; s < substeps_; ++s) y = rk4_step(system_, y, h);
    return y;
}

MatrixXd FlowMap::jacobian(const VectorXd& x) const {
    const double h = dt_ / static_cast<double>(substeps_);
    const long n = system_.dim;
    const MatrixXd eye = MatrixXd::Identity(n, n);
    VectorXd y = x;
    MatrixXd d = eye;
    for (long s = 0; s < substeps_; ++s) {
        // variational RK4: differentiate each stage
        const VectorXd k1 = derivative(system_, y);
        const MatrixXd m1 = system_jacobian(system_, y);
        const VectorXd y2 = y + 0.5 * h * k1;
        const VectorXd k2 = derivative(system_, y2);
        const MatrixXd m2 = system_jacobian(system_, y2) * (eye + 0.5 * h * m1);
        const VectorXd y3 = y + 0.5 * h * k2;
        const VectorXd k3 = derivative(system_, y3);
        const MatrixXd m3 = system_jacobian(system_, y3) * (eye + 0.5 * h * m2);
        const VectorXd y4 = y + h * k3;
        const VectorXd k4 = derivative(system_, y4);
        const MatrixXd m4 = system_jacobian(system_, y4) * (eye + h * m3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        d = (eye + (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4)) * d;
    }
    return d;
}

MatrixXd CallableMap::jacobian(const VectorXd& x) const {
    if (jac_) return jac_(x);
    const double h = 1e-7;
    MatrixXd j(dim_, dim_);
    VectorXd xp = x, xm = x;
    for (long c = 0; c < dim_; ++c) {
        xp[c] += h;
        xm[c] -= h;
        j.col(c) = (f_(xp) - f_(xm)) / (2.0 * h);
        xp[c] = x[c];
        xm[c] = x[c];
    }
    return j;
}

}  // namespace rcf
