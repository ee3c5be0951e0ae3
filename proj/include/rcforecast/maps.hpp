#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "rcforecast/dynsys.hpp"

namespace rcf {

/// Discrete-time map with tangent (Jacobian) products, the handle consumed
/// by the Lyapunov and linearized-sequence routines. Implementations must be
/// immutable so handles can be shared across threads.
class DifferentiableMap {
public:
    virtual ~DifferentiableMap() = default;
    virtual long dim() const = 0;
    virtual VectorXd apply(const VectorXd& x) const = 0;
    virtual MatrixXd jacobian(const VectorXd& x) const = 0;
    /// D(map)(x) * tangent, default via the full Jacobian.
    virtual MatrixXd apply_tangent(const VectorXd& x, const MatrixXd& tangent) const {
        return jacobian(x) * tangent;
    }
};

/// One-step map of a flow: `substeps` RK4 steps of size dt/substeps. The
/// Jacobian propagates tangents through the RK4 stages using the system's
/// Jacobian (analytic when registered, finite differences otherwise).
class FlowMap : public DifferentiableMap {
public:
    FlowMap(OdeSystem system, double dt, long substeps = 1);
    long dim() const override { return system_.dim; }
    VectorXd apply(const VectorXd& x) const override;
    MatrixXd jacobian(const VectorXd& x) const override;

private:
    OdeSystem system_;
    double dt_;
    long substeps_;
};

/// Map given by plain callables; jacobian may be omitted, in which case
/// centered finite differences with h = 1e-7 are used.
class CallableMap : public DifferentiableMap {
public:
    CallableMap(long dim, std::function<VectorXd(const VectorXd&)> f,
                std::function<MatrixXd(const VectorXd&)> jac = nullptr)
        : dim_(dim), f_(std::move(f)), jac_(std::move(jac)) {}
    long dim() const override { return dim_; }
    VectorXd apply(const VectorXd& x) const override { return f_(x); }
    MatrixXd jacobian(const VectorXd& x) const override;

private:
    long dim_;
    std::function<VectorXd(const VectorXd&)> f_;
    std::function<MatrixXd(const VectorXd&)> jac_;
};

/// x -> diag(d) x ; constant Jacobian diag(d).
class DiagonalLinearMap : public DifferentiableMap {
public:
    explicit DiagonalLinearMap(VectorXd diag) : diag_(std::move(diag)) {}
    long dim() const override { return diag_.size(); }
    VectorXd apply(const VectorXd& x) const override { return diag_.cwiseProduct(x); }
    MatrixXd jacobian(const VectorXd&) const override { return diag_.asDiagonal(); }
    MatrixXd apply_tangent(const VectorXd&, const MatrixXd& t) const override {
        return diag_.asDiagonal() * t;
    }

private:
    VectorXd diag_;
};

}  // namespace rcf
