#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "rcforecast/linops.hpp"
#include "rcforecast/maps.hpp"
#include "rcforecast/trajectory.hpp"

namespace rcf {

enum class Activation { Tanh };

/// Random reservoir: state map F(x, y) = tanh(A x + gamma * C y + zeta).
/// gamma is kept separate from C so hyperparameter search can rescale the
/// input mask without regenerating the draw.
struct EsnParams {
    CsrMatrix a;                // L x L sparse connectivity
    MatrixXd c;                 // L x d dense input mask
    VectorXd zeta;              // length L bias, zero by default
    double gamma = 1.0;
    long reservoir_size = 0;    // L
    long input_dim = 0;         // d
    Activation activation = Activation::Tanh;
    std::uint64_t seed = 0;
    double spectral_radius_target = 0.0;
};

/// Affine readout h(x) = W x + a.
struct Readout {
    MatrixXd w;  // d x L
    VectorXd a;  // d

    VectorXd apply(const VectorXd& x) const { return w * x + a; }
};

struct LipschitzConstants {
    double l_x = 0.0;  // ||A||_2
    double l_z = 0.0;  // gamma * ||C||_2
    double l_h = 0.0;  // ||W||_2
};

struct TrainedEsn {
    EsnParams params;
    Readout readout;
    LipschitzConstants lipschitz;
};

/// Draw a reservoir: A gets round(density * L^2) nonzeros at positions
/// sampled without replacement, values U[-1,1], then rescaled so its
/// spectral radius hits the target (1e-8 power-iteration tolerance); C is
/// dense U[-1,1]; zeta is zero. Deterministic in `seed`.
EsnParams generate(std::uint64_t seed, long reservoir_size, long input_dim,
                   double spectral_radius, double gamma, double density);

/// Same draw, different spectral radius: rescales A's values in place
/// (spectral radius is homogeneous in the matrix scale).
EsnParams with_spectral_radius(const EsnParams& params, double spectral_radius);

/// One reservoir update tanh(A x + gamma * C y + zeta).
VectorXd step(const EsnParams& params, const VectorXd& x, const VectorXd& y);

/// Teacher-forced run: x_{t+1} = step(x_t, y_t) for every input row.
/// Output row t is x_{t+1}; same row count as `inputs`, x0 excluded, t0
/// shifted one sample forward.
Trajectory drive(const EsnParams& params, const VectorXd& x0, const Trajectory& inputs);

/// Autonomous (closed-loop) map Phi(x) = F(x, h(x)).
VectorXd closed_loop_step(const TrainedEsn& te, const VectorXd& x);

/// D(Phi)(x) = diag(1 - tanh^2(u)) (A + gamma C W), u the pre-activation.
MatrixXd jacobian_phi(const TrainedEsn& te, const VectorXd& x);

/// Operator norms via power iteration (1e-8 relative, <= 10000 iterations):
/// L_x = ||A||_2, L_z = gamma ||C||_2, L_h = ||W||_2 (tanh' has sup 1).
LipschitzConstants lipschitz_constants(const EsnParams& params, const Readout& readout);

/// DifferentiableMap view of the closed loop; tangents use the sparse A and
/// the low-rank C W factorization instead of forming A + gamma C W.
class EsnClosedLoopMap : public DifferentiableMap {
public:
    explicit EsnClosedLoopMap(const TrainedEsn& te) : te_(te) {}
    long dim() const override { return te_.params.reservoir_size; }
    VectorXd apply(const VectorXd& x) const override { return closed_loop_step(te_, x); }
    MatrixXd jacobian(const VectorXd& x) const override { return jacobian_phi(te_, x); }
    MatrixXd apply_tangent(const VectorXd& x, const MatrixXd& tangent) const override;

private:
    const TrainedEsn& te_;
};

/// Model persistence: single JSON document, floats with 17 significant
/// digits. Schema: {L, d, gamma, seed, spectral_radius,
/// A:{row_ptr,col_idx,values}, C (row-major), zeta, W (row-major), a,
/// activation}.
void save_model(const TrainedEsn& te, const std::string& path);
TrainedEsn load_model(const std::string& path);

}  // namespace rcf
