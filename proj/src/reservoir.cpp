#include "rcforecast/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rcforecast/errors.hpp"
#include "rcforecast/rng.hpp"
#include "rcforecast/textio.hpp"

namespace rcf {

namespace {

// substream labels for generate()
constexpr std::uint64_t kStreamPositions = 0;
constexpr std::uint64_t kStreamValues = 1;
constexpr std::uint64_t kStreamInputMask = 2;

VectorXd preactivation(const EsnParams& p, const VectorXd& x, const VectorXd& y) {
    return p.a.multiply(x) + p.gamma * (p.c * y) + p.zeta;
}

}  // namespace

EsnParams generate(std::uint64_t seed, long reservoir_size, long input_dim,
                   double spectral_radius, double gamma, double density) {
    if (reservoir_size < 1 || input_dim < 1)
        throw std::invalid_argument("generate: reservoir_size and input_dim must be >= 1");
    if (spectral_radius <= 0.0) throw std::invalid_argument("generate: spectral_radius <= 0");
    if (density <= 0.0 || density > 1.0)
        throw std::invalid_argument("generate: density must be in (0, 1]");

    const long l = reservoir_size;
    const std::uint64_t total = static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>(l);
    std::uint64_t nnz =
        static_cast<std::uint64_t>(std::llround(density * static_cast<double>(total)));
    nnz = std::max<std::uint64_t>(1, std::min(nnz, total));

    // Floyd's algorithm: sample nnz linear indices without replacement.
    SplitMix64 pos_rng = SplitMix64::derive(seed, kStreamPositions);
    std::vector<std::uint64_t> picked;
    picked.reserve(nnz);
    {
        std::vector<bool> taken;  // dense bitmap; L^2 bits is small at desk scale
        taken.assign(total, false);
        for (std::uint64_t j = total - nnz; j < total; ++j) {
            const std::uint64_t t = pos_rng.below(j + 1);
            if (!taken[t]) {
                taken[t] = true;
                picked.push_back(t);
            } else {
                taken[j] = true;
                picked.push_back(j);
            }
        }
    }
    std::sort(picked.begin(), picked.end());

    std::vector<std::pair<long, long>> positions;
    positions.reserve(nnz);
    for (const std::uint64_t lin : picked)
        positions.emplace_back(static_cast<long>(lin / static_cast<std::uint64_t>(l)),
                               static_cast<long>(lin % static_cast<std::uint64_t>(l)));

    SplitMix64 val_rng = SplitMix64::derive(seed, kStreamValues);
    std::vector<double> values(nnz);
    for (auto& v : values) v = val_rng.uniform(-1.0, 1.0);

    EsnParams p;
    p.a = CsrMatrix::from_sorted_entries(l, l, positions, values);
    p.reservoir_size = l;
    p.input_dim = input_dim;
    p.gamma = gamma;
    p.zeta = VectorXd::Zero(l);
    p.seed = seed;
    p.spectral_radius_target = spectral_radius;

    SplitMix64 mask_rng = SplitMix64::derive(seed, kStreamInputMask);
    p.c.resize(l, input_dim);
    for (long r = 0; r < l; ++r)
        for (long c = 0; c < input_dim; ++c) p.c(r, c) = mask_rng.uniform(-1.0, 1.0);

    const double rho = rcf::spectral_radius(p.a);
    if (rho <= 0.0 || !std::isfinite(rho))
        throw numerical_error(
            "generate: connectivity draw has zero spectral radius; try a different seed");
    p.a.scale(spectral_radius / rho);
    return p;
}

EsnParams with_spectral_radius(const EsnParams& params, double spectral_radius) {
    if (spectral_radius <= 0.0)
        throw std::invalid_argument("with_spectral_radius: target must be positive");
    if (params.spectral_radius_target <= 0.0)
        throw std::invalid_argument("with_spectral_radius: source radius unknown");
    EsnParams p = params;
    p.a.scale(spectral_radius / params.spectral_radius_target);
    p.spectral_radius_target = spectral_radius;
    return p;
}

VectorXd step(const EsnParams& params, const VectorXd& x, const VectorXd& y) {
    if (x.size() != params.reservoir_size || y.size() != params.input_dim)
        throw std::invalid_argument("step: dimension mismatch");
    return preactivation(params, x, y).array().tanh();
}

Trajectory drive(const EsnParams& params, const VectorXd& x0, const Trajectory& inputs) {
    if (inputs.cols() != params.input_dim)
        throw std::invalid_argument("drive: input dimension mismatch");
    Trajectory states;
    states.dt = inputs.dt;
    states.t0 = inputs.t0 + inputs.dt;
    states.data.resize(inputs.rows(), params.reservoir_size);
    VectorXd x = x0;
    for (long t = 0; t < inputs.rows(); ++t) {
        x = step(params, x, inputs.data.row(t).transpose());
        states.data.row(t) = x.transpose();
    }
    return states;
}

VectorXd closed_loop_step(const TrainedEsn& te, const VectorXd& x) {
    return step(te.params, x, te.readout.apply(x));
}

MatrixXd jacobian_phi(const TrainedEsn& te, const VectorXd& x) {
    const EsnParams& p = te.params;
    const VectorXd u = preactivation(p, x, te.readout.apply(x));
    const VectorXd dtanh = 1.0 - u.array().tanh().square();
    MatrixXd m = p.a.dense();
    m.noalias() += p.gamma * (p.c * te.readout.w);
    return dtanh.asDiagonal() * m;
}

MatrixXd EsnClosedLoopMap::apply_tangent(const VectorXd& x, const MatrixXd& tangent) const {
    const EsnParams& p = te_.params;
    const VectorXd u = preactivation(p, x, te_.readout.apply(x));
    const VectorXd dtanh = 1.0 - u.array().tanh().square();
    MatrixXd out(tangent.rows(), tangent.cols());
    for (long c = 0; c < tangent.cols(); ++c) {
        const VectorXd v = tangent.col(c);
        out.col(c) = p.a.multiply(v) + p.gamma * (p.c * (te_.readout.w * v));
    }
    return dtanh.asDiagonal() * out;
}

LipschitzConstants lipschitz_constants(const EsnParams& params, const Readout& readout) {
    if (readout.w.cols() != params.reservoir_size || readout.w.rows() != params.input_dim)
        throw std::invalid_argument("lipschitz_constants: readout dimensions inconsistent");
    LipschitzConstants lc;
    lc.l_x = top_singular_value(params.a);
    lc.l_z = params.gamma * top_singular_value(params.c);
    lc.l_h = top_singular_value(readout.w);
    return lc;
}

void save_model(const TrainedEsn& te, const std::string& path) {
    const EsnParams& p = te.params;
    JsonWriter w;
    w.begin_object();
    w.key("L").value(p.reservoir_size);
    w.key("d").value(p.input_dim);
    w.key("gamma").value(p.gamma);
    w.key("seed").value(static_cast<unsigned long long>(p.seed));
    w.key("spectral_radius").value(p.spectral_radius_target);
    w.key("A").begin_object();
    w.key("row_ptr").integer_array(p.a.row_ptr);
    w.key("col_idx").integer_array(p.a.col_idx);
    w.key("values").number_array(p.a.values);
    w.end_object();
    w.key("C").begin_array();
    for (long r = 0; r < p.c.rows(); ++r)
        for (long c = 0; c < p.c.cols(); ++c) w.value(p.c(r, c));
    w.end_array();
    w.key("zeta").begin_array();
    for (long i = 0; i < p.zeta.size(); ++i) w.value(p.zeta[i]);
    w.end_array();
    w.key("W").begin_array();
    for (long r = 0; r < te.readout.w.rows(); ++r)
        for (long c = 0; c < te.readout.w.cols(); ++c) w.value(te.readout.w(r, c));
    w.end_array();
    w.key("a").begin_array();
    for (long i = 0; i < te.readout.a.size(); ++i) w.value(te.readout.a[i]);
    w.end_array();
    w.key("activation").value("tanh");
    w.end_object();
    w.write_file(path);
}

TrainedEsn load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;

    TrainedEsn te;
    EsnParams& p = te.params;
    p.reservoir_size = j.at("L").get<long>();
    p.input_dim = j.at("d").get<long>();
    p.gamma = j.at("gamma").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.spectral_radius_target = j.at("spectral_radius").get<double>();
    if (j.at("activation").get<std::string>() != "tanh")
        throw std::runtime_error("load_model: unsupported activation");

    const auto& ja = j.at("A");
    p.a.rows = p.a.cols = p.reservoir_size;
    p.a.row_ptr = ja.at("row_ptr").get<std::vector<long>>();
    p.a.col_idx = ja.at("col_idx").get<std::vector<long>>();
    p.a.values = ja.at("values").get<std::vector<double>>();
    if (static_cast<long>(p.a.row_ptr.size()) != p.reservoir_size + 1 ||
        p.a.col_idx.size() != p.a.values.size())
        throw std::runtime_error("load_model: inconsistent sparse matrix");

    const auto cv = j.at("C").get<std::vector<double>>();
    if (static_cast<long>(cv.size()) != p.reservoir_size * p.input_dim)
        throw std::runtime_error("load_model: C has wrong size");
    p.c.resize(p.reservoir_size, p.input_dim);
    for (long r = 0; r < p.reservoir_size; ++r)
        for (long c = 0; c < p.input_dim; ++c) p.c(r, c) = cv[r * p.input_dim + c];

    const auto zv = j.at("zeta").get<std::vector<double>>();
    p.zeta = Eigen::Map<const VectorXd>(zv.data(), static_cast<long>(zv.size()));

    const auto wv = j.at("W").get<std::vector<double>>();
    if (static_cast<long>(wv.size()) != p.input_dim * p.reservoir_size)
        throw std::runtime_error("load_model: W has wrong size");
    te.readout.w.resize(p.input_dim, p.reservoir_size);
    for (long r = 0; r < p.input_dim; ++r)
        for (long c = 0; c < p.reservoir_size; ++c) te.readout.w(r, c) = wv[r * p.reservoir_size + c];

    const auto av = j.at("a").get<std::vector<double>>();
    te.readout.a = Eigen::Map<const VectorXd>(av.data(), static_cast<long>(av.size()));

    te.lipschitz = lipschitz_constants(p, te.readout);
    return te;
}

}  // namespace rcf
