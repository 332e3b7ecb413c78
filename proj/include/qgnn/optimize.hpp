#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgnn {

/// A scalar objective over a flat parameter vector. `eval` must be
/// deterministic for a fixed seed and return finite values.
struct ObjectiveSpec {
    std::function<double(const Eigen::VectorXd&)> eval;
    int dim = 0;
    int budget = 1000;  // max evaluations (Nelder-Mead) or iterations (Adam)
};

/// One accepted iterate of an optimization run.
struct TracePoint {
    int iteration = 0;
    double loss = 0.0;
    double wall_ms = 0.0;
    Eigen::VectorXd params;
};

using TraceSink = std::function<void(const TracePoint&)>;

/// Central differences: g_i = (f(x + eps e_i) - f(x - eps e_i)) / (2 eps).
Eigen::VectorXd finite_diff_gradient(const ObjectiveSpec& obj,
                                     const Eigen::VectorXd& params, double eps);

struct AdamState {
    int t = 0;
    Eigen::VectorXd m, v;
    double lr = 0.02;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(int dim, double lr = 0.02);
};

/// Standard bias-corrected Adam update; advances the state in place and
/// returns the new parameter vector.
Eigen::VectorXd adam_step(AdamState& state, const Eigen::VectorXd& params,
                          const Eigen::VectorXd& grad);

struct NelderMeadResult {
    Eigen::VectorXd best;
    double loss = 0.0;
    bool converged = false;  // false: evaluation budget exhausted first
    int evaluations = 0;
};

/// Standard simplex method (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5). Initial simplex: init plus 0.1 per-coordinate perturbation
/// (0.00025 when the coordinate is zero). Stops when the simplex diameter
/// drops below 1e-6 or the budget runs out.
NelderMeadResult nelder_mead(const ObjectiveSpec& obj,
                             const Eigen::VectorXd& init,
                             const TraceSink& trace = nullptr);

}  // namespace qgnn
