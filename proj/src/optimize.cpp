#include "qgnn/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace qgnn {

Eigen::VectorXd finite_diff_gradient(const ObjectiveSpec& obj,
                                     const Eigen::VectorXd& params,
                                     double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("finite_diff_gradient: eps must be > 0");
    Eigen::VectorXd grad(params.size());
    Eigen::VectorXd probe = params;
    for (int i = 0; i < params.size(); ++i) {
        probe(i) = params(i) + eps;
        double fp = obj.eval(probe);
        probe(i) = params(i) - eps;
        double fm = obj.eval(probe);
        probe(i) = params(i);
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("finite_diff_gradient: non-finite objective");
        grad(i) = (fp - fm) / (2.0 * eps);
    }
    return grad;
}

AdamState AdamState::init(int dim, double lr) {
    AdamState s;
    s.m = Eigen::VectorXd::Zero(dim);
    s.v = Eigen::VectorXd::Zero(dim);
    s.lr = lr;
    return s;
}

Eigen::VectorXd adam_step(AdamState& state, const Eigen::VectorXd& params,
                          const Eigen::VectorXd& grad) {
    if (params.size() != state.m.size() || grad.size() != state.m.size())
        throw std::invalid_argument("adam_step: dimension mismatch");
    state.t += 1;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
    state.v = state.beta2 * state.v +
              (1.0 - state.beta2) * grad.cwiseProduct(grad).eval();
    const double c1 = 1.0 - std::pow(state.beta1, state.t);
    const double c2 = 1.0 - std::pow(state.beta2, state.t);
    Eigen::VectorXd m_hat = state.m / c1;
    Eigen::VectorXd v_hat = state.v / c2;
    Eigen::VectorXd out = params;
    for (int i = 0; i < out.size(); ++i)
        out(i) -= state.lr * m_hat(i) / (std::sqrt(v_hat(i)) + state.eps);
    return out;
}

NelderMeadResult nelder_mead(const ObjectiveSpec& obj,
                             const Eigen::VectorXd& init,
                             const TraceSink& trace) {
    const int dim = static_cast<int>(init.size());
    if (dim < 1) throw std::invalid_argument("nelder_mead: dim >= 1");
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    constexpr double kDiameterTol = 1e-6;

    const auto start = std::chrono::steady_clock::now();
    int evals = 0;
    auto f = [&](const Eigen::VectorXd& x) {
        ++evals;
        double v = obj.eval(x);
        if (!std::isfinite(v))
            throw std::runtime_error("nelder_mead: non-finite objective");
        return v;
    };
    auto emit = [&](int iter, double loss, const Eigen::VectorXd& x) {
        if (!trace) return;
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();
        trace({iter, loss, ms, x});
    };

    std::vector<Eigen::VectorXd> verts(dim + 1, init);
    for (int i = 0; i < dim; ++i)
        verts[i + 1](i) += init(i) != 0.0 ? 0.1 : 0.00025;
    std::vector<double> vals(dim + 1);
    for (int i = 0; i <= dim; ++i) vals[i] = f(verts[i]);

    bool converged = false;
    int iter = 0;
    while (evals < obj.budget) {
        std::vector<int> order(dim + 1);
        for (int i = 0; i <= dim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return vals[a] < vals[b]; });
        {
            std::vector<Eigen::VectorXd> v2(dim + 1);
            std::vector<double> l2(dim + 1);
            for (int i = 0; i <= dim; ++i) {
                v2[i] = verts[order[i]];
                l2[i] = vals[order[i]];
            }
            verts = std::move(v2);
            vals = std::move(l2);
        }
        emit(iter++, vals[0], verts[0]);

        double diameter = 0.0;
        for (int i = 1; i <= dim; ++i)
            diameter = std::max(diameter, (verts[i] - verts[0]).norm());
        if (diameter < kDiameterTol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < dim; ++i) centroid += verts[i];
        centroid /= dim;

        Eigen::VectorXd reflected = centroid + kReflect * (centroid - verts[dim]);
        double fr = f(reflected);
        if (fr < vals[0]) {
            Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
            double fe = f(expanded);
            if (fe < fr) {
                verts[dim] = expanded;
                vals[dim] = fe;
            } else {
                verts[dim] = reflected;
                vals[dim] = fr;
            }
        } else if (fr < vals[dim - 1]) {
            verts[dim] = reflected;
            vals[dim] = fr;
        } else {
            bool outside = fr < vals[dim];
            Eigen::VectorXd contracted =
                outside ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
                        : Eigen::VectorXd(centroid - kContract * (centroid - verts[dim]));
            double fc = f(contracted);
            if (fc < std::min(fr, vals[dim])) {
                verts[dim] = contracted;
                vals[dim] = fc;
            } else {
                for (int i = 1; i <= dim; ++i) {
                    verts[i] = verts[0] + kShrink * (verts[i] - verts[0]);
                    vals[i] = f(verts[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= dim; ++i)
        if (vals[i] < vals[best]) best = i;
    emit(iter, vals[best], verts[best]);
    return {verts[best], vals[best], converged, evals};
}

}  // namespace qgnn
