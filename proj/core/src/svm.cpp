#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "veribench/learn.hpp"
#include "veribench/rng.hpp"

namespace veribench::learn {

// Dual coordinate descent for min_w 1/2 ||w||^2 + C sum max(0, 1 - y_i w.x_i),
// bias folded in as an augmented constant-1 feature (so b is regularized).
// Follows the standard projected-gradient update per coordinate:
//   G = y_i w.x_i - 1;  alpha_i <- clip(alpha_i - G/Q_ii, [0, C])
TrainedModel train_svm(const Matrix& X, const std::vector<int>& y, const SvmParams& p,
                       const std::string& signature,
                       const std::array<std::string, 2>& class_names,
                       std::vector<double>* epoch_duals) {
    if (!is_scaled_signature(signature))
        throw std::invalid_argument(
            "train_svm: feature signature '" + signature +
            "' is not a scaled variant; the SVM requires scaled+normalized features");
    if (X.rows < 2) throw std::invalid_argument("train_svm: need at least 2 rows");
    if (y.size() != X.rows) throw std::invalid_argument("train_svm: label count mismatch");
    if (!(p.C > 0.0)) throw std::invalid_argument("train_svm: C must be > 0");
    if (!(p.tolerance > 0.0)) throw std::invalid_argument("train_svm: tolerance must be > 0");

    bool seen[2] = {false, false};
    std::vector<double> ys(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        if (y[i] != 0 && y[i] != 1)
            throw std::invalid_argument("train_svm: labels must be 0 or 1");
        seen[y[i]] = true;
        ys[i] = y[i] == 0 ? 1.0 : -1.0;  // class index 0 is the +1 side
    }
    for (int c = 0; c < 2; ++c)
        if (!seen[c])
            throw std::invalid_argument("train_svm: class '" + class_names[c] +
                                        "' absent from training labels");

    const std::size_t n = X.rows;
    const std::size_t d = X.cols;
    const std::size_t da = d + 1;  // augmented

    std::vector<double> qii(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 1.0;  // the constant-1 feature
        const double* x = X.row(i);
        for (std::size_t j = 0; j < d; ++j) s += x[j] * x[j];
        qii[i] = s;
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> w(da, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    Rng rng(derive_seed(p.seed, "svm-perm"));
    auto dual_objective = [&] {
        double sum_alpha = 0.0, wnorm = 0.0;
        for (double a : alpha) sum_alpha += a;
        for (double v : w) wnorm += v * v;
        return sum_alpha - 0.5 * wnorm;
    };

    for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
        shuffle(order, rng);
        double max_violation = 0.0;
        for (std::size_t idx : order) {
            const double* x = X.row(idx);
            double g = 0.0;
            for (std::size_t j = 0; j < d; ++j) g += w[j] * x[j];
            g += w[d];  // bias feature
            g = ys[idx] * g - 1.0;

            double pg;
            if (alpha[idx] == 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[idx] == p.C)
                pg = std::max(g, 0.0);
            else
                pg = g;
            max_violation = std::max(max_violation, std::fabs(pg));
            if (pg == 0.0) continue;

            double a_new = std::clamp(alpha[idx] - g / qii[idx], 0.0, p.C);
            double delta = (a_new - alpha[idx]) * ys[idx];
            if (delta != 0.0) {
                for (std::size_t j = 0; j < d; ++j) w[j] += delta * x[j];
                w[d] += delta;
            }
            alpha[idx] = a_new;
        }
        if (epoch_duals) epoch_duals->push_back(dual_objective());
        if (max_violation < p.tolerance) break;
    }

    TrainedModel m;
    m.kind = ModelKind::SVM;
    m.signature = signature;
    m.class_names = class_names;
    m.svm_params = p;
    m.w.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    m.b = w[d];
    for (double v : m.w)
        if (!std::isfinite(v)) throw std::logic_error("train_svm: non-finite weight");
    return m;
}

std::vector<int> predict_svm(const TrainedModel& m, const Matrix& X) {
    if (m.kind != ModelKind::SVM)
        throw std::invalid_argument("predict_svm: model is not an svm");
    if (X.cols != m.w.size())
        throw std::invalid_argument("predict_svm: feature dimension mismatch");
    std::vector<int> out(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const double* x = X.row(r);
        double s = m.b;
        for (std::size_t j = 0; j < X.cols; ++j) s += m.w[j] * x[j];
        out[r] = s >= 0.0 ? 0 : 1;  // 0 is the +1 side; ties go positive
    }
    return out;
}

std::vector<int> predict(const TrainedModel& m, const Matrix& X) {
    return m.kind == ModelKind::FOREST ? predict_forest(m, X) : predict_svm(m, X);
}

}  // namespace veribench::learn
