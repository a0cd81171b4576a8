#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "veribench/learn.hpp"
#include "veribench/rng.hpp"

namespace veribench::learn {

double gini_impurity(std::uint64_t c0, std::uint64_t c1) {
    std::uint64_t n = c0 + c1;
    if (n == 0) return 0.0;
    double p0 = static_cast<double>(c0) / static_cast<double>(n);
    double p1 = static_cast<double>(c1) / static_cast<double>(n);
    return 1.0 - (p0 * p0 + p1 * p1);
}

namespace {

struct SplitChoice {
    bool valid = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = -1.0;  // impurity decrease, unweighted by node share
};

struct TreeGrower {
    const Matrix& X;
    const std::vector<int>& y;
    const ForestParams& p;
    std::size_t mtry;
    Rng rng;
    Tree tree;
    std::vector<double> decrease;  // per feature, weighted by node fraction
    double total_n = 0.0;

    // scratch reused across nodes
    std::vector<std::pair<double, int>> sorted;

    TreeGrower(const Matrix& X_, const std::vector<int>& y_, const ForestParams& p_,
               std::size_t mtry_, std::uint64_t seed)
        : X(X_), y(y_), p(p_), mtry(mtry_), rng(seed), decrease(X_.cols, 0.0) {}

    std::array<std::uint64_t, 2> count(const std::vector<std::size_t>& rows, std::size_t first,
                                       std::size_t last) const {
        std::array<std::uint64_t, 2> c{0, 0};
        for (std::size_t i = first; i < last; ++i) ++c[static_cast<std::size_t>(y[rows[i]])];
        return c;
    }

    SplitChoice best_split(std::vector<std::size_t>& rows, std::size_t first, std::size_t last,
                           const std::array<std::uint64_t, 2>& node_counts) {
        const std::size_t n = last - first;
        const double node_gini = gini_impurity(node_counts[0], node_counts[1]);
        auto candidates = sample_without_replacement(X.cols, mtry, rng);
        std::sort(candidates.begin(), candidates.end());

        SplitChoice best;
        for (std::size_t f : candidates) {
            if (p.split_rule == SplitRule::BEST_GINI) {
                sorted.clear();
                for (std::size_t i = first; i < last; ++i)
                    sorted.emplace_back(X.at(rows[i], f), y[rows[i]]);
                std::sort(sorted.begin(), sorted.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                std::array<std::uint64_t, 2> left{0, 0};
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    ++left[static_cast<std::size_t>(sorted[i].second)];
                    if (sorted[i].first == sorted[i + 1].first) continue;
                    std::size_t nl = i + 1, nr = n - nl;
                    if (nl < p.min_leaf || nr < p.min_leaf) continue;
                    std::array<std::uint64_t, 2> right{node_counts[0] - left[0],
                                                       node_counts[1] - left[1]};
                    double child =
                        (static_cast<double>(nl) * gini_impurity(left[0], left[1]) +
                         static_cast<double>(nr) * gini_impurity(right[0], right[1])) /
                        static_cast<double>(n);
                    double dec = node_gini - child;
                    if (dec > best.decrease) {
                        best = {true, f, (sorted[i].first + sorted[i + 1].first) / 2.0, dec};
                    }
                }
            } else {  // RANDOM_THRESHOLD
                double lo = X.at(rows[first], f), hi = lo;
                for (std::size_t i = first + 1; i < last; ++i) {
                    double v = X.at(rows[i], f);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                if (lo == hi) continue;
                double thr = rng.uniform(lo, hi);
                std::array<std::uint64_t, 2> left{0, 0};
                std::size_t nl = 0;
                for (std::size_t i = first; i < last; ++i) {
                    if (X.at(rows[i], f) <= thr) {
                        ++left[static_cast<std::size_t>(y[rows[i]])];
                        ++nl;
                    }
                }
                std::size_t nr = n - nl;
                if (nl < p.min_leaf || nr < p.min_leaf) continue;
                std::array<std::uint64_t, 2> right{node_counts[0] - left[0],
                                                   node_counts[1] - left[1]};
                double child = (static_cast<double>(nl) * gini_impurity(left[0], left[1]) +
                                static_cast<double>(nr) * gini_impurity(right[0], right[1])) /
                               static_cast<double>(n);
                double dec = node_gini - child;
                if (dec > best.decrease) best = {true, f, thr, dec};
            }
        }
        return best;
    }

    std::int32_t build(std::vector<std::size_t>& rows, std::size_t first, std::size_t last,
                       std::size_t depth) {
        auto node_counts = count(rows, first, last);
        std::int32_t id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[id].counts = node_counts;

        const std::size_t n = last - first;
        bool pure = node_counts[0] == 0 || node_counts[1] == 0;
        bool depth_capped = p.max_depth > 0 && depth >= p.max_depth;
        if (pure || n < 2 * p.min_leaf || n < 2 || depth_capped) return id;

        SplitChoice s = best_split(rows, first, last, node_counts);
        if (!s.valid || s.decrease <= 0.0) {
            if (!s.valid) return id;
            // zero-decrease splits still shrink the node; accept them so
            // RANDOM_THRESHOLD keeps slicing mixed nodes
            if (p.split_rule == SplitRule::BEST_GINI) return id;
        }

        auto mid_it = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(first),
                                     rows.begin() + static_cast<std::ptrdiff_t>(last),
                                     [&](std::size_t r) { return X.at(r, s.feature) <= s.threshold; });
        std::size_t mid = static_cast<std::size_t>(mid_it - rows.begin());

        decrease[s.feature] += (static_cast<double>(n) / total_n) * s.decrease;
        tree.nodes[id].feature = static_cast<std::int32_t>(s.feature);
        tree.nodes[id].threshold = s.threshold;
        std::int32_t left = build(rows, first, mid, depth + 1);
        tree.nodes[id].left = left;
        std::int32_t right = build(rows, mid, last, depth + 1);
        tree.nodes[id].right = right;
        return id;
    }
};

int leaf_vote(const TreeNode& leaf, int tie_class) {
    if (leaf.counts[0] > leaf.counts[1]) return 0;
    if (leaf.counts[1] > leaf.counts[0]) return 1;
    return tie_class;
}

int lexicographic_tie(const std::array<std::string, 2>& names) {
    return names[0] <= names[1] ? 0 : 1;
}

}  // namespace

TrainedModel train_forest(const Matrix& X, const std::vector<int>& y, const ForestParams& p,
                          const std::string& signature,
                          const std::array<std::string, 2>& class_names) {
    if (X.rows < 2) throw std::invalid_argument("train_forest: need at least 2 rows");
    if (y.size() != X.rows) throw std::invalid_argument("train_forest: label count mismatch");
    if (p.n_trees < 1) throw std::invalid_argument("train_forest: n_trees must be >= 1");
    bool seen[2] = {false, false};
    for (int c : y) {
        if (c != 0 && c != 1) throw std::invalid_argument("train_forest: labels must be 0 or 1");
        seen[c] = true;
    }
    for (int c = 0; c < 2; ++c)
        if (!seen[c])
            throw std::invalid_argument("train_forest: class '" + class_names[c] +
                                        "' absent from training labels");

    std::size_t mtry = p.mtry;
    if (mtry == 0)
        mtry = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(X.cols))));
    mtry = std::min(std::max<std::size_t>(mtry, 1), X.cols);

    TrainedModel m;
    m.kind = ModelKind::FOREST;
    m.signature = signature;
    m.class_names = class_names;
    m.forest_params = p;
    m.forest_params.mtry = mtry;
    m.impurity_decrease.assign(X.cols, 0.0);
    m.trees.resize(p.n_trees);

    std::vector<std::vector<double>> per_tree_decrease(p.n_trees);
    for (std::size_t t = 0; t < p.n_trees; ++t) {
        TreeGrower g(X, y, m.forest_params, mtry, derive_seed(p.seed, t));
        std::vector<std::size_t> rows;
        if (p.bootstrap) {
            rows.resize(X.rows);
            for (auto& r : rows) r = static_cast<std::size_t>(g.rng.below(X.rows));
        } else {
            rows.resize(X.rows);
            for (std::size_t i = 0; i < X.rows; ++i) rows[i] = i;
        }
        g.total_n = static_cast<double>(rows.size());
        g.build(rows, 0, rows.size(), 0);
        m.trees[t] = std::move(g.tree);
        per_tree_decrease[t] = std::move(g.decrease);
    }
    // fixed-order reduction keeps parallel tree training bit-identical
    for (std::size_t t = 0; t < p.n_trees; ++t)
        for (std::size_t f = 0; f < X.cols; ++f)
            m.impurity_decrease[f] += per_tree_decrease[t][f];
    return m;
}

std::vector<int> predict_forest(const TrainedModel& m, const Matrix& X, Matrix* vote_fractions) {
    if (m.kind != ModelKind::FOREST)
        throw std::invalid_argument("predict_forest: model is not a forest");
    const int tie = lexicographic_tie(m.class_names);
    std::vector<int> out(X.rows);
    if (vote_fractions) *vote_fractions = Matrix(X.rows, 2);

    for (std::size_t r = 0; r < X.rows; ++r) {
        const double* x = X.row(r);
        std::size_t votes[2] = {0, 0};
        for (const auto& tree : m.trees) {
            std::int32_t id = 0;
            while (tree.nodes[static_cast<std::size_t>(id)].feature >= 0) {
                const TreeNode& nd = tree.nodes[static_cast<std::size_t>(id)];
                id = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
            }
            ++votes[static_cast<std::size_t>(
                leaf_vote(tree.nodes[static_cast<std::size_t>(id)], tie))];
        }
        int winner;
        if (votes[0] > votes[1]) winner = 0;
        else if (votes[1] > votes[0]) winner = 1;
        else winner = tie;
        out[r] = winner;
        if (vote_fractions) {
            double total = static_cast<double>(votes[0] + votes[1]);
            vote_fractions->at(r, 0) = static_cast<double>(votes[0]) / total;
            vote_fractions->at(r, 1) = static_cast<double>(votes[1]) / total;
        }
    }
    return out;
}

std::vector<double> feature_importance(const TrainedModel& m) {
    if (m.kind != ModelKind::FOREST)
        throw std::invalid_argument("feature_importance: model is not a forest");
    std::vector<double> v = m.impurity_decrease;
    double total = 0.0;
    for (double x : v) total += x;
    if (total <= 0.0) {
        // no split ever fired: uniform by convention
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
        return v;
    }
    for (double& x : v) x /= total;
    return v;
}

}  // namespace veribench::learn
