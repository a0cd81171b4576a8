#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "veribench/matrix.hpp"

namespace veribench::learn {

// ---------------------------------------------------------------------------
// Scaling
// ---------------------------------------------------------------------------

/// Per-column z-score parameters (population std) fitted on training rows.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::string fitted_on;  // fold note for manifests
};

Scaler fit_scaler(const Matrix& X);  // throws on empty matrix

/// z-score per column (sigma=0 gives 0), then each row L2-normalized
/// (zero rows stay zero). Throws on column-count mismatch.
Matrix apply_scaler(const Scaler& s, const Matrix& X);

/// Signatures gain this suffix after scaling; the SVM trainer requires it.
inline constexpr const char* kScaledSuffix = "+scaled";
bool is_scaled_signature(std::string_view signature);

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

enum class SplitRule { BEST_GINI, RANDOM_THRESHOLD };

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t mtry = 0;       // 0 = ceil(sqrt(d))
    std::size_t min_leaf = 1;
    bool bootstrap = true;      // false + RANDOM_THRESHOLD = extra trees
    SplitRule split_rule = SplitRule::BEST_GINI;
    std::uint64_t seed = 0;
};

struct SvmParams {
    double C = 1.0;
    std::size_t epochs = 1000;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;    // x[feature] <= threshold goes left
    std::array<std::uint64_t, 2> counts{};  // class counts of training rows here
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

enum class ModelKind { FOREST, SVM };

/// Binary classifier over class indices {0, 1}; class_names give them
/// reportable names and drive the lexicographic tie-break.
struct TrainedModel {
    ModelKind kind = ModelKind::FOREST;
    std::string signature;  // feature signature accepted by predict
    std::array<std::string, 2> class_names{"reliable", "unreliable"};

    ForestParams forest_params;
    std::vector<Tree> trees;
    std::vector<double> impurity_decrease;  // per feature, summed over trees

    SvmParams svm_params;
    std::vector<double> w;  // svm weights, length d
    double b = 0.0;

    bool has_scaler = false;
    Scaler scaler;
};

double gini_impurity(std::uint64_t c0, std::uint64_t c1);

/// Random forest / extra trees. y holds class indices 0/1; both classes
/// required. Per-tree seeds derive from params.seed so any parallel
/// schedule reproduces the serial result.
TrainedModel train_forest(const Matrix& X, const std::vector<int>& y, const ForestParams& p,
                          const std::string& signature,
                          const std::array<std::string, 2>& class_names);

/// Majority vote; ties go to the lexicographically smaller class name.
/// vote_fractions (optional) receives an n x 2 matrix of per-class vote shares.
std::vector<int> predict_forest(const TrainedModel& m, const Matrix& X,
                                Matrix* vote_fractions = nullptr);

/// Mean-decrease-in-impurity importances, normalized to sum 1
/// (uniform when no split ever fired). Forest models only.
std::vector<double> feature_importance(const TrainedModel& m);

struct ConcentrationStats {
    double gini_coefficient = 0.0;
    double normalized_entropy = 0.0;
};

/// Uniformity statistics of a non-negative importance vector summing to 1.
ConcentrationStats importance_concentration(const std::vector<double>& v);

/// Linear L1-loss SVM by dual coordinate descent; bias as an augmented
/// constant-1 feature. Requires a scaled feature signature. epoch_duals
/// (optional) receives the dual objective after each epoch.
TrainedModel train_svm(const Matrix& X, const std::vector<int>& y, const SvmParams& p,
                       const std::string& signature,
                       const std::array<std::string, 2>& class_names,
                       std::vector<double>* epoch_duals = nullptr);

/// sign(w.x + b): positive or zero gives class index 0.
std::vector<int> predict_svm(const TrainedModel& m, const Matrix& X);

/// Signature-checked dispatch to the matching predictor.
std::vector<int> predict(const TrainedModel& m, const Matrix& X);

/// SVM and scaler persist as JSON; forests as a line-oriented tree dump.
void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace veribench::learn
