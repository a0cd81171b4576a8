#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "veribench/corpus.hpp"
#include "veribench/embed.hpp"
#include "veribench/learn.hpp"
#include "veribench/matrix.hpp"
#include "veribench/textfeat.hpp"

namespace veribench::eval {

// Class index convention everywhere: 0 = reliable (positive), 1 = unreliable.
inline constexpr std::array<const char*, 2> kClassNames = {"reliable", "unreliable"};
int class_index(corpus::ArticleClass c);

struct LabeledRow {
    std::string article_id;
    std::vector<double> features;  // precomputed vector (may be empty for token datasets)
    corpus::ArticleClass cls = corpus::ArticleClass::RELIABLE;
    std::string source_name;
    corpus::Group group = corpus::Group::NONE;
};

struct LabeledDataset {
    std::vector<LabeledRow> rows;
    std::string signature;  // signature of `features` when precomputed
    // Token stream per row, kept so embedding cells can train inside each
    // fold on train-side text only.
    std::vector<std::vector<std::string>> tokens;
    bool has_tokens = false;
};

/// Rows from a corpus plus precomputed per-article features (parallel order).
LabeledDataset build_dataset(const corpus::Corpus& c,
                             const std::vector<text::FeatureVector>& feats,
                             const std::string& signature);

/// Rows plus lowercased word-token streams for embedding training.
LabeledDataset build_token_dataset(const corpus::Corpus& c);

// ---------------------------------------------------------------------------
// Split plans
// ---------------------------------------------------------------------------

enum class Scheme { ARTICLE, SOURCE, COUNTRY };
const char* to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct SplitConfig {
    double test_fraction = 0.2;
    std::size_t folds = 20;
    std::uint64_t seed = 0;
    bool stratify_sources = true;  // source scheme only; strict paper mode turns it off
};

struct Fold {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
};

struct SplitPlan {
    Scheme scheme = Scheme::ARTICLE;
    std::vector<Fold> folds;
    corpus::Group train_group = corpus::Group::NONE;  // COUNTRY only
    corpus::Group test_group = corpus::Group::NONE;
};

/// Each fold independently resamples test_fraction of the article ids
/// (resampling, not a k-fold partition).
SplitPlan article_split_plan(const LabeledDataset& ds, const SplitConfig& cfg);

/// Holds out ceil(test_fraction * S) whole sources per fold, stratified so
/// both classes appear in test when the held-out count allows; folds whose
/// train side loses a class are resampled (hard error after 100 attempts).
SplitPlan source_split_plan(const LabeledDataset& ds, const SplitConfig& cfg);

/// One fold: train = reliable(train_group) + all unreliable, test = reliable
/// articles of the other group only.
SplitPlan country_split_plan(const LabeledDataset& ds, corpus::Group train_group);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct FeatureSpec {
    enum class Kind { PRECOMPUTED, D2V } kind = Kind::PRECOMPUTED;
    bool scaled = false;
    embed::EmbeddingConfig d2v;    // seed field ignored; derived per fold
    std::size_t infer_steps = 50;  // d2v test-side inference epochs
};

struct ModelSpec {
    enum class Kind { FOREST, EXTRA_TREES, SVM } kind = Kind::FOREST;
    learn::ForestParams forest;  // seed field ignored; derived per fold
    learn::SvmParams svm;
};
const char* to_string(ModelSpec::Kind k);

/// rows = true class, cols = predicted. normalize divides each row by its
/// true-class count; a class absent from y_true gives a zero row, flagged
/// through `absent`.
Matrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                        bool normalize, std::array<bool, 2>* absent = nullptr);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);

struct RunManifest {
    std::uint64_t run_seed = 0;
    std::string feature_signature;
    std::string embedding_tag;  // set for d2v cells
    std::string scheme;
    std::string model;
    std::size_t folds = 0;
    std::size_t rows = 0;
};

struct ExperimentResult {
    std::vector<double> fold_accuracies;
    double mean = 0.0;
    double stddev = 0.0;  // population, over folds
    Matrix confusion{2, 2};  // fold-averaged normalized confusion
    std::array<bool, 2> confusion_row_defined{false, false};
    // Per-fold normalized confusions backing the average; a row whose class
    // was absent from that fold's test side is flagged in fold_row_absent.
    std::vector<Matrix> fold_confusions;
    std::vector<std::array<bool, 2>> fold_row_absent;
    bool has_importance = false;          // forest cells only
    std::vector<double> importance_mean;  // fold-mean importance, sums to 1
    learn::ConcentrationStats concentration;
    RunManifest manifest;
};

/// Runs every fold of the plan: fit scaler (scaled variants) and embeddings
/// (d2v) on the train side only, train the model, score the test side.
/// Deterministic for any worker count; workers>1 parallelizes across folds.
ExperimentResult run_experiment(const LabeledDataset& ds, const SplitPlan& plan,
                                const ModelSpec& mspec, const FeatureSpec& fspec,
                                std::uint64_t run_seed, std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

struct LabeledResult {
    std::string feature_label;  // NELA / NELA-scaled / D2V / D2V-scaled
    std::string model_label;    // random_forest / extra_trees / svm
    std::string trained_on;     // US-vs-UR / UK-vs-UR / US+UK-vs-UR
    std::string scheme;         // article / source / country
    ExperimentResult result;
};

struct ResultRow {
    std::string feature_label;
    std::string model_label;
    std::string trained_on;
    std::string scheme;
    std::size_t folds = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::string cell;  // "0.904 (+/- 0.01)", or bare mean for single-fold schemes
};

struct ResultsTable {
    std::vector<ResultRow> rows;
};

/// "mean (+/- std)" strings; single-fold rows carry no std. Duplicate
/// (feature, model, trained_on, scheme) keys raise.
ResultsTable aggregate_results(const std::vector<LabeledResult>& results);

std::string format_cell(double mean, double stddev, std::size_t folds);

void write_results_csv(const ResultsTable& t, const std::string& path);
void write_results_text(const ResultsTable& t, const std::string& path);
/// One row per (feature, model, trained_on), one column per scheme, "-" for
/// cells that were not run.
void write_pivot_csv(const ResultsTable& t, const std::string& path);
void write_pivot_text(const ResultsTable& t, const std::string& path);

/// Full ExperimentResult as schema-versioned JSON text.
std::string result_to_json(const ExperimentResult& r);

}  // namespace veribench::eval
