#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "veribench/corpus.hpp"
#include "veribench/eval.hpp"

namespace veribench::bench {

// ---------------------------------------------------------------------------
// Synthetic corpus
// ---------------------------------------------------------------------------

/// Style knobs for one generator regime. Rates are per-slot probabilities;
/// sentence_len is the mean token count before per-sentence jitter.
struct RegimeKnobs {
    double exclaim_rate = 0.0;
    double allcaps_rate = 0.0;
    double sentence_len = 16.0;
    double hedge_rate = 0.0;
};

struct SyntheticSpec {
    std::size_t sources_per_class = 5;  // per regime; three regimes total
    std::size_t articles_per_source = 200;
    RegimeKnobs us_reliable{0.08, 0.03, 17.0, 0.06};
    RegimeKnobs uk_reliable{0.20, 0.08, 13.0, 0.10};
    RegimeKnobs unreliable{0.30, 0.11, 10.0, 0.13};
    // Bound on how far a source may drift from its regime's house style
    // toward the opposing register. Unreliable sources get a wider bound, so
    // the occasional one imitates the reliable profile; that is what makes
    // held-out-source error asymmetric by class.
    double reliable_jitter = 0.25;
    double unreliable_jitter = 0.75;
};

/// Deterministic three-regime corpus: US-spelling reliable sources, UK-spelling
/// reliable sources, and US-spelling unreliable sources whose style knobs sit
/// far from the US reliable regime. Same spec + seed -> identical corpus.
corpus::Corpus generate_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Experiment grid configuration
// ---------------------------------------------------------------------------

enum class FeatureFamily { NELA, NELA_SCALED, D2V, D2V_SCALED };
enum class TrainDef { US_VS_UR, UK_VS_UR, USUK_VS_UR };

const char* label(FeatureFamily f);  // NELA / NELA-scaled / D2V / D2V-scaled
const char* label(TrainDef d);       // US-vs-UR / UK-vs-UR / US+UK-vs-UR
const char* slug(FeatureFamily f);   // nela / nela-scaled / d2v / d2v-scaled
const char* slug(TrainDef d);        // us-vs-ur / uk-vs-ur / us+uk-vs-ur
const char* slug(eval::ModelSpec::Kind m);
const char* slug(eval::Scheme s);

struct ExperimentConfig {
    // [data]
    std::string corpus_path;
    std::string roster_path;
    corpus::ArticleFormat format = corpus::ArticleFormat::JSONL;
    std::string lexicon_path;          // empty = built-in starter lexicons
    bool synthetic = false;            // generate instead of loading
    std::size_t sample_per_source = 0; // 0 = no balanced sampling pass
    bool allow_short = true;

    // [synthetic]
    SyntheticSpec synth;

    // [grid]
    std::vector<FeatureFamily> features{FeatureFamily::NELA, FeatureFamily::NELA_SCALED,
                                        FeatureFamily::D2V, FeatureFamily::D2V_SCALED};
    std::vector<eval::ModelSpec::Kind> models{eval::ModelSpec::Kind::FOREST,
                                              eval::ModelSpec::Kind::EXTRA_TREES,
                                              eval::ModelSpec::Kind::SVM};
    std::vector<TrainDef> defs{TrainDef::US_VS_UR, TrainDef::UK_VS_UR, TrainDef::USUK_VS_UR};
    std::vector<eval::Scheme> schemes{eval::Scheme::ARTICLE, eval::Scheme::SOURCE,
                                      eval::Scheme::COUNTRY};

    // [split]
    eval::SplitConfig split;  // seed field ignored; derived per (def, scheme)

    // [forest]  bootstrap/split_rule/seed ignored; fixed by the model family
    learn::ForestParams forest;

    // [svm]
    learn::SvmParams svm;  // seed ignored

    // [embedding]
    embed::EmbeddingConfig d2v;  // seed ignored; derived per fold
    std::size_t infer_steps = 50;

    // [run]
    std::string out_dir = "out";
    std::uint64_t master_seed = 42;
    std::size_t workers = 1;
};

/// Every constraint violation in the config, empty when valid. Checks cover
/// grid emptiness, an SVM with no scaled feature family to pair with, the
/// US+UK definition confined to the country scheme, and parameter ranges.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// Parses the line-oriented `key = value` format with [section] headers.
/// '#' or ';' start a comment line; " #" starts a trailing comment. Unknown
/// sections or keys are errors. Throws std::runtime_error listing every
/// problem found (parse errors and constraint violations), not just the
/// first. `origin` names the source in messages.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config(const std::string& path);

/// Canonical round-trippable rendering: fixed section and key order, %.17g
/// numbers. parse_config_text(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& cfg);

/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Heatmaps
// ---------------------------------------------------------------------------

/// Standalone SVG for a 2x2 row-normalized confusion matrix: grayscale cells,
/// two-decimal annotations, axis labels. An undefined row renders flat cells
/// annotated "n/a". Throws std::invalid_argument unless m is 2x2.
std::string emit_heatmap(const Matrix& m,
                         const std::array<bool, 2>& row_defined = {true, true},
                         const std::string& title = "");

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 1 invalid config/data, 2 cell or IO failure
    std::size_t cells_attempted = 0;
    std::size_t cells_ok = 0;
    std::vector<std::string> failures;
    eval::ResultsTable table;
};

/// Runs the whole allowed grid: per-cell result JSON and confusion SVG, then
/// aggregate CSV/text tables, a pivot table, manifest.json, and on any cell
/// failure a failures.txt ledger (partial artifacts are kept). Deterministic
/// for a fixed config + master seed at any worker count.
RunOutcome run(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Parses one per-cell result JSON written by run().
eval::LabeledResult read_cell_json(const std::string& text);

/// Rebuilds aggregate tables from per-cell JSON files under <results_dir>.
/// Returns the table; writes nothing.
eval::ResultsTable collect_results(const std::string& results_dir);

}  // namespace veribench::bench
