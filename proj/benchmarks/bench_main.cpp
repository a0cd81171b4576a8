// Microbenchmarks for the hot paths: text analysis, feature extraction,
// model training, embedding training and split planning. All inputs come
// from the synthetic generator so runs are self-contained and stable.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>
#include <vector>

#include "veribench/bench.hpp"
#include "veribench/embed.hpp"
#include "veribench/eval.hpp"
#include "veribench/learn.hpp"
#include "veribench/matrix.hpp"
#include "veribench/rng.hpp"
#include "veribench/textfeat.hpp"

namespace {

using namespace veribench;

const corpus::Corpus& small_corpus() {
    static const corpus::Corpus c = [] {
        bench::SyntheticSpec spec;
        spec.sources_per_class = 2;
        spec.articles_per_source = 25;
        return bench::generate_synthetic_corpus(spec, 7);
    }();
    return c;
}

// mid-length document for the per-article benchmarks
const corpus::Article& sample_article() {
    static const corpus::Article a = [] {
        const auto& articles = small_corpus().articles;
        return articles[articles.size() / 2];
    }();
    return a;
}

struct FeatureData {
    Matrix X;
    std::vector<int> y;
};

const FeatureData& feature_data() {
    static const FeatureData d = [] {
        const auto& c = small_corpus();
        const auto& catalog = text::nela_open_v1();
        const auto& lex = text::builtin_starter_lexicons();
        FeatureData out{Matrix(c.articles.size(), catalog.dimension()), {}};
        for (std::size_t i = 0; i < c.articles.size(); ++i) {
            auto fv = text::extract_features(c.articles[i], catalog, lex);
            for (std::size_t j = 0; j < fv.values.size(); ++j) out.X.at(i, j) = fv.values[j];
            const auto& entry = c.roster.at(c.articles[i].source_name);
            out.y.push_back(entry.cls == corpus::ArticleClass::RELIABLE ? 0 : 1);
        }
        return out;
    }();
    return d;
}

void BM_AnalyzeDocument(benchmark::State& state) {
    const auto& a = sample_article();
    const std::string text = a.title + "\n" + a.body;
    for (auto _ : state) {
        auto doc = text::analyze(text);
        benchmark::DoNotOptimize(doc.tokens.size());
    }
}
BENCHMARK(BM_AnalyzeDocument);

void BM_ExtractFeatures(benchmark::State& state) {
    const auto& a = sample_article();
    const auto& catalog = text::nela_open_v1();
    const auto& lex = text::builtin_starter_lexicons();
    for (auto _ : state) {
        auto fv = text::extract_features(a, catalog, lex);
        benchmark::DoNotOptimize(fv.values.data());
    }
}
BENCHMARK(BM_ExtractFeatures);

void BM_TrainForest(benchmark::State& state) {
    const auto& d = feature_data();
    learn::ForestParams p;
    p.n_trees = static_cast<std::size_t>(state.range(0));
    p.seed = 11;
    for (auto _ : state) {
        auto m = learn::train_forest(d.X, d.y, p, "nela-open-v1", {"reliable", "unreliable"});
        benchmark::DoNotOptimize(m.trees.size());
    }
}
BENCHMARK(BM_TrainForest)->Arg(10)->Arg(50);

void BM_TrainSvm(benchmark::State& state) {
    const auto& d = feature_data();
    auto scaler = learn::fit_scaler(d.X);
    Matrix Xs = learn::apply_scaler(scaler, d.X);
    learn::SvmParams p;
    p.epochs = 100;
    p.seed = 11;
    for (auto _ : state) {
        auto m = learn::train_svm(Xs, d.y, p, "nela-open-v1+scaled", {"reliable", "unreliable"});
        benchmark::DoNotOptimize(m.w.data());
    }
}
BENCHMARK(BM_TrainSvm);

void BM_EmbeddingEpoch(benchmark::State& state) {
    static const eval::LabeledDataset token_ds = eval::build_token_dataset(small_corpus());
    embed::EmbeddingConfig cfg;
    cfg.dimension = 50;
    cfg.epochs = 1;
    cfg.min_count = 2;
    cfg.seed = 11;
    for (auto _ : state) {
        auto m = embed::train(token_ds.tokens, cfg);
        benchmark::DoNotOptimize(m.doc_vectors.data.data());
    }
}
BENCHMARK(BM_EmbeddingEpoch);

void BM_SourceSplitPlan(benchmark::State& state) {
    static const eval::LabeledDataset ds = [] {
        const auto& c = small_corpus();
        const auto& catalog = text::nela_open_v1();
        const auto& lex = text::builtin_starter_lexicons();
        std::vector<text::FeatureVector> feats;
        feats.reserve(c.articles.size());
        for (const auto& a : c.articles) feats.push_back(text::extract_features(a, catalog, lex));
        return eval::build_dataset(c, feats, catalog.version);
    }();
    eval::SplitConfig sc;
    sc.folds = 20;
    sc.seed = 11;
    for (auto _ : state) {
        auto plan = eval::source_split_plan(ds, sc);
        benchmark::DoNotOptimize(plan.folds.size());
    }
}
BENCHMARK(BM_SourceSplitPlan);

}  // namespace

BENCHMARK_MAIN();
