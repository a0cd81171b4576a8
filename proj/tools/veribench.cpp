// Command-line front end: corpus ingestion and sampling, feature extraction,
// embedding training, synthetic corpus generation, full experiment runs and
// table regeneration from per-cell artifacts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "veribench/bench.hpp"
#include "veribench/parallel.hpp"
#include "veribench/rng.hpp"
#include "veribench/textfeat.hpp"

namespace fs = std::filesystem;
using namespace veribench;

namespace {

// Bad flags, bad config, failed data validation. Exit 1; everything else
// that throws exits 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Opts {
    std::string config_path;
    std::string corpus_path;
    std::string roster_path;
    std::string data_format = "jsonl";
    std::string lexicon_path;
    std::string out_dir;
    std::string format = "text";
    std::string in_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t workers = 0;
    std::size_t n = 0;
    bool allow_short = false;
};

bench::ExperimentConfig load_config(const Opts& o) {
    if (o.config_path.empty()) return bench::ExperimentConfig{};
    try {
        return bench::parse_config(o.config_path);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

void apply_data_overrides(bench::ExperimentConfig& cfg, const Opts& o) {
    if (!o.corpus_path.empty()) cfg.corpus_path = o.corpus_path;
    if (!o.roster_path.empty()) cfg.roster_path = o.roster_path;
    if (!o.lexicon_path.empty()) cfg.lexicon_path = o.lexicon_path;
    cfg.format = o.data_format == "csv" ? corpus::ArticleFormat::CSV
                                        : corpus::ArticleFormat::JSONL;
}

corpus::Corpus load_and_check(const bench::ExperimentConfig& cfg) {
    if (cfg.corpus_path.empty() || cfg.roster_path.empty())
        throw UsageError("a corpus and roster are required (--corpus/--roster or a config file)");
    corpus::LoadReport report;
    auto c = corpus::load_corpus(cfg.corpus_path, cfg.format, cfg.roster_path, &report);
    for (const auto& skip : report.skipped)
        std::cerr << "skipped record " << skip.record << ": " << skip.reason << "\n";
    auto vr = corpus::validate_corpus(c);
    if (!vr.clean()) {
        std::ostringstream msg;
        msg << "corpus validation failed:";
        for (const auto& id : vr.duplicate_ids) msg << "\n  duplicate article id " << id;
        for (const auto& id : vr.empty_body_ids) msg << "\n  empty body in article " << id;
        for (const auto& s : vr.orphan_sources) msg << "\n  source missing from roster: " << s;
        throw UsageError(msg.str());
    }
    return c;
}

void print_stats(const corpus::Corpus& c, const std::string& format) {
    auto st = corpus::corpus_stats(c);
    if (format == "json") {
        nlohmann::json j{{"articles", st.articles},
                         {"sources", c.roster.size()},
                         {"per_class", st.per_class},
                         {"per_source", st.per_source},
                         {"body_tokens",
                          {{"min", st.min_body_tokens},
                           {"max", st.max_body_tokens},
                           {"mean", st.mean_body_tokens}}}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::cout << "key,value\n";
        std::cout << "articles," << st.articles << "\n";
        std::cout << "sources," << c.roster.size() << "\n";
        for (const auto& [k, v] : st.per_class) std::cout << "class_" << k << "," << v << "\n";
        std::cout << "min_body_tokens," << st.min_body_tokens << "\n";
        std::cout << "max_body_tokens," << st.max_body_tokens << "\n";
        std::cout << "mean_body_tokens," << st.mean_body_tokens << "\n";
        return;
    }
    std::cout << "articles: " << st.articles << "\n";
    std::cout << "sources:  " << c.roster.size() << "\n";
    for (const auto& [k, v] : st.per_class) std::cout << "  " << k << ": " << v << "\n";
    std::cout << "body tokens: min " << st.min_body_tokens << ", max " << st.max_body_tokens
              << ", mean " << st.mean_body_tokens << "\n";
}

void save_pair(const corpus::Corpus& c, const std::string& dir) {
    fs::create_directories(dir);
    corpus::save_corpus_jsonl(c, (fs::path(dir) / "corpus.jsonl").string());
    corpus::save_roster_csv(c, (fs::path(dir) / "roster.csv").string());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + p.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_table(const eval::ResultsTable& table, const std::string& format,
                 const fs::path& tables_dir) {
    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : table.rows)
            rows.push_back({{"feature", r.feature_label},
                            {"model", r.model_label},
                            {"trained_on", r.trained_on},
                            {"scheme", r.scheme},
                            {"folds", r.folds},
                            {"mean", r.mean},
                            {"stddev", r.stddev},
                            {"cell", r.cell}});
        std::cout << nlohmann::json{{"rows", rows}}.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << slurp(tables_dir / "results.csv");
    } else {
        std::cout << slurp(tables_dir / "results.txt");
    }
}

int do_ingest(const Opts& o) {
    auto cfg = load_config(o);
    apply_data_overrides(cfg, o);
    auto c = load_and_check(cfg);
    print_stats(c, o.format);
    if (!o.out_dir.empty()) save_pair(c, o.out_dir);
    return 0;
}

int do_sample(const Opts& o) {
    auto cfg = load_config(o);
    apply_data_overrides(cfg, o);
    std::size_t n = o.n ? o.n : cfg.sample_per_source;
    if (n == 0) throw UsageError("a per-source sample size is required (--n or data.sample)");
    auto c = load_and_check(cfg);
    corpus::SamplingConfig sc;
    sc.per_source_n = n;
    sc.seed = o.seed_given ? o.seed : derive_seed(cfg.master_seed, "sample");
    sc.allow_short = o.allow_short || cfg.allow_short;
    std::vector<std::string> warnings;
    auto sampled = corpus::balanced_sample(c, sc, &warnings);
    for (const auto& w : warnings) std::cerr << w << "\n";
    print_stats(sampled, o.format);
    if (o.out_dir.empty()) throw UsageError("sample needs --out to write the sampled corpus");
    save_pair(sampled, o.out_dir);
    return 0;
}

int do_features(const Opts& o) {
    auto cfg = load_config(o);
    apply_data_overrides(cfg, o);
    auto c = load_and_check(cfg);
    text::LexiconSet loaded;
    const text::LexiconSet* lex = &text::builtin_starter_lexicons();
    if (!cfg.lexicon_path.empty()) {
        loaded = text::load_lexicons(cfg.lexicon_path);
        lex = &loaded;
    }
    const auto& catalog = text::nela_open_v1();
    std::vector<text::FeatureVector> feats(c.articles.size());
    std::size_t workers = o.workers ? o.workers : cfg.workers;
    parallel_for(c.articles.size(), workers, [&](std::size_t i) {
        feats[i] = text::extract_features(c.articles[i], catalog, *lex);
    });
    std::vector<std::string> ids;
    ids.reserve(c.articles.size());
    for (const auto& a : c.articles) ids.push_back(a.id);
    std::string dir = o.out_dir.empty() ? std::string("out") : o.out_dir;
    fs::create_directories(dir);
    text::write_feature_matrix((fs::path(dir) / "features.csv").string(),
                               (fs::path(dir) / "features.json").string(), catalog, ids, feats);
    std::cout << catalog.version << ": " << feats.size() << " rows x " << catalog.dimension()
              << " features -> " << dir << "/features.csv\n";
    return 0;
}

int do_train_embed(const Opts& o) {
    auto cfg = load_config(o);
    apply_data_overrides(cfg, o);
    auto c = load_and_check(cfg);
    auto ds = eval::build_token_dataset(c);
    embed::EmbeddingConfig ecfg = cfg.d2v;
    ecfg.seed = o.seed_given ? o.seed : cfg.master_seed;
    embed::TrainReport report;
    auto model = embed::train(ds.tokens, ecfg, &report);
    std::string dir = o.out_dir.empty() ? std::string("out") : o.out_dir;
    fs::create_directories(dir);
    std::string prefix = (fs::path(dir) / "d2v").string();
    embed::save_model(model, prefix);
    std::cout << "trained " << ecfg.tag() << ": vocab " << model.vocab.terms.size() << ", "
              << ds.tokens.size() << " documents, " << ecfg.epochs << " epochs\n";
    if (!report.epoch_mean_loss.empty())
        std::cout << "mean pair loss: first epoch " << report.epoch_mean_loss.front()
                  << ", last epoch " << report.epoch_mean_loss.back() << "\n";
    if (!report.empty_docs.empty())
        std::cout << report.empty_docs.size() << " document(s) had no in-vocabulary tokens\n";
    std::cout << "saved " << prefix << ".{json,docs.csv,words.csv}\n";
    return 0;
}

int do_synth(const Opts& o, std::size_t sources_override, std::size_t articles_override) {
    auto cfg = load_config(o);
    bench::SyntheticSpec spec = cfg.synth;
    if (sources_override) spec.sources_per_class = sources_override;
    if (articles_override) spec.articles_per_source = articles_override;
    std::uint64_t seed = o.seed_given ? o.seed : cfg.master_seed;
    auto c = bench::generate_synthetic_corpus(spec, seed);
    print_stats(c, o.format);
    std::string dir = o.out_dir.empty() ? std::string("out") : o.out_dir;
    save_pair(c, dir);
    std::cout << "wrote " << dir << "/corpus.jsonl and " << dir << "/roster.csv\n";
    return 0;
}

int do_run(const Opts& o) {
    if (o.config_path.empty()) throw UsageError("run requires --config");
    auto cfg = load_config(o);
    if (o.seed_given) cfg.master_seed = o.seed;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.workers) cfg.workers = o.workers;
    auto rc = bench::run(cfg, &std::cerr);
    if (rc.exit_code == 1) return 1;
    print_table(rc.table, o.format, fs::path(cfg.out_dir) / "tables");
    return rc.exit_code;
}

int do_report(const Opts& o) {
    std::string in = o.in_dir.empty() ? std::string("out/results") : o.in_dir;
    auto table = bench::collect_results(in);
    std::string dir = o.out_dir.empty() ? std::string("out/tables") : o.out_dir;
    fs::create_directories(dir);
    eval::write_results_csv(table, (fs::path(dir) / "results.csv").string());
    eval::write_results_text(table, (fs::path(dir) / "results.txt").string());
    eval::write_pivot_csv(table, (fs::path(dir) / "pivot.csv").string());
    eval::write_pivot_text(table, (fs::path(dir) / "pivot.txt").string());
    print_table(table, o.format, dir);
    return 0;
}

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--config", o.config_path, "experiment config file");
    auto* seed = sub->add_option("--seed", o.seed, "seed override");
    sub->parse_complete_callback([&o, seed] { o.seed_given = seed->count() > 0; });
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--format", o.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--workers", o.workers, "worker thread count");
}

void add_data(CLI::App* sub, Opts& o) {
    sub->add_option("--corpus", o.corpus_path, "articles file (JSONL or CSV)");
    sub->add_option("--roster", o.roster_path, "source roster CSV");
    sub->add_option("--data-format", o.data_format, "articles file format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    sub->add_option("--lexicons", o.lexicon_path, "lexicon file override");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-country news veracity benchmark"};
    app.require_subcommand(1);

    Opts ingest_o, sample_o, feat_o, embed_o, synth_o, run_o, report_o;
    std::size_t synth_sources = 0, synth_articles = 0;
    int rc = 0;

    auto* ingest = app.add_subcommand("ingest", "load, validate and normalize a corpus");
    add_common(ingest, ingest_o);
    add_data(ingest, ingest_o);
    ingest->callback([&] { rc = do_ingest(ingest_o); });

    auto* sample = app.add_subcommand("sample", "balanced per-source subsample");
    add_common(sample, sample_o);
    add_data(sample, sample_o);
    sample->add_option("--n", sample_o.n, "articles per source");
    sample->add_flag("--allow-short", sample_o.allow_short,
                     "keep sources with fewer than --n articles");
    sample->callback([&] { rc = do_sample(sample_o); });

    auto* features = app.add_subcommand("features", "extract the hand-crafted feature matrix");
    add_common(features, feat_o);
    add_data(features, feat_o);
    features->callback([&] { rc = do_features(feat_o); });

    auto* train_embed = app.add_subcommand("train-embed", "train paragraph embeddings");
    add_common(train_embed, embed_o);
    add_data(train_embed, embed_o);
    train_embed->callback([&] { rc = do_train_embed(embed_o); });

    auto* synth = app.add_subcommand("synth", "generate the synthetic three-regime corpus");
    add_common(synth, synth_o);
    synth->add_option("--sources-per-class", synth_sources, "sources per regime");
    synth->add_option("--articles-per-source", synth_articles, "articles per source");
    synth->callback([&] { rc = do_synth(synth_o, synth_sources, synth_articles); });

    auto* runc = app.add_subcommand("run", "run the full experiment grid");
    add_common(runc, run_o);
    runc->callback([&] { rc = do_run(run_o); });

    auto* report = app.add_subcommand("report", "rebuild tables from per-cell results");
    add_common(report, report_o);
    report->add_option("--in", report_o.in_dir, "directory of per-cell result JSON files");
    report->callback([&] { rc = do_report(report_o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
