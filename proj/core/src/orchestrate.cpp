#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "veribench/bench.hpp"
#include "veribench/parallel.hpp"
#include "veribench/rng.hpp"
#include "veribench/textfeat.hpp"

namespace veribench::bench {

namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to '" + path.string() + "'");
}

std::string cell_slug(FeatureFamily f, eval::ModelSpec::Kind m, TrainDef d, eval::Scheme s) {
    std::string out = slug(f);
    out += "__";
    out += slug(m);
    out += "__";
    out += slug(d);
    out += "__";
    out += slug(s);
    return out;
}

bool is_d2v(FeatureFamily f) {
    return f == FeatureFamily::D2V || f == FeatureFamily::D2V_SCALED;
}

bool is_scaled(FeatureFamily f) {
    return f == FeatureFamily::NELA_SCALED || f == FeatureFamily::D2V_SCALED;
}

// Drops the other country's reliable articles so training matches the
// definition; unreliable rows always stay.
eval::LabeledDataset filter_for_def(const eval::LabeledDataset& ds, TrainDef def) {
    if (def == TrainDef::USUK_VS_UR) return ds;
    corpus::Group drop = def == TrainDef::US_VS_UR ? corpus::Group::UK : corpus::Group::US;
    eval::LabeledDataset out;
    out.signature = ds.signature;
    out.has_tokens = ds.has_tokens;
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        const auto& row = ds.rows[i];
        if (row.cls == corpus::ArticleClass::RELIABLE && row.group == drop) continue;
        out.rows.push_back(row);
        if (ds.has_tokens) out.tokens.push_back(ds.tokens[i]);
    }
    return out;
}

}  // namespace

RunOutcome run(const ExperimentConfig& cfg, std::ostream* log) {
    RunOutcome rc;
    auto say = [&](const std::string& s) {
        if (log) (*log) << s << '\n';
    };

    auto violations = validate_config(cfg);
    if (!violations.empty()) {
        for (const auto& v : violations) say("config: " + v);
        rc.exit_code = 1;
        return rc;
    }

    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir / "results");
    fs::create_directories(out_dir / "heatmaps");
    fs::create_directories(out_dir / "tables");

    corpus::Corpus corpus;
    if (cfg.synthetic) {
        corpus = generate_synthetic_corpus(cfg.synth, derive_seed(cfg.master_seed, "synth"));
        say("synthetic corpus: " + std::to_string(corpus.articles.size()) + " articles, " +
            std::to_string(corpus.roster.size()) + " sources");
    } else {
        corpus::LoadReport report;
        corpus = corpus::load_corpus(cfg.corpus_path, cfg.format, cfg.roster_path, &report);
        for (const auto& skip : report.skipped)
            say("skipped record " + std::to_string(skip.record) + ": " + skip.reason);
        say("loaded " + std::to_string(report.loaded) + " articles");
    }

    auto vr = corpus::validate_corpus(corpus);
    if (!vr.clean()) {
        for (const auto& id : vr.duplicate_ids) say("corpus: duplicate article id " + id);
        for (const auto& id : vr.empty_body_ids) say("corpus: empty body in article " + id);
        for (const auto& s : vr.orphan_sources) say("corpus: source missing from roster: " + s);
        rc.exit_code = 1;
        return rc;
    }

    if (cfg.sample_per_source > 0) {
        corpus::SamplingConfig sc;
        sc.per_source_n = cfg.sample_per_source;
        sc.seed = derive_seed(cfg.master_seed, "sample");
        sc.allow_short = cfg.allow_short;
        std::vector<std::string> warnings;
        corpus = corpus::balanced_sample(corpus, sc, &warnings);
        for (const auto& w : warnings) say("sample: " + w);
        say("sampled down to " + std::to_string(corpus.articles.size()) + " articles");
    }

    corpus::save_corpus_jsonl(corpus, (out_dir / "corpus.jsonl").string());
    corpus::save_roster_csv(corpus, (out_dir / "roster.csv").string());

    text::LexiconSet loaded_lex;
    const text::LexiconSet* lex = nullptr;
    if (cfg.lexicon_path.empty()) {
        lex = &text::builtin_starter_lexicons();
    } else {
        loaded_lex = text::load_lexicons(cfg.lexicon_path);
        lex = &loaded_lex;
    }

    bool need_nela = false, need_d2v = false;
    for (auto f : cfg.features) (is_d2v(f) ? need_d2v : need_nela) = true;

    eval::LabeledDataset nela_ds, token_ds;
    if (need_nela) {
        const auto& catalog = text::nela_open_v1();
        std::vector<text::FeatureVector> feats(corpus.articles.size());
        parallel_for(corpus.articles.size(), cfg.workers, [&](std::size_t i) {
            feats[i] = text::extract_features(corpus.articles[i], catalog, *lex);
        });
        nela_ds = eval::build_dataset(corpus, feats, catalog.version);
        say("extracted " + catalog.version + " features for " +
            std::to_string(feats.size()) + " articles");
    }
    if (need_d2v) token_ds = eval::build_token_dataset(corpus);

    // Filtered dataset per (definition, representation); the country scheme
    // keeps the full dataset because its plan selects groups itself.
    std::map<std::pair<int, int>, eval::LabeledDataset> filtered;
    auto dataset_for = [&](TrainDef def, bool d2v,
                           eval::Scheme scheme) -> const eval::LabeledDataset& {
        const eval::LabeledDataset& base = d2v ? token_ds : nela_ds;
        if (scheme == eval::Scheme::COUNTRY || def == TrainDef::USUK_VS_UR) return base;
        auto key = std::make_pair(static_cast<int>(def), d2v ? 1 : 0);
        auto it = filtered.find(key);
        if (it == filtered.end()) it = filtered.emplace(key, filter_for_def(base, def)).first;
        return it->second;
    };

    std::vector<eval::LabeledResult> labeled;
    nlohmann::json cells = nlohmann::json::array();

    for (auto feature : cfg.features) {
        for (auto model : cfg.models) {
            if (model == eval::ModelSpec::Kind::SVM && !is_scaled(feature)) continue;
            for (auto def : cfg.defs) {
                for (auto scheme : cfg.schemes) {
                    if (def == TrainDef::USUK_VS_UR && scheme == eval::Scheme::COUNTRY) continue;
                    ++rc.cells_attempted;
                    const std::string name = cell_slug(feature, model, def, scheme);
                    const std::string plan_key =
                        std::string(slug(def)) + "/" + slug(scheme);
                    nlohmann::json cell{{"feature", label(feature)},
                                        {"model", eval::to_string(model)},
                                        {"trained_on", label(def)},
                                        {"scheme", eval::to_string(scheme)},
                                        {"slug", name}};
                    try {
                        const auto& ds = dataset_for(def, is_d2v(feature), scheme);

                        eval::SplitPlan plan;
                        if (scheme == eval::Scheme::ARTICLE) {
                            eval::SplitConfig sc = cfg.split;
                            sc.seed = derive_seed(derive_seed(cfg.master_seed, "plan"), plan_key);
                            plan = eval::article_split_plan(ds, sc);
                        } else if (scheme == eval::Scheme::SOURCE) {
                            eval::SplitConfig sc = cfg.split;
                            sc.seed = derive_seed(derive_seed(cfg.master_seed, "plan"), plan_key);
                            plan = eval::source_split_plan(ds, sc);
                        } else {
                            plan = eval::country_split_plan(
                                ds, def == TrainDef::US_VS_UR ? corpus::Group::US
                                                              : corpus::Group::UK);
                        }

                        eval::FeatureSpec fspec;
                        if (is_d2v(feature)) {
                            fspec.kind = eval::FeatureSpec::Kind::D2V;
                            fspec.d2v = cfg.d2v;
                            fspec.infer_steps = cfg.infer_steps;
                        }
                        fspec.scaled = is_scaled(feature);

                        eval::ModelSpec mspec;
                        mspec.kind = model;
                        mspec.forest = cfg.forest;
                        mspec.svm = cfg.svm;

                        std::uint64_t run_seed =
                            derive_seed(derive_seed(cfg.master_seed, "run"), plan_key);
                        auto res =
                            eval::run_experiment(ds, plan, mspec, fspec, run_seed, cfg.workers);

                        eval::LabeledResult lr{label(feature), eval::to_string(model),
                                               label(def), eval::to_string(scheme), res};
                        labeled.push_back(lr);

                        nlohmann::json wrap{{"schema", "veribench-cell-v1"},
                                            {"cell",
                                             {{"feature", lr.feature_label},
                                              {"model", lr.model_label},
                                              {"trained_on", lr.trained_on},
                                              {"scheme", lr.scheme}}},
                                            {"result",
                                             nlohmann::json::parse(eval::result_to_json(res))}};
                        write_text_file(out_dir / "results" / (name + ".json"),
                                        wrap.dump(2) + "\n");
                        write_text_file(out_dir / "heatmaps" / (name + ".svg"),
                                        emit_heatmap(res.confusion, res.confusion_row_defined,
                                                     name));
                        cell["status"] = "ok";
                        cell["mean_accuracy"] = res.mean;
                        ++rc.cells_ok;
                        char line[160];
                        std::snprintf(line, sizeof line, "cell %s: accuracy %.3f over %zu fold(s)",
                                      name.c_str(), res.mean, res.fold_accuracies.size());
                        say(line);
                    } catch (const std::exception& e) {
                        cell["status"] = "failed";
                        cell["error"] = e.what();
                        rc.failures.push_back(name + ": " + e.what());
                        say("cell " + name + " FAILED: " + e.what());
                    }
                    cells.push_back(std::move(cell));
                }
            }
        }
    }

    rc.table = eval::aggregate_results(labeled);
    eval::write_results_csv(rc.table, (out_dir / "tables" / "results.csv").string());
    eval::write_results_text(rc.table, (out_dir / "tables" / "results.txt").string());
    eval::write_pivot_csv(rc.table, (out_dir / "tables" / "pivot.csv").string());
    eval::write_pivot_text(rc.table, (out_dir / "tables" / "pivot.txt").string());

    auto stats = corpus::corpus_stats(corpus);
    ExperimentConfig norm = cfg;
    norm.workers = 1;
    norm.out_dir = "out";
    embed::EmbeddingConfig family_d2v = cfg.d2v;
    family_d2v.seed = 0;
    nlohmann::json manifest{
        {"schema", "veribench-run-v1"},
        {"config_hash", config_hash(cfg)},
        {"master_seed", cfg.master_seed},
        {"catalog", need_nela ? text::nela_open_v1().version : ""},
        {"embedding_tag", need_d2v ? family_d2v.tag() : ""},
        {"corpus",
         {{"articles", stats.articles},
          {"sources", corpus.roster.size()},
          {"per_class", stats.per_class}}},
        {"cells", cells},
        {"failures", rc.failures},
        {"config", serialize_config(norm)},
    };
    write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

    if (!rc.failures.empty()) {
        std::string ledger;
        for (const auto& f : rc.failures) ledger += f + "\n";
        write_text_file(out_dir / "failures.txt", ledger);
        rc.exit_code = 2;
        say(std::to_string(rc.failures.size()) + " cell(s) failed; see failures.txt");
    }
    say("done: " + std::to_string(rc.cells_ok) + "/" + std::to_string(rc.cells_attempted) +
        " cells ok");
    return rc;
}

eval::LabeledResult read_cell_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "veribench-cell-v1")
        throw std::runtime_error("read_cell_json: unexpected schema");
    eval::LabeledResult lr;
    const auto& cell = j.at("cell");
    lr.feature_label = cell.at("feature").get<std::string>();
    lr.model_label = cell.at("model").get<std::string>();
    lr.trained_on = cell.at("trained_on").get<std::string>();
    lr.scheme = cell.at("scheme").get<std::string>();
    const auto& r = j.at("result");
    auto& res = lr.result;
    res.fold_accuracies = r.at("fold_accuracies").get<std::vector<double>>();
    res.mean = r.at("mean").get<double>();
    res.stddev = r.at("stddev").get<double>();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            res.confusion.at(i, k) = r.at("confusion").at(i).at(k).get<double>();
    res.confusion_row_defined = {r.at("confusion_row_defined").at(0).get<bool>(),
                                 r.at("confusion_row_defined").at(1).get<bool>()};
    if (r.contains("importance")) {
        res.has_importance = true;
        res.importance_mean = r.at("importance").get<std::vector<double>>();
        res.concentration.gini_coefficient =
            r.at("concentration").at("gini_coefficient").get<double>();
        res.concentration.normalized_entropy =
            r.at("concentration").at("normalized_entropy").get<double>();
    }
    const auto& man = r.at("manifest");
    res.manifest.run_seed = man.at("run_seed").get<std::uint64_t>();
    res.manifest.feature_signature = man.at("feature_signature").get<std::string>();
    res.manifest.embedding_tag = man.at("embedding_tag").get<std::string>();
    res.manifest.scheme = man.at("scheme").get<std::string>();
    res.manifest.model = man.at("model").get<std::string>();
    res.manifest.folds = man.at("folds").get<std::size_t>();
    res.manifest.rows = man.at("rows").get<std::size_t>();
    return lr;
}

eval::ResultsTable collect_results(const std::string& results_dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(results_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<eval::LabeledResult> labeled;
    for (const auto& p : files) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open '" + p.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        labeled.push_back(read_cell_json(buf.str()));
    }
    return eval::aggregate_results(labeled);
}

}  // namespace veribench::bench
