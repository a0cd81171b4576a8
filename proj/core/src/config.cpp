#include "veribench/bench.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "veribench/rng.hpp"

namespace veribench::bench {

const char* label(FeatureFamily f) {
    switch (f) {
        case FeatureFamily::NELA: return "NELA";
        case FeatureFamily::NELA_SCALED: return "NELA-scaled";
        case FeatureFamily::D2V: return "D2V";
        case FeatureFamily::D2V_SCALED: return "D2V-scaled";
    }
    return "?";
}

const char* label(TrainDef d) {
    switch (d) {
        case TrainDef::US_VS_UR: return "US-vs-UR";
        case TrainDef::UK_VS_UR: return "UK-vs-UR";
        case TrainDef::USUK_VS_UR: return "US+UK-vs-UR";
    }
    return "?";
}

const char* slug(FeatureFamily f) {
    switch (f) {
        case FeatureFamily::NELA: return "nela";
        case FeatureFamily::NELA_SCALED: return "nela-scaled";
        case FeatureFamily::D2V: return "d2v";
        case FeatureFamily::D2V_SCALED: return "d2v-scaled";
    }
    return "?";
}

const char* slug(TrainDef d) {
    switch (d) {
        case TrainDef::US_VS_UR: return "us-vs-ur";
        case TrainDef::UK_VS_UR: return "uk-vs-ur";
        case TrainDef::USUK_VS_UR: return "us+uk-vs-ur";
    }
    return "?";
}

const char* slug(eval::ModelSpec::Kind m) { return eval::to_string(m); }
const char* slug(eval::Scheme s) { return eval::to_string(s); }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    std::vector<std::string> kept;
    for (auto& item : out)
        if (!item.empty()) kept.push_back(item);
    return kept;
}

// Accumulates problems; every setter reports instead of throwing so one pass
// surfaces the full list.
struct Problems {
    std::vector<std::string> list;
    void add(std::size_t line, const std::string& msg) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "line %zu: ", line);
        list.push_back(std::string(buf) + msg);
    }
};

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "yes" || v == "1") {
        out = true;
        return true;
    }
    if (v == "false" || v == "no" || v == "0") {
        out = false;
        return true;
    }
    return false;
}

bool parse_u64(const std::string& v, std::uint64_t& out) {
    if (v.empty() || v[0] == '-') return false;
    errno = 0;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0') return false;
    out = static_cast<std::uint64_t>(x);
    return true;
}

bool parse_size(const std::string& v, std::size_t& out) {
    std::uint64_t x = 0;
    if (!parse_u64(v, x)) return false;
    out = static_cast<std::size_t>(x);
    return true;
}

bool parse_double(const std::string& v, double& out) {
    if (v.empty()) return false;
    errno = 0;
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0') return false;
    out = x;
    return true;
}

bool parse_feature(const std::string& v, FeatureFamily& out) {
    if (v == "nela") out = FeatureFamily::NELA;
    else if (v == "nela-scaled") out = FeatureFamily::NELA_SCALED;
    else if (v == "d2v") out = FeatureFamily::D2V;
    else if (v == "d2v-scaled") out = FeatureFamily::D2V_SCALED;
    else return false;
    return true;
}

bool parse_model(const std::string& v, eval::ModelSpec::Kind& out) {
    if (v == "random_forest") out = eval::ModelSpec::Kind::FOREST;
    else if (v == "extra_trees") out = eval::ModelSpec::Kind::EXTRA_TREES;
    else if (v == "svm") out = eval::ModelSpec::Kind::SVM;
    else return false;
    return true;
}

bool parse_def(const std::string& v, TrainDef& out) {
    if (v == "us-vs-ur") out = TrainDef::US_VS_UR;
    else if (v == "uk-vs-ur") out = TrainDef::UK_VS_UR;
    else if (v == "us+uk-vs-ur") out = TrainDef::USUK_VS_UR;
    else return false;
    return true;
}

bool parse_scheme_name(const std::string& v, eval::Scheme& out) {
    if (v == "article") out = eval::Scheme::ARTICLE;
    else if (v == "source") out = eval::Scheme::SOURCE;
    else if (v == "country") out = eval::Scheme::COUNTRY;
    else return false;
    return true;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    Problems problems;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;

    auto set_double = [&](const std::string& v, std::size_t line, double& dst) {
        if (!parse_double(v, dst)) problems.add(line, "expected a number, got '" + v + "'");
    };
    auto set_size = [&](const std::string& v, std::size_t line, std::size_t& dst) {
        if (!parse_size(v, dst))
            problems.add(line, "expected a non-negative integer, got '" + v + "'");
    };
    auto set_bool = [&](const std::string& v, std::size_t line, bool& dst) {
        if (!parse_bool(v, dst)) problems.add(line, "expected true/false, got '" + v + "'");
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find(" #"); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.add(lineno, "malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "data" && section != "synthetic" && section != "grid" &&
                section != "split" && section != "forest" && section != "svm" &&
                section != "embedding" && section != "run") {
                problems.add(lineno, "unknown section [" + section + "]");
                section = "!bad";
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.add(lineno, "expected key = value, got '" + line + "'");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            problems.add(lineno, "empty key");
            continue;
        }
        if (section.empty()) {
            problems.add(lineno, "key '" + key + "' appears before any [section] header");
            continue;
        }
        if (section == "!bad") continue;  // already reported the header

        if (section == "data") {
            if (key == "corpus") cfg.corpus_path = value;
            else if (key == "roster") cfg.roster_path = value;
            else if (key == "format") {
                if (value == "jsonl") cfg.format = corpus::ArticleFormat::JSONL;
                else if (value == "csv") cfg.format = corpus::ArticleFormat::CSV;
                else problems.add(lineno, "format must be jsonl or csv, got '" + value + "'");
            } else if (key == "lexicons") cfg.lexicon_path = value;
            else if (key == "synthetic") set_bool(value, lineno, cfg.synthetic);
            else if (key == "sample") set_size(value, lineno, cfg.sample_per_source);
            else if (key == "allow_short") set_bool(value, lineno, cfg.allow_short);
            else problems.add(lineno, "unknown key '" + key + "' in [data]");
        } else if (section == "synthetic") {
            auto& sp = cfg.synth;
            if (key == "sources_per_class") set_size(value, lineno, sp.sources_per_class);
            else if (key == "articles_per_source") set_size(value, lineno, sp.articles_per_source);
            else if (key == "reliable_jitter") set_double(value, lineno, sp.reliable_jitter);
            else if (key == "unreliable_jitter") set_double(value, lineno, sp.unreliable_jitter);
            else if (key == "us_exclaim") set_double(value, lineno, sp.us_reliable.exclaim_rate);
            else if (key == "us_allcaps") set_double(value, lineno, sp.us_reliable.allcaps_rate);
            else if (key == "us_sentence_len") set_double(value, lineno, sp.us_reliable.sentence_len);
            else if (key == "us_hedge") set_double(value, lineno, sp.us_reliable.hedge_rate);
            else if (key == "uk_exclaim") set_double(value, lineno, sp.uk_reliable.exclaim_rate);
            else if (key == "uk_allcaps") set_double(value, lineno, sp.uk_reliable.allcaps_rate);
            else if (key == "uk_sentence_len") set_double(value, lineno, sp.uk_reliable.sentence_len);
            else if (key == "uk_hedge") set_double(value, lineno, sp.uk_reliable.hedge_rate);
            else if (key == "ur_exclaim") set_double(value, lineno, sp.unreliable.exclaim_rate);
            else if (key == "ur_allcaps") set_double(value, lineno, sp.unreliable.allcaps_rate);
            else if (key == "ur_sentence_len") set_double(value, lineno, sp.unreliable.sentence_len);
            else if (key == "ur_hedge") set_double(value, lineno, sp.unreliable.hedge_rate);
            else problems.add(lineno, "unknown key '" + key + "' in [synthetic]");
        } else if (section == "grid") {
            if (key == "features") {
                cfg.features.clear();
                for (const auto& item : split_list(value)) {
                    FeatureFamily f;
                    if (parse_feature(item, f)) cfg.features.push_back(f);
                    else problems.add(lineno, "unknown feature family '" + item + "'");
                }
            } else if (key == "models") {
                cfg.models.clear();
                for (const auto& item : split_list(value)) {
                    eval::ModelSpec::Kind m;
                    if (parse_model(item, m)) cfg.models.push_back(m);
                    else problems.add(lineno, "unknown model '" + item + "'");
                }
            } else if (key == "trained") {
                cfg.defs.clear();
                for (const auto& item : split_list(value)) {
                    TrainDef d;
                    if (parse_def(item, d)) cfg.defs.push_back(d);
                    else problems.add(lineno, "unknown training definition '" + item + "'");
                }
            } else if (key == "schemes") {
                cfg.schemes.clear();
                for (const auto& item : split_list(value)) {
                    eval::Scheme s;
                    if (parse_scheme_name(item, s)) cfg.schemes.push_back(s);
                    else problems.add(lineno, "unknown scheme '" + item + "'");
                }
            } else problems.add(lineno, "unknown key '" + key + "' in [grid]");
        } else if (section == "split") {
            if (key == "test_fraction") set_double(value, lineno, cfg.split.test_fraction);
            else if (key == "folds") set_size(value, lineno, cfg.split.folds);
            else if (key == "stratify_sources") set_bool(value, lineno, cfg.split.stratify_sources);
            else problems.add(lineno, "unknown key '" + key + "' in [split]");
        } else if (section == "forest") {
            if (key == "n_trees") set_size(value, lineno, cfg.forest.n_trees);
            else if (key == "max_depth") set_size(value, lineno, cfg.forest.max_depth);
            else if (key == "mtry") set_size(value, lineno, cfg.forest.mtry);
            else if (key == "min_leaf") set_size(value, lineno, cfg.forest.min_leaf);
            else problems.add(lineno, "unknown key '" + key + "' in [forest]");
        } else if (section == "svm") {
            if (key == "c") set_double(value, lineno, cfg.svm.C);
            else if (key == "epochs") set_size(value, lineno, cfg.svm.epochs);
            else if (key == "tolerance") set_double(value, lineno, cfg.svm.tolerance);
            else problems.add(lineno, "unknown key '" + key + "' in [svm]");
        } else if (section == "embedding") {
            if (key == "dimension") set_size(value, lineno, cfg.d2v.dimension);
            else if (key == "negative_k") set_size(value, lineno, cfg.d2v.negative_k);
            else if (key == "epochs") set_size(value, lineno, cfg.d2v.epochs);
            else if (key == "learning_rate") set_double(value, lineno, cfg.d2v.learning_rate);
            else if (key == "final_lr") set_double(value, lineno, cfg.d2v.final_lr);
            else if (key == "min_count") set_size(value, lineno, cfg.d2v.min_count);
            else if (key == "infer_steps") set_size(value, lineno, cfg.infer_steps);
            else problems.add(lineno, "unknown key '" + key + "' in [embedding]");
        } else if (section == "run") {
            if (key == "out") cfg.out_dir = value;
            else if (key == "seed") {
                if (!parse_u64(value, cfg.master_seed))
                    problems.add(lineno, "expected a non-negative integer, got '" + value + "'");
            } else if (key == "workers") set_size(value, lineno, cfg.workers);
            else problems.add(lineno, "unknown key '" + key + "' in [run]");
        }
    }

    for (const auto& v : validate_config(cfg)) problems.list.push_back(v);
    if (!problems.list.empty()) {
        std::string msg = origin + ": " + std::to_string(problems.list.size()) +
                          " config problem(s):";
        for (const auto& p : problems.list) msg += "\n  " + p;
        throw std::runtime_error(msg);
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> v;
    if (!cfg.synthetic) {
        if (cfg.corpus_path.empty())
            v.push_back("data.corpus is required unless data.synthetic = true");
        if (cfg.roster_path.empty())
            v.push_back("data.roster is required unless data.synthetic = true");
    }
    if (cfg.features.empty()) v.push_back("grid.features must not be empty");
    if (cfg.models.empty()) v.push_back("grid.models must not be empty");
    if (cfg.defs.empty()) v.push_back("grid.trained must not be empty");
    if (cfg.schemes.empty()) v.push_back("grid.schemes must not be empty");

    auto has = [](const auto& vec, auto x) {
        for (auto e : vec)
            if (e == x) return true;
        return false;
    };
    bool any_scaled = has(cfg.features, FeatureFamily::NELA_SCALED) ||
                      has(cfg.features, FeatureFamily::D2V_SCALED);
    if (has(cfg.models, eval::ModelSpec::Kind::SVM) && !cfg.features.empty() && !any_scaled)
        v.push_back(
            "grid: svm requires a scaled feature family (nela-scaled or d2v-scaled); "
            "none is listed in grid.features");
    bool any_non_country = false;
    for (auto s : cfg.schemes)
        if (s != eval::Scheme::COUNTRY) any_non_country = true;
    if (has(cfg.defs, TrainDef::USUK_VS_UR) && !cfg.schemes.empty() && !any_non_country)
        v.push_back(
            "grid: us+uk-vs-ur cannot be evaluated under the country scheme (there is no "
            "held-out country); add an article or source scheme or drop the definition");

    if (!(cfg.split.test_fraction > 0.0 && cfg.split.test_fraction < 1.0))
        v.push_back("split.test_fraction must lie in (0, 1)");
    if (cfg.split.folds < 1) v.push_back("split.folds must be at least 1");
    if (cfg.forest.n_trees < 1) v.push_back("forest.n_trees must be at least 1");
    if (cfg.forest.min_leaf < 1) v.push_back("forest.min_leaf must be at least 1");
    if (!(cfg.svm.C > 0.0)) v.push_back("svm.c must be positive");
    if (cfg.svm.epochs < 1) v.push_back("svm.epochs must be at least 1");
    if (!(cfg.svm.tolerance > 0.0)) v.push_back("svm.tolerance must be positive");
    try {
        cfg.d2v.validate();
    } catch (const std::exception& e) {
        v.push_back(std::string("embedding: ") + e.what());
    }
    if (cfg.synthetic) {
        const auto& sp = cfg.synth;
        if (sp.sources_per_class < 1) v.push_back("synthetic.sources_per_class must be at least 1");
        if (sp.articles_per_source < 1)
            v.push_back("synthetic.articles_per_source must be at least 1");
        if (sp.reliable_jitter < 0.0 || sp.unreliable_jitter < 0.0)
            v.push_back("synthetic jitters must be non-negative");
        for (const RegimeKnobs* k : {&sp.us_reliable, &sp.uk_reliable, &sp.unreliable}) {
            if (k->exclaim_rate < 0.0 || k->exclaim_rate >= 1.0 || k->allcaps_rate < 0.0 ||
                k->allcaps_rate >= 1.0 || k->hedge_rate < 0.0 || k->hedge_rate >= 1.0)
                v.push_back("synthetic regime rates must lie in [0, 1)");
            if (!(k->sentence_len > 0.0))
                v.push_back("synthetic sentence_len knobs must be positive");
        }
    }
    if (cfg.workers < 1) v.push_back("run.workers must be at least 1");
    if (cfg.out_dir.empty()) v.push_back("run.out must not be empty");
    return v;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[data]\n";
    out << "corpus = " << cfg.corpus_path << "\n";
    out << "roster = " << cfg.roster_path << "\n";
    out << "format = " << (cfg.format == corpus::ArticleFormat::JSONL ? "jsonl" : "csv") << "\n";
    out << "lexicons = " << cfg.lexicon_path << "\n";
    out << "synthetic = " << (cfg.synthetic ? "true" : "false") << "\n";
    out << "sample = " << cfg.sample_per_source << "\n";
    out << "allow_short = " << (cfg.allow_short ? "true" : "false") << "\n";
    const auto& sp = cfg.synth;
    out << "\n[synthetic]\n";
    out << "sources_per_class = " << sp.sources_per_class << "\n";
    out << "articles_per_source = " << sp.articles_per_source << "\n";
    out << "reliable_jitter = " << fmt_double(sp.reliable_jitter) << "\n";
    out << "unreliable_jitter = " << fmt_double(sp.unreliable_jitter) << "\n";
    const char* tags[3] = {"us", "uk", "ur"};
    const RegimeKnobs* knobs[3] = {&sp.us_reliable, &sp.uk_reliable, &sp.unreliable};
    for (int i = 0; i < 3; ++i) {
        out << tags[i] << "_exclaim = " << fmt_double(knobs[i]->exclaim_rate) << "\n";
        out << tags[i] << "_allcaps = " << fmt_double(knobs[i]->allcaps_rate) << "\n";
        out << tags[i] << "_sentence_len = " << fmt_double(knobs[i]->sentence_len) << "\n";
        out << tags[i] << "_hedge = " << fmt_double(knobs[i]->hedge_rate) << "\n";
    }
    out << "\n[grid]\n";
    out << "features = ";
    for (std::size_t i = 0; i < cfg.features.size(); ++i)
        out << (i ? ", " : "") << slug(cfg.features[i]);
    out << "\nmodels = ";
    for (std::size_t i = 0; i < cfg.models.size(); ++i)
        out << (i ? ", " : "") << slug(cfg.models[i]);
    out << "\ntrained = ";
    for (std::size_t i = 0; i < cfg.defs.size(); ++i) out << (i ? ", " : "") << slug(cfg.defs[i]);
    out << "\nschemes = ";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        out << (i ? ", " : "") << slug(cfg.schemes[i]);
    out << "\n\n[split]\n";
    out << "test_fraction = " << fmt_double(cfg.split.test_fraction) << "\n";
    out << "folds = " << cfg.split.folds << "\n";
    out << "stratify_sources = " << (cfg.split.stratify_sources ? "true" : "false") << "\n";
    out << "\n[forest]\n";
    out << "n_trees = " << cfg.forest.n_trees << "\n";
    out << "max_depth = " << cfg.forest.max_depth << "\n";
    out << "mtry = " << cfg.forest.mtry << "\n";
    out << "min_leaf = " << cfg.forest.min_leaf << "\n";
    out << "\n[svm]\n";
    out << "c = " << fmt_double(cfg.svm.C) << "\n";
    out << "epochs = " << cfg.svm.epochs << "\n";
    out << "tolerance = " << fmt_double(cfg.svm.tolerance) << "\n";
    out << "\n[embedding]\n";
    out << "dimension = " << cfg.d2v.dimension << "\n";
    out << "negative_k = " << cfg.d2v.negative_k << "\n";
    out << "epochs = " << cfg.d2v.epochs << "\n";
    out << "learning_rate = " << fmt_double(cfg.d2v.learning_rate) << "\n";
    out << "final_lr = " << fmt_double(cfg.d2v.final_lr) << "\n";
    out << "min_count = " << cfg.d2v.min_count << "\n";
    out << "infer_steps = " << cfg.infer_steps << "\n";
    out << "\n[run]\n";
    out << "out = " << cfg.out_dir << "\n";
    out << "seed = " << cfg.master_seed << "\n";
    out << "workers = " << cfg.workers << "\n";
    return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    // Result identity: worker count and output location cannot change what a
    // run computes, so they are normalized out before hashing.
    ExperimentConfig norm = cfg;
    norm.workers = 1;
    norm.out_dir = "out";
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(serialize_config(norm))));
    return buf;
}

}  // namespace veribench::bench
