#include <doctest.h>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "veribench/bench.hpp"

using namespace veribench;
using bench::ExperimentConfig;
using bench::FeatureFamily;
using bench::SyntheticSpec;
using bench::TrainDef;

namespace {

std::set<std::string> word_tokens(const std::string& text) {
    std::set<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        } else if (!cur.empty()) {
            out.insert(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.insert(cur);
    return out;
}

const std::set<std::string>& us_spellings() {
    static const std::set<std::string> v = {"color",   "center",  "defense", "organization",
                                            "realize", "behavior", "labor",  "favorite",
                                            "analyze", "program", "theater", "rumor"};
    return v;
}

const std::set<std::string>& uk_spellings() {
    static const std::set<std::string> v = {"colour",  "centre",  "defence", "organisation",
                                            "realise", "behaviour", "labour", "favourite",
                                            "analyse", "programme", "theatre", "rumour"};
    return v;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("family and definition labels") {
    CHECK(std::string(bench::label(FeatureFamily::NELA_SCALED)) == "NELA-scaled");
    CHECK(std::string(bench::label(TrainDef::USUK_VS_UR)) == "US+UK-vs-UR");
    CHECK(std::string(bench::slug(FeatureFamily::D2V_SCALED)) == "d2v-scaled");
    CHECK(std::string(bench::slug(TrainDef::USUK_VS_UR)) == "us+uk-vs-ur");
    CHECK(std::string(bench::slug(eval::ModelSpec::Kind::FOREST)) == "random_forest");
    CHECK(std::string(bench::slug(eval::Scheme::COUNTRY)) == "country");
}

TEST_CASE("config serialization round-trips exactly") {
    ExperimentConfig cfg;
    cfg.synthetic = true;
    cfg.features = {FeatureFamily::NELA_SCALED, FeatureFamily::D2V};
    cfg.models = {eval::ModelSpec::Kind::SVM, eval::ModelSpec::Kind::FOREST};
    cfg.defs = {TrainDef::US_VS_UR, TrainDef::UK_VS_UR};
    cfg.schemes = {eval::Scheme::ARTICLE, eval::Scheme::SOURCE};
    cfg.split.test_fraction = 0.3;
    cfg.split.folds = 7;
    cfg.forest.n_trees = 33;
    cfg.svm.C = 0.5;
    cfg.d2v.dimension = 48;
    cfg.synth.articles_per_source = 55;
    cfg.synth.unreliable_jitter = 0.625;
    cfg.master_seed = 1234567;
    cfg.workers = 3;
    cfg.out_dir = "elsewhere";

    std::string text = bench::serialize_config(cfg);
    auto parsed = bench::parse_config_text(text, "roundtrip");
    CHECK(bench::serialize_config(parsed) == text);
    CHECK(parsed.synthetic == true);
    CHECK(parsed.features == cfg.features);
    CHECK(parsed.models == cfg.models);
    CHECK(parsed.defs == cfg.defs);
    CHECK(parsed.schemes == cfg.schemes);
    CHECK(parsed.split.folds == 7);
    CHECK(parsed.split.test_fraction == 0.3);
    CHECK(parsed.forest.n_trees == 33);
    CHECK(parsed.svm.C == 0.5);
    CHECK(parsed.d2v.dimension == 48);
    CHECK(parsed.synth.articles_per_source == 55);
    CHECK(parsed.synth.unreliable_jitter == 0.625);
    CHECK(parsed.master_seed == 1234567);
    CHECK(parsed.workers == 3);
    CHECK(parsed.out_dir == "elsewhere");
}

TEST_CASE("config hash ignores workers and output location only") {
    ExperimentConfig cfg;
    cfg.synthetic = true;
    auto h = bench::config_hash(cfg);
    CHECK(h.size() == 16);
    for (char c : h) CHECK(std::isxdigit(static_cast<unsigned char>(c)));

    ExperimentConfig moved = cfg;
    moved.workers = 8;
    moved.out_dir = "/tmp/elsewhere";
    CHECK(bench::config_hash(moved) == h);

    ExperimentConfig reseeded = cfg;
    reseeded.master_seed += 1;
    CHECK(bench::config_hash(reseeded) != h);

    ExperimentConfig regrown = cfg;
    regrown.forest.n_trees += 1;
    CHECK(bench::config_hash(regrown) != h);
}

TEST_CASE("config parser accepts comments and reports every problem at once") {
    auto cfg = bench::parse_config_text(
        "# leading comment\n"
        "; another style\n"
        "[data]\n"
        "synthetic = true\n"
        "\n"
        "[split]\n"
        "folds = 3 # trailing comment\n",
        "ok");
    CHECK(cfg.synthetic);
    CHECK(cfg.split.folds == 3);

    try {
        bench::parse_config_text(
            "[data]\n"
            "synthetic = maybe\n"
            "[grid]\n"
            "bogus = 1\n"
            "[nope]\n"
            "x = 1\n",
            "bad");
        FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("bad: ") == 0);
        CHECK(msg.find("config problem(s):") != std::string::npos);
        CHECK(msg.find("line 2: expected true/false") != std::string::npos);
        CHECK(msg.find("line 4: unknown key 'bogus' in [grid]") != std::string::npos);
        CHECK(msg.find("line 5: unknown section [nope]") != std::string::npos);
        // synthetic never became true, so the data-file requirements fire too
        CHECK(msg.find("data.corpus is required") != std::string::npos);
    }

    CHECK_THROWS_WITH_AS(bench::parse_config_text("x = 1\n", "t"),
                         doctest::Contains("before any [section]"), std::runtime_error);
    CHECK_THROWS_WITH_AS(bench::parse_config_text("[data]\njunk\n", "t"),
                         doctest::Contains("expected key = value"), std::runtime_error);
    CHECK_THROWS_AS(bench::parse_config("/no/such/config.cfg"), std::runtime_error);
}

TEST_CASE("grid constraints: svm pairing and the us+uk definition") {
    CHECK_THROWS_WITH_AS(bench::parse_config_text("[data]\n"
                                                  "synthetic = true\n"
                                                  "[grid]\n"
                                                  "features = nela, d2v\n"
                                                  "models = svm\n",
                                                  "t"),
                         doctest::Contains("svm requires a scaled feature family"),
                         std::runtime_error);

    // svm beside an unscaled family is fine as long as one scaled family exists
    auto ok = bench::parse_config_text("[data]\n"
                                       "synthetic = true\n"
                                       "[grid]\n"
                                       "features = nela, nela-scaled\n"
                                       "models = random_forest, svm\n",
                                       "t");
    CHECK(ok.models.size() == 2);

    CHECK_THROWS_WITH_AS(bench::parse_config_text("[data]\n"
                                                  "synthetic = true\n"
                                                  "[grid]\n"
                                                  "trained = us+uk-vs-ur\n"
                                                  "schemes = country\n",
                                                  "t"),
                         doctest::Contains("us+uk-vs-ur cannot be evaluated under the country"),
                         std::runtime_error);

    // same definition is allowed once a non-country scheme joins the grid
    auto mixed = bench::parse_config_text("[data]\n"
                                          "synthetic = true\n"
                                          "[grid]\n"
                                          "trained = us+uk-vs-ur\n"
                                          "schemes = article, country\n",
                                          "t");
    CHECK(mixed.defs == std::vector<TrainDef>{TrainDef::USUK_VS_UR});
}

TEST_CASE("validate_config covers ranges and the synthetic knobs") {
    ExperimentConfig cfg;  // no paths, not synthetic
    auto v = bench::validate_config(cfg);
    REQUIRE(v.size() == 2);
    CHECK(v[0].find("data.corpus") != std::string::npos);
    CHECK(v[1].find("data.roster") != std::string::npos);

    cfg.synthetic = true;
    CHECK(bench::validate_config(cfg).empty());

    ExperimentConfig bad = cfg;
    bad.split.folds = 0;
    bad.svm.C = 0.0;
    bad.features.clear();
    auto bv = bench::validate_config(bad);
    auto has = [&](const char* needle) {
        for (const auto& s : bv)
            if (s.find(needle) != std::string::npos) return true;
        return false;
    };
    CHECK(has("split.folds"));
    CHECK(has("svm.c must be positive"));
    CHECK(has("grid.features"));

    ExperimentConfig hot = cfg;
    hot.synth.us_reliable.exclaim_rate = 1.0;
    auto hv = bench::validate_config(hot);
    REQUIRE(hv.size() == 1);
    CHECK(hv[0].find("regime rates") != std::string::npos);

    ExperimentConfig lazy = cfg;
    lazy.workers = 0;
    auto lv = bench::validate_config(lazy);
    REQUIRE(lv.size() == 1);
    CHECK(lv[0].find("run.workers") != std::string::npos);
}

TEST_CASE("synthetic corpus: shape, roster, determinism") {
    SyntheticSpec spec;
    spec.sources_per_class = 3;
    spec.articles_per_source = 10;
    auto c = bench::generate_synthetic_corpus(spec, 2024);

    CHECK(c.roster.size() == 9);
    CHECK(c.articles.size() == 90);
    std::size_t rel = 0, unrel = 0, us = 0, uk = 0;
    for (const auto& [name, entry] : c.roster) {
        if (entry.cls == corpus::ArticleClass::RELIABLE) ++rel;
        else ++unrel;
        if (entry.group == corpus::Group::US) ++us;
        if (entry.group == corpus::Group::UK) ++uk;
        CHECK(name == entry.source_name);
    }
    CHECK(rel == 6);
    CHECK(unrel == 3);
    CHECK(us == 3);
    CHECK(uk == 3);
    CHECK(c.roster.count("us-reliable-0") == 1);
    CHECK(c.roster.count("uk-reliable-2") == 1);
    CHECK(c.roster.count("unreliable-1") == 1);
    CHECK(c.roster.at("unreliable-0").factuality == 1);
    CHECK(c.roster.at("us-reliable-0").factuality == 5);

    CHECK(corpus::validate_corpus(c).clean());
    auto counts = c.count_by_source();
    for (const auto& [name, n] : counts) CHECK(n == 10);

    auto again = bench::generate_synthetic_corpus(spec, 2024);
    REQUIRE(again.articles.size() == c.articles.size());
    for (std::size_t i = 0; i < c.articles.size(); ++i) {
        CHECK(c.articles[i].id == again.articles[i].id);
        CHECK(c.articles[i].title == again.articles[i].title);
        CHECK(c.articles[i].body == again.articles[i].body);
    }

    auto other = bench::generate_synthetic_corpus(spec, 2025);
    bool any_diff = false;
    for (std::size_t i = 0; i < c.articles.size(); ++i)
        if (c.articles[i].body != other.articles[i].body) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("synthetic corpus: spelling cues track the source country") {
    SyntheticSpec spec;
    spec.sources_per_class = 2;
    spec.articles_per_source = 12;
    auto c = bench::generate_synthetic_corpus(spec, 77);

    std::size_t us_hits = 0, uk_hits = 0;
    for (const auto& art : c.articles) {
        bool uk_source = art.source_name.rfind("uk-", 0) == 0;
        auto tokens = word_tokens(art.title + " " + art.body);
        for (const auto& t : tokens) {
            if (uk_source) {
                CHECK(us_spellings().count(t) == 0);
                if (uk_spellings().count(t)) ++uk_hits;
            } else {
                CHECK(uk_spellings().count(t) == 0);
                if (us_spellings().count(t)) ++us_hits;
            }
        }
    }
    // ~10% of slots carry a spelling cue; dozens of articles cannot miss
    CHECK(us_hits > 0);
    CHECK(uk_hits > 0);
}

TEST_CASE("synthetic corpus: unreliable regime shouts more") {
    SyntheticSpec spec;
    spec.sources_per_class = 3;
    spec.articles_per_source = 15;
    auto c = bench::generate_synthetic_corpus(spec, 9);

    auto exclaim_share = [&](const char* prefix) {
        std::size_t bangs = 0, enders = 0;
        for (const auto& art : c.articles) {
            if (art.source_name.rfind(prefix, 0) != 0) continue;
            for (char ch : art.body) {
                if (ch == '!') ++bangs;
                if (ch == '!' || ch == '.' || ch == '?') ++enders;
            }
        }
        REQUIRE(enders > 0);
        return double(bangs) / double(enders);
    };
    // spec defaults: 0.08 (us reliable) vs 0.30 (unreliable)
    CHECK(exclaim_share("unreliable-") > exclaim_share("us-reliable-") + 0.05);
}

TEST_CASE("heatmap svg: annotated cells and n/a rows") {
    Matrix m(2, 2);
    m.at(0, 0) = 0.75;
    m.at(0, 1) = 0.25;
    m.at(1, 0) = 0.10;
    m.at(1, 1) = 0.90;

    auto svg = bench::emit_heatmap(m, {true, true}, "cell a<b");
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find(">0.75</text>") != std::string::npos);
    CHECK(svg.find(">0.25</text>") != std::string::npos);
    CHECK(svg.find(">0.90</text>") != std::string::npos);
    CHECK(svg.find("rgb(64,64,64)") != std::string::npos);   // 0.75 -> gray 64
    CHECK(svg.find("rgb(191,191,191)") != std::string::npos);  // 0.25 -> gray 191
    CHECK(svg.find(">reliable</text>") != std::string::npos);
    CHECK(svg.find(">unreliable</text>") != std::string::npos);
    CHECK(svg.find(">predicted</text>") != std::string::npos);
    CHECK(svg.find(">true</text>") != std::string::npos);
    CHECK(svg.find("cell a&lt;b") != std::string::npos);
    CHECK(svg.find("n/a") == std::string::npos);

    auto partial = bench::emit_heatmap(m, {true, false});
    CHECK(partial.find("n/a") != std::string::npos);
    CHECK(partial.find("#dddddd") != std::string::npos);

    Matrix wide(2, 3);
    CHECK_THROWS_AS(bench::emit_heatmap(wide, {true, true}), std::invalid_argument);
}

TEST_CASE("run: micro grid end to end") {
    namespace fs = std::filesystem;
    fs::path out = fs::temp_directory_path() / "veribench-run-micro";
    fs::remove_all(out);

    ExperimentConfig cfg;
    cfg.synthetic = true;
    cfg.synth.sources_per_class = 3;
    cfg.synth.articles_per_source = 8;
    cfg.features = {FeatureFamily::NELA, FeatureFamily::NELA_SCALED};
    cfg.models = {eval::ModelSpec::Kind::FOREST, eval::ModelSpec::Kind::SVM};
    cfg.defs = {TrainDef::US_VS_UR};
    cfg.schemes = {eval::Scheme::ARTICLE, eval::Scheme::COUNTRY};
    cfg.split.folds = 2;
    cfg.split.test_fraction = 0.25;
    cfg.forest.n_trees = 4;
    cfg.svm.epochs = 200;
    cfg.master_seed = 11;
    cfg.out_dir = out.string();

    std::ostringstream log;
    auto rc = bench::run(cfg, &log);
    INFO(log.str());
    CHECK(rc.exit_code == 0);
    // nela x svm drops out silently; 3 allowed combos x 2 schemes remain
    CHECK(rc.cells_attempted == 6);
    CHECK(rc.cells_ok == 6);
    CHECK(rc.failures.empty());
    CHECK(rc.table.rows.size() == 6);

    CHECK(fs::exists(out / "corpus.jsonl"));
    CHECK(fs::exists(out / "roster.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "tables" / "results.csv"));
    CHECK(fs::exists(out / "tables" / "results.txt"));
    CHECK(fs::exists(out / "tables" / "pivot.csv"));
    CHECK(fs::exists(out / "tables" / "pivot.txt"));
    CHECK_FALSE(fs::exists(out / "failures.txt"));

    std::size_t jsons = 0, svgs = 0;
    for (const auto& e : fs::directory_iterator(out / "results"))
        if (e.path().extension() == ".json") ++jsons;
    for (const auto& e : fs::directory_iterator(out / "heatmaps"))
        if (e.path().extension() == ".svg") ++svgs;
    CHECK(jsons == 6);
    CHECK(svgs == 6);
    CHECK(fs::exists(out / "results" / "nela__random_forest__us-vs-ur__article.json"));
    CHECK(fs::exists(out / "heatmaps" / "nela-scaled__svm__us-vs-ur__country.svg"));

    auto manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("veribench-run-v1") != std::string::npos);
    CHECK(manifest.find(bench::config_hash(cfg)) != std::string::npos);
    CHECK(manifest.find("nela-open-v1") != std::string::npos);

    // per-cell json survives a parse round trip and matches the table
    auto lr = bench::read_cell_json(
        slurp(out / "results" / "nela__random_forest__us-vs-ur__article.json"));
    CHECK(lr.feature_label == "NELA");
    CHECK(lr.model_label == "random_forest");
    CHECK(lr.trained_on == "US-vs-UR");
    CHECK(lr.scheme == "article");
    CHECK(lr.result.fold_accuracies.size() == 2);
    CHECK(lr.result.manifest.folds == 2);
    CHECK(lr.result.has_importance);

    auto collected = bench::collect_results((out / "results").string());
    REQUIRE(collected.rows.size() == 6);
    auto key = [](const eval::ResultRow& r) {
        return r.feature_label + "|" + r.model_label + "|" + r.trained_on + "|" + r.scheme;
    };
    std::map<std::string, std::string> want, got;
    for (const auto& r : rc.table.rows) want[key(r)] = r.cell;
    for (const auto& r : collected.rows) got[key(r)] = r.cell;
    CHECK(want == got);

    fs::remove_all(out);
}

TEST_CASE("run: invalid config returns exit code 1 without output") {
    ExperimentConfig cfg;  // not synthetic, no paths
    std::ostringstream log;
    auto rc = bench::run(cfg, &log);
    CHECK(rc.exit_code == 1);
    CHECK(rc.cells_attempted == 0);
    CHECK(log.str().find("data.corpus is required") != std::string::npos);
}

TEST_CASE("read_cell_json rejects foreign schemas") {
    CHECK_THROWS_AS(bench::read_cell_json("{\"schema\": \"other\"}"), std::runtime_error);
    CHECK_THROWS_AS(bench::read_cell_json("not json"), nlohmann::json::exception);
}
