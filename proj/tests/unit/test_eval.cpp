#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "veribench/eval.hpp"
#include "veribench/rng.hpp"

using namespace veribench;
using eval::LabeledDataset;
using eval::LabeledRow;
using eval::Scheme;
using eval::SplitConfig;

namespace {

// separable two-cluster dataset: class 0 near 0, class 1 near 4, with groups
// and sources arranged for every scheme
LabeledDataset toy_dataset(std::size_t per_source = 6) {
    struct Src {
        const char* name;
        corpus::ArticleClass cls;
        corpus::Group group;
    };
    const Src sources[] = {
        {"us-a", corpus::ArticleClass::RELIABLE, corpus::Group::US},
        {"us-b", corpus::ArticleClass::RELIABLE, corpus::Group::US},
        {"uk-a", corpus::ArticleClass::RELIABLE, corpus::Group::UK},
        {"uk-b", corpus::ArticleClass::RELIABLE, corpus::Group::UK},
        {"ur-a", corpus::ArticleClass::UNRELIABLE, corpus::Group::NONE},
        {"ur-b", corpus::ArticleClass::UNRELIABLE, corpus::Group::NONE},
    };
    LabeledDataset ds;
    ds.signature = "sig";
    Rng rng(1);
    for (const auto& s : sources) {
        for (std::size_t a = 0; a < per_source; ++a) {
            LabeledRow row;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s-%02zu", s.name, a);
            row.article_id = buf;
            row.cls = s.cls;
            row.source_name = s.name;
            row.group = s.group;
            double center = s.cls == corpus::ArticleClass::RELIABLE ? 0.0 : 4.0;
            row.features = {center + rng.uniform(-1.0, 1.0), rng.uniform01()};
            ds.rows.push_back(std::move(row));
        }
    }
    return ds;
}

std::set<std::string> sources_of(const LabeledDataset& ds, const std::vector<std::string>& ids) {
    std::set<std::string> out;
    for (const auto& id : ids)
        for (const auto& row : ds.rows)
            if (row.article_id == id) out.insert(row.source_name);
    return out;
}

}  // namespace

TEST_CASE("class indices and scheme names") {
    CHECK(eval::class_index(corpus::ArticleClass::RELIABLE) == 0);
    CHECK(eval::class_index(corpus::ArticleClass::UNRELIABLE) == 1);
    CHECK(std::string(eval::to_string(Scheme::ARTICLE)) == "article");
    CHECK(eval::parse_scheme("source") == Scheme::SOURCE);
    CHECK(eval::parse_scheme("country") == Scheme::COUNTRY);
    CHECK_THROWS_AS(eval::parse_scheme("bogus"), std::invalid_argument);
}

TEST_CASE("build_dataset checks alignment and signatures") {
    corpus::Corpus c;
    c.roster.emplace("alpha", corpus::make_source_entry("alpha", 5, corpus::Group::US));
    corpus::Article a;
    a.id = "a1";
    a.source_name = "alpha";
    a.body = "Words here.";
    c.articles.push_back(a);

    text::FeatureVector fv;
    fv.values = {1.0, 2.0};
    fv.signature = "sig";
    auto ds = eval::build_dataset(c, {fv}, "sig");
    REQUIRE(ds.rows.size() == 1);
    CHECK(ds.rows[0].article_id == "a1");
    CHECK(ds.rows[0].cls == corpus::ArticleClass::RELIABLE);
    CHECK(ds.rows[0].group == corpus::Group::US);
    CHECK(ds.rows[0].features == std::vector<double>{1.0, 2.0});

    CHECK_THROWS_AS(eval::build_dataset(c, {}, "sig"), std::invalid_argument);
    text::FeatureVector wrong = fv;
    wrong.signature = "other";
    CHECK_THROWS_AS(eval::build_dataset(c, {wrong}, "sig"), std::invalid_argument);

    corpus::Article ghost = a;
    ghost.id = "a2";
    ghost.source_name = "nobody";
    c.articles.push_back(ghost);
    CHECK_THROWS_AS(eval::build_dataset(c, {fv, fv}, "sig"), std::invalid_argument);
}

TEST_CASE("build_token_dataset lowercases words and drops punctuation") {
    corpus::Corpus c;
    c.roster.emplace("alpha", corpus::make_source_entry("alpha", 5, corpus::Group::US));
    corpus::Article a;
    a.id = "a1";
    a.source_name = "alpha";
    a.title = "Big News";
    a.body = "Shocking, really!";
    c.articles.push_back(a);

    auto ds = eval::build_token_dataset(c);
    REQUIRE(ds.has_tokens);
    REQUIRE(ds.tokens.size() == 1);
    CHECK(ds.tokens[0] == std::vector<std::string>{"big", "news", "shocking", "really"});
}

TEST_CASE("article plan: sizes, partition, determinism") {
    auto ds = toy_dataset(6);  // 36 rows
    SplitConfig cfg;
    cfg.test_fraction = 0.25;
    cfg.folds = 8;
    cfg.seed = 99;
    auto plan = eval::article_split_plan(ds, cfg);
    REQUIRE(plan.folds.size() == 8);
    CHECK(plan.scheme == Scheme::ARTICLE);

    std::set<std::string> all_ids;
    for (const auto& row : ds.rows) all_ids.insert(row.article_id);

    for (const auto& fold : plan.folds) {
        CHECK(fold.test_ids.size() == 9);  // llround(0.25 * 36)
        CHECK(fold.train_ids.size() == 27);
        std::set<std::string> train(fold.train_ids.begin(), fold.train_ids.end());
        std::set<std::string> test(fold.test_ids.begin(), fold.test_ids.end());
        CHECK(train.size() + test.size() == all_ids.size());
        for (const auto& id : test) CHECK(train.count(id) == 0);
        std::set<std::string> both = train;
        both.insert(test.begin(), test.end());
        CHECK(both == all_ids);
    }

    // folds differ from each other but reruns reproduce them exactly
    CHECK(plan.folds[0].test_ids != plan.folds[1].test_ids);
    auto again = eval::article_split_plan(ds, cfg);
    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        CHECK(plan.folds[f].train_ids == again.folds[f].train_ids);
        CHECK(plan.folds[f].test_ids == again.folds[f].test_ids);
    }

    LabeledDataset tiny;
    for (int i = 0; i < 4; ++i) {
        LabeledRow r;
        r.article_id = std::to_string(i);
        tiny.rows.push_back(r);
    }
    CHECK_THROWS_AS(eval::article_split_plan(tiny, cfg), std::invalid_argument);
    SplitConfig bad = cfg;
    bad.test_fraction = 1.5;
    CHECK_THROWS_AS(eval::article_split_plan(ds, bad), std::invalid_argument);
}

TEST_CASE("article plan clamps tiny test fractions to one row") {
    auto ds = toy_dataset(2);  // 12 rows
    SplitConfig cfg;
    cfg.test_fraction = 0.01;
    cfg.folds = 3;
    auto plan = eval::article_split_plan(ds, cfg);
    for (const auto& fold : plan.folds) CHECK(fold.test_ids.size() == 1);
}

TEST_CASE("source plan: no source straddles train and test") {
    auto ds = toy_dataset(5);
    SplitConfig cfg;
    cfg.test_fraction = 0.34;  // ceil(0.34 * 6) = 3 held-out sources
    cfg.folds = 12;
    cfg.seed = 7;
    auto plan = eval::source_split_plan(ds, cfg);
    REQUIRE(plan.folds.size() == 12);

    for (const auto& fold : plan.folds) {
        auto train_src = sources_of(ds, fold.train_ids);
        auto test_src = sources_of(ds, fold.test_ids);
        for (const auto& s : test_src) CHECK(train_src.count(s) == 0);
        // every article of a held-out source is in test
        for (const auto& row : ds.rows)
            if (test_src.count(row.source_name))
                CHECK(std::find(fold.test_ids.begin(), fold.test_ids.end(), row.article_id) !=
                      fold.test_ids.end());
        // stratification: both classes appear among held-out sources
        bool has_rel = false, has_ur = false;
        for (const auto& s : test_src) {
            if (s.rfind("ur", 0) == 0) has_ur = true;
            else has_rel = true;
        }
        CHECK(has_rel);
        CHECK(has_ur);
    }
}

TEST_CASE("source plan errors: thin rosters and impossible folds") {
    // one source per class: cannot hold any out
    LabeledDataset thin;
    for (int i = 0; i < 6; ++i) {
        LabeledRow r;
        r.article_id = "a" + std::to_string(i);
        r.cls = i < 3 ? corpus::ArticleClass::RELIABLE : corpus::ArticleClass::UNRELIABLE;
        r.source_name = i < 3 ? "rel" : "unrel";
        thin.rows.push_back(r);
    }
    SplitConfig cfg;
    CHECK_THROWS_AS(eval::source_split_plan(thin, cfg), std::invalid_argument);

    // 2+2 sources with 3 held out always strips a class from train
    LabeledDataset four;
    const char* names[] = {"r1", "r2", "u1", "u2"};
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 3; ++a) {
            LabeledRow r;
            r.article_id = std::string(names[s]) + "-" + std::to_string(a);
            r.cls = s < 2 ? corpus::ArticleClass::RELIABLE : corpus::ArticleClass::UNRELIABLE;
            r.source_name = names[s];
            four.rows.push_back(r);
        }
    SplitConfig drastic;
    drastic.test_fraction = 0.75;
    drastic.folds = 1;
    CHECK_THROWS_AS(eval::source_split_plan(four, drastic), std::runtime_error);

    // a source cannot carry both classes
    LabeledDataset mixed = thin;
    mixed.rows[3].source_name = "rel";
    CHECK_THROWS_AS(eval::source_split_plan(mixed, cfg), std::invalid_argument);
}

TEST_CASE("country plan: held-out group never trains") {
    auto ds = toy_dataset(4);
    auto plan = eval::country_split_plan(ds, corpus::Group::US);
    REQUIRE(plan.folds.size() == 1);
    CHECK(plan.scheme == Scheme::COUNTRY);
    CHECK(plan.train_group == corpus::Group::US);
    CHECK(plan.test_group == corpus::Group::UK);

    auto row_by_id = [&](const std::string& id) -> const LabeledRow& {
        for (const auto& r : ds.rows)
            if (r.article_id == id) return r;
        throw std::logic_error("missing id");
    };
    const auto& fold = plan.folds[0];
    for (const auto& id : fold.test_ids) {
        const auto& r = row_by_id(id);
        CHECK(r.group == corpus::Group::UK);
        CHECK(r.cls == corpus::ArticleClass::RELIABLE);
    }
    std::size_t ur_in_train = 0;
    for (const auto& id : fold.train_ids) {
        const auto& r = row_by_id(id);
        CHECK(r.group != corpus::Group::UK);
        if (r.cls == corpus::ArticleClass::UNRELIABLE) ++ur_in_train;
    }
    CHECK(ur_in_train == 8);  // every unreliable article trains
    CHECK(fold.test_ids.size() == 8);

    auto flipped = eval::country_split_plan(ds, corpus::Group::UK);
    CHECK(flipped.folds[0].test_ids.size() == 8);  // now the US side
    CHECK_THROWS_AS(eval::country_split_plan(ds, corpus::Group::NONE), std::invalid_argument);

    LabeledDataset no_ur;
    for (const auto& r : ds.rows)
        if (r.cls == corpus::ArticleClass::RELIABLE) no_ur.rows.push_back(r);
    CHECK_THROWS_AS(eval::country_split_plan(no_ur, corpus::Group::US), std::invalid_argument);

    LabeledDataset no_uk;
    for (const auto& r : ds.rows)
        if (r.group != corpus::Group::UK) no_uk.rows.push_back(r);
    CHECK_THROWS_AS(eval::country_split_plan(no_uk, corpus::Group::US), std::invalid_argument);
}

TEST_CASE("confusion matrix worked examples") {
    // true [A,A,B], predicted [A,B,B]
    auto m = eval::confusion_matrix({0, 0, 1}, {0, 1, 1}, true);
    CHECK(m.at(0, 0) == 0.5);
    CHECK(m.at(0, 1) == 0.5);
    CHECK(m.at(1, 0) == 0.0);
    CHECK(m.at(1, 1) == 1.0);

    auto raw = eval::confusion_matrix({0, 0, 1}, {0, 1, 1}, false);
    CHECK(raw.at(0, 0) == 1.0);
    CHECK(raw.at(0, 1) == 1.0);
    CHECK(raw.at(1, 1) == 1.0);

    auto perfect = eval::confusion_matrix({0, 1, 0, 1}, {0, 1, 0, 1}, true);
    CHECK(perfect.at(0, 0) == 1.0);
    CHECK(perfect.at(1, 1) == 1.0);
    CHECK(perfect.at(0, 1) == 0.0);

    std::array<bool, 2> absent{};
    auto one_class = eval::confusion_matrix({0, 0}, {0, 1}, true, &absent);
    CHECK_FALSE(absent[0]);
    CHECK(absent[1]);
    CHECK(one_class.at(1, 0) == 0.0);
    CHECK(one_class.at(1, 1) == 0.0);

    CHECK_THROWS_AS(eval::confusion_matrix({0}, {0, 1}, true), std::invalid_argument);
    CHECK_THROWS_AS(eval::confusion_matrix({}, {}, true), std::invalid_argument);
    CHECK_THROWS_AS(eval::confusion_matrix({2}, {0}, true), std::invalid_argument);
}

TEST_CASE("accuracy equals the diagonal of the raw confusion") {
    Rng rng(64);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + rng.below(40);
        std::vector<int> yt(n), yp(n);
        for (std::size_t i = 0; i < n; ++i) {
            yt[i] = int(rng.below(2));
            yp[i] = int(rng.below(2));
        }
        auto raw = eval::confusion_matrix(yt, yp, false);
        double acc = eval::accuracy(yt, yp);
        CHECK(acc == (raw.at(0, 0) + raw.at(1, 1)) / double(n));
    }
    CHECK_THROWS_AS(eval::accuracy({}, {}), std::invalid_argument);
}

TEST_CASE("run_experiment: aggregation arithmetic and manifest") {
    auto ds = toy_dataset(6);
    SplitConfig cfg;
    cfg.folds = 6;
    cfg.seed = 3;
    auto plan = eval::article_split_plan(ds, cfg);

    eval::ModelSpec mspec;
    mspec.forest.n_trees = 5;
    eval::FeatureSpec fspec;

    auto res = eval::run_experiment(ds, plan, mspec, fspec, 1234);
    REQUIRE(res.fold_accuracies.size() == 6);
    REQUIRE(res.fold_confusions.size() == 6);
    REQUIRE(res.fold_row_absent.size() == 6);

    double sum = 0.0;
    for (double a : res.fold_accuracies) sum += a;
    CHECK(res.mean == sum / 6.0);
    double ss = 0.0;
    for (double a : res.fold_accuracies) ss += (a - res.mean) * (a - res.mean);
    CHECK(res.stddev == std::sqrt(ss / 6.0));

    // separable data: the forest should be near-perfect
    CHECK(res.mean > 0.9);

    // fold-averaged confusion equals the element-wise mean over defined rows
    for (std::size_t r = 0; r < 2; ++r) {
        double c0 = 0.0, c1 = 0.0;
        std::size_t defined = 0;
        for (std::size_t f = 0; f < 6; ++f) {
            if (res.fold_row_absent[f][r]) continue;
            c0 += res.fold_confusions[f].at(r, 0);
            c1 += res.fold_confusions[f].at(r, 1);
            ++defined;
        }
        REQUIRE(defined > 0);
        CHECK(res.confusion.at(r, 0) == c0 / double(defined));
        CHECK(res.confusion.at(r, 1) == c1 / double(defined));
        CHECK(res.confusion_row_defined[r]);
        CHECK(res.confusion.at(r, 0) + res.confusion.at(r, 1) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    CHECK(res.has_importance);
    double isum = 0.0;
    for (double x : res.importance_mean) isum += x;
    CHECK(isum == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(res.manifest.run_seed == 1234);
    CHECK(res.manifest.feature_signature == "sig");
    CHECK(res.manifest.embedding_tag.empty());
    CHECK(res.manifest.scheme == "article");
    CHECK(res.manifest.model == "random_forest");
    CHECK(res.manifest.folds == 6);
    CHECK(res.manifest.rows == ds.rows.size());
}

TEST_CASE("run_experiment: reruns and worker counts change nothing") {
    // overlapping clusters, otherwise every seed fits the data perfectly and
    // the different-seed probe below has nothing to observe
    auto ds = toy_dataset(5);
    {
        Rng noise(33);
        for (auto& row : ds.rows) {
            double center = row.cls == corpus::ArticleClass::RELIABLE ? 0.0 : 1.0;
            row.features = {center + noise.uniform(-1.5, 1.5), noise.uniform01()};
        }
    }
    SplitConfig cfg;
    cfg.folds = 5;
    cfg.seed = 21;
    auto plan = eval::article_split_plan(ds, cfg);
    eval::ModelSpec mspec;
    mspec.forest.n_trees = 4;
    eval::FeatureSpec fspec;
    fspec.scaled = true;

    auto r1 = eval::run_experiment(ds, plan, mspec, fspec, 7, 1);
    auto r2 = eval::run_experiment(ds, plan, mspec, fspec, 7, 1);
    auto r4 = eval::run_experiment(ds, plan, mspec, fspec, 7, 4);

    CHECK(r1.fold_accuracies == r2.fold_accuracies);
    CHECK(r1.fold_accuracies == r4.fold_accuracies);
    CHECK(r1.confusion.data == r4.confusion.data);
    CHECK(r1.importance_mean == r4.importance_mean);
    CHECK(r1.manifest.feature_signature == "sig+scaled");

    auto r_other = eval::run_experiment(ds, plan, mspec, fspec, 8, 1);
    bool differs = r1.fold_accuracies != r_other.fold_accuracies ||
                   r1.importance_mean != r_other.importance_mean;
    CHECK(differs);
}

TEST_CASE("run_experiment: svm needs a scaled variant, d2v needs tokens") {
    auto ds = toy_dataset(5);
    SplitConfig cfg;
    cfg.folds = 2;
    auto plan = eval::article_split_plan(ds, cfg);

    eval::ModelSpec svm_spec;
    svm_spec.kind = eval::ModelSpec::Kind::SVM;
    eval::FeatureSpec unscaled;
    CHECK_THROWS_WITH_AS(eval::run_experiment(ds, plan, svm_spec, unscaled, 1),
                         doctest::Contains("scaled"), std::invalid_argument);

    eval::FeatureSpec scaled;
    scaled.scaled = true;
    auto res = eval::run_experiment(ds, plan, svm_spec, scaled, 1);
    CHECK(res.mean > 0.8);
    CHECK_FALSE(res.has_importance);

    eval::FeatureSpec d2v;
    d2v.kind = eval::FeatureSpec::Kind::D2V;
    CHECK_THROWS_AS(eval::run_experiment(ds, plan, eval::ModelSpec{}, d2v, 1),
                    std::invalid_argument);
}

TEST_CASE("run_experiment trains embeddings inside each fold") {
    corpus::Corpus c;
    c.roster.emplace("sea", corpus::make_source_entry("sea", 5, corpus::Group::US));
    c.roster.emplace("farm", corpus::make_source_entry("farm", 1, corpus::Group::NONE));
    Rng rng(31);
    const std::vector<std::string> sea_pool = {"ship", "sea", "tide", "sail"};
    const std::vector<std::string> farm_pool = {"wheat", "farm", "crop", "field"};
    for (int i = 0; i < 16; ++i) {
        corpus::Article a;
        bool sea = i < 8;
        a.id = (sea ? "sea-" : "farm-") + std::to_string(i);
        a.source_name = sea ? "sea" : "farm";
        const auto& pool = sea ? sea_pool : farm_pool;
        for (int w = 0; w < 10; ++w) a.body += pool[rng.below(pool.size())] + " ";
        c.articles.push_back(std::move(a));
    }
    auto ds = eval::build_token_dataset(c);

    SplitConfig cfg;
    cfg.folds = 2;
    cfg.seed = 5;
    auto plan = eval::article_split_plan(ds, cfg);

    eval::ModelSpec mspec;
    mspec.forest.n_trees = 5;
    eval::FeatureSpec fspec;
    fspec.kind = eval::FeatureSpec::Kind::D2V;
    fspec.d2v.dimension = 6;
    fspec.d2v.epochs = 8;
    fspec.d2v.min_count = 1;
    fspec.infer_steps = 10;

    auto res = eval::run_experiment(ds, plan, mspec, fspec, 42);
    CHECK_FALSE(res.manifest.embedding_tag.empty());
    CHECK(res.manifest.feature_signature == res.manifest.embedding_tag);
    CHECK(res.fold_accuracies.size() == 2);

    // scaled d2v stamps the suffix
    eval::FeatureSpec scaled = fspec;
    scaled.scaled = true;
    auto res2 = eval::run_experiment(ds, plan, mspec, scaled, 42);
    CHECK(res2.manifest.feature_signature == res2.manifest.embedding_tag + "+scaled");
}

TEST_CASE("format_cell follows the table convention") {
    CHECK(eval::format_cell(0.904, 0.01, 20) == "0.904 (+/- 0.01)");
    CHECK(eval::format_cell(0.488, 0.0, 1) == "0.488");
    CHECK(eval::format_cell(0.9046, 0.015, 2) == "0.905 (+/- 0.01)");  // %.3f / %.2f
    CHECK(eval::format_cell(1.0, 0.0, 20) == "1.000 (+/- 0.00)");
}

TEST_CASE("aggregate_results builds rows and rejects duplicates") {
    eval::LabeledResult a;
    a.feature_label = "NELA";
    a.model_label = "random_forest";
    a.trained_on = "US-vs-UR";
    a.scheme = "article";
    a.result.fold_accuracies = {0.9, 0.91};
    a.result.mean = 0.905;
    a.result.stddev = 0.005;

    eval::LabeledResult b = a;
    b.scheme = "country";
    b.result.fold_accuracies = {0.488};
    b.result.mean = 0.488;
    b.result.stddev = 0.0;

    auto table = eval::aggregate_results({a, b});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].cell == "0.905 (+/- 0.01)");
    CHECK(table.rows[1].cell == "0.488");
    CHECK(table.rows[1].folds == 1);

    CHECK_THROWS_AS(eval::aggregate_results({a, a}), std::invalid_argument);
    CHECK_THROWS_AS(eval::aggregate_results({}), std::invalid_argument);
}

TEST_CASE("results writers emit csv, text, and pivot layouts") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "veribench-results-test";
    fs::create_directories(dir);

    eval::LabeledResult a;
    a.feature_label = "NELA";
    a.model_label = "random_forest";
    a.trained_on = "US-vs-UR";
    a.scheme = "article";
    a.result.fold_accuracies = {0.9, 0.91};
    a.result.mean = 0.905;
    a.result.stddev = 0.005;
    eval::LabeledResult b = a;
    b.scheme = "country";
    b.result.fold_accuracies = {0.488};
    b.result.mean = 0.488;
    auto table = eval::aggregate_results({a, b});

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    auto csv_path = (dir / "results.csv").string();
    eval::write_results_csv(table, csv_path);
    auto csv = slurp(csv_path);
    CHECK(csv.find("feature,model,trained_on,scheme,folds,mean,stddev,accuracy") !=
          std::string::npos);
    CHECK(csv.find("NELA,random_forest,US-vs-UR,article,2,") != std::string::npos);

    auto txt_path = (dir / "results.txt").string();
    eval::write_results_text(table, txt_path);
    auto txt = slurp(txt_path);
    CHECK(txt.find("0.905 (+/- 0.01)") != std::string::npos);

    auto pivot_path = (dir / "pivot.csv").string();
    eval::write_pivot_csv(table, pivot_path);
    auto pivot = slurp(pivot_path);
    CHECK(pivot.find("feature,model,trained_on,article,source,country") != std::string::npos);
    // source cell was never run: "-"
    CHECK(pivot.find("NELA,random_forest,US-vs-UR,0.905 (+/- 0.01),-,0.488") !=
          std::string::npos);

    auto ptxt_path = (dir / "pivot.txt").string();
    eval::write_pivot_text(table, ptxt_path);
    CHECK(slurp(ptxt_path).find("article") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("result json is schema-tagged and carries the fold data") {
    auto ds = toy_dataset(5);
    SplitConfig cfg;
    cfg.folds = 3;
    auto plan = eval::article_split_plan(ds, cfg);
    eval::ModelSpec mspec;
    mspec.forest.n_trees = 3;
    auto res = eval::run_experiment(ds, plan, mspec, eval::FeatureSpec{}, 5);
    auto json = eval::result_to_json(res);
    CHECK(json.find("veribench-result-v1") != std::string::npos);
    CHECK(json.find("fold_accuracies") != std::string::npos);
    CHECK(json.find("confusion") != std::string::npos);
    CHECK(json.find("importance") != std::string::npos);
    CHECK(json.find("\"folds\": 3") != std::string::npos);
}
