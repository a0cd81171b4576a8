#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "veribench/eval.hpp"
#include "veribench/rng.hpp"

namespace veribench::eval {

int class_index(corpus::ArticleClass c) {
    return c == corpus::ArticleClass::RELIABLE ? 0 : 1;
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::ARTICLE: return "article";
        case Scheme::SOURCE: return "source";
        default: return "country";
    }
}

Scheme parse_scheme(std::string_view s) {
    if (s == "article") return Scheme::ARTICLE;
    if (s == "source") return Scheme::SOURCE;
    if (s == "country") return Scheme::COUNTRY;
    throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

namespace {

LabeledRow row_of(const corpus::Corpus& c, const corpus::Article& a) {
    auto it = c.roster.find(a.source_name);
    if (it == c.roster.end())
        throw std::invalid_argument("build_dataset: article '" + a.id +
                                    "' names unknown source '" + a.source_name + "'");
    LabeledRow row;
    row.article_id = a.id;
    row.cls = it->second.cls;
    row.source_name = a.source_name;
    row.group = it->second.group;
    return row;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& ch : out)
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    return out;
}

}  // namespace

LabeledDataset build_dataset(const corpus::Corpus& c,
                             const std::vector<text::FeatureVector>& feats,
                             const std::string& signature) {
    if (feats.size() != c.articles.size())
        throw std::invalid_argument("build_dataset: feature/article count mismatch");
    LabeledDataset ds;
    ds.signature = signature;
    ds.rows.reserve(c.articles.size());
    for (std::size_t i = 0; i < c.articles.size(); ++i) {
        if (feats[i].signature != signature)
            throw std::invalid_argument("build_dataset: row " + std::to_string(i) +
                                        " carries signature '" + feats[i].signature +
                                        "', expected '" + signature + "'");
        LabeledRow row = row_of(c, c.articles[i]);
        row.features = feats[i].values;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

LabeledDataset build_token_dataset(const corpus::Corpus& c) {
    LabeledDataset ds;
    ds.has_tokens = true;
    ds.rows.reserve(c.articles.size());
    ds.tokens.reserve(c.articles.size());
    for (const auto& a : c.articles) {
        ds.rows.push_back(row_of(c, a));
        std::string raw = a.title.empty() ? a.body : a.title + "\n" + a.body;
        std::vector<std::string> toks;
        for (auto& t : text::tokenize(raw))
            if (text::is_word_token(t)) toks.push_back(ascii_lower(t));
        ds.tokens.push_back(std::move(toks));
    }
    return ds;
}

namespace {

// id-sorted row indices give every plan a canonical base order
std::vector<std::size_t> sorted_indices(const LabeledDataset& ds) {
    std::vector<std::size_t> idx(ds.rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ds.rows[a].article_id < ds.rows[b].article_id;
    });
    return idx;
}

}  // namespace

SplitPlan article_split_plan(const LabeledDataset& ds, const SplitConfig& cfg) {
    const std::size_t n = ds.rows.size();
    if (n < 5) throw std::invalid_argument("article_split_plan: need at least 5 rows");
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0))
        throw std::invalid_argument("article_split_plan: test_fraction must be in (0,1)");
    if (cfg.folds < 1) throw std::invalid_argument("article_split_plan: folds must be >= 1");

    auto base = sorted_indices(ds);
    std::size_t k = static_cast<std::size_t>(
        std::llround(cfg.test_fraction * static_cast<double>(n)));
    k = std::min(std::max<std::size_t>(k, 1), n - 1);

    SplitPlan plan;
    plan.scheme = Scheme::ARTICLE;
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        Rng rng(derive_seed(cfg.seed, f));
        auto picks = sample_without_replacement(n, k, rng);
        std::vector<char> in_test(n, 0);
        for (std::size_t p : picks) in_test[p] = 1;
        Fold fold;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& id = ds.rows[base[i]].article_id;
            if (in_test[i]) fold.test_ids.push_back(id);
            else fold.train_ids.push_back(id);
        }
        if (fold.train_ids.empty() || fold.test_ids.empty())
            throw std::invalid_argument("article_split_plan: empty fold side");
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

SplitPlan source_split_plan(const LabeledDataset& ds, const SplitConfig& cfg) {
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0))
        throw std::invalid_argument("source_split_plan: test_fraction must be in (0,1)");
    if (cfg.folds < 1) throw std::invalid_argument("source_split_plan: folds must be >= 1");

    // sources with their class, sorted by name for a canonical order
    std::map<std::string, int> source_class;
    for (const auto& row : ds.rows) {
        auto [it, inserted] = source_class.emplace(row.source_name, class_index(row.cls));
        if (!inserted && it->second != class_index(row.cls))
            throw std::invalid_argument("source_split_plan: source '" + row.source_name +
                                        "' carries both classes");
    }
    std::vector<std::string> sources;
    std::size_t per_class[2] = {0, 0};
    for (const auto& [name, cls] : source_class) {
        sources.push_back(name);
        ++per_class[static_cast<std::size_t>(cls)];
    }
    const std::size_t S = sources.size();
    for (int c = 0; c < 2; ++c)
        if (per_class[c] < 2)
            throw std::invalid_argument(std::string("source_split_plan: need at least 2 '") +
                                        kClassNames[static_cast<std::size_t>(c)] + "' sources");

    std::size_t k = static_cast<std::size_t>(
        std::ceil(cfg.test_fraction * static_cast<double>(S)));
    k = std::min(std::max<std::size_t>(k, 1), S - 1);

    std::map<std::string, std::vector<std::string>> by_source;
    for (const auto& row : ds.rows) by_source[row.source_name].push_back(row.article_id);

    SplitPlan plan;
    plan.scheme = Scheme::SOURCE;
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        Rng rng(derive_seed(cfg.seed, f));
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            auto picks = sample_without_replacement(S, k, rng);
            std::set<std::size_t> test_set(picks.begin(), picks.end());

            bool test_cls[2] = {false, false}, train_cls[2] = {false, false};
            for (std::size_t i = 0; i < S; ++i) {
                int c = source_class[sources[i]];
                (test_set.count(i) ? test_cls : train_cls)[c] = true;
            }
            if (!train_cls[0] || !train_cls[1]) continue;
            if (cfg.stratify_sources && k >= 2 && (!test_cls[0] || !test_cls[1])) continue;

            Fold fold;
            for (std::size_t i = 0; i < S; ++i) {
                auto& dst = test_set.count(i) ? fold.test_ids : fold.train_ids;
                const auto& arts = by_source[sources[i]];
                dst.insert(dst.end(), arts.begin(), arts.end());
            }
            std::sort(fold.train_ids.begin(), fold.train_ids.end());
            std::sort(fold.test_ids.begin(), fold.test_ids.end());
            plan.folds.push_back(std::move(fold));
            ok = true;
        }
        if (!ok)
            throw std::runtime_error("source_split_plan: fold " + std::to_string(f) +
                                     ": no class-valid source sample after 100 attempts");
    }
    return plan;
}

SplitPlan country_split_plan(const LabeledDataset& ds, corpus::Group train_group) {
    if (train_group == corpus::Group::NONE)
        throw std::invalid_argument("country_split_plan: train group must be US or UK");
    corpus::Group other =
        train_group == corpus::Group::US ? corpus::Group::UK : corpus::Group::US;

    Fold fold;
    bool has_ur = false;
    for (const auto& row : ds.rows) {
        if (row.cls == corpus::ArticleClass::UNRELIABLE) {
            fold.train_ids.push_back(row.article_id);
            has_ur = true;
        } else if (row.group == train_group) {
            fold.train_ids.push_back(row.article_id);
        } else if (row.group == other) {
            fold.test_ids.push_back(row.article_id);
        }
    }
    if (!has_ur)
        throw std::invalid_argument("country_split_plan: no unreliable rows to train against");
    if (fold.test_ids.empty())
        throw std::invalid_argument(
            std::string("country_split_plan: no reliable articles in held-out group ") +
            corpus::to_string(other));
    bool train_has_reliable = false;
    for (const auto& row : ds.rows)
        if (row.cls == corpus::ArticleClass::RELIABLE && row.group == train_group) {
            train_has_reliable = true;
            break;
        }
    if (!train_has_reliable)
        throw std::invalid_argument(
            std::string("country_split_plan: no reliable articles in train group ") +
            corpus::to_string(train_group));

    std::sort(fold.train_ids.begin(), fold.train_ids.end());
    std::sort(fold.test_ids.begin(), fold.test_ids.end());

    SplitPlan plan;
    plan.scheme = Scheme::COUNTRY;
    plan.train_group = train_group;
    plan.test_group = other;
    plan.folds.push_back(std::move(fold));
    return plan;
}

}  // namespace veribench::eval
