#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "veribench/bench.hpp"
#include "veribench/rng.hpp"

namespace veribench::bench {

namespace {

// Insertion pools. The affect/hedge/bias/report words are drawn from the
// built-in starter lexicons so the knobs move the measured rates, not just
// the raw text.
const std::vector<std::string>& hedge_pool() {
    static const std::vector<std::string> v = {
        "perhaps",    "maybe", "possibly",   "probably", "reportedly", "allegedly",
        "apparently", "likely", "might",     "could",    "suggests",   "appears"};
    return v;
}

const std::vector<std::string>& positive_pool() {
    static const std::vector<std::string> v = {
        "good", "great", "strong", "success", "hopeful", "improved",
        "benefits", "support", "praised", "win"};
    return v;
}

const std::vector<std::string>& negative_pool() {
    static const std::vector<std::string> v = {
        "bad", "terrible", "fear", "crisis", "disaster", "threat",
        "damaging", "corrupt", "weak", "awful"};
    return v;
}

const std::vector<std::string>& bias_pool() {
    static const std::vector<std::string> v = {
        "radical", "regime", "propaganda", "conspiracy", "hoax",     "scandal",
        "elites",  "mainstream", "outrage",  "shocking",   "ridiculous", "massive"};
    return v;
}

const std::vector<std::string>& report_pool() {
    static const std::vector<std::string> v = {
        "said", "told", "stated", "announced", "reported", "confirmed",
        "noted", "explained", "added", "described"};
    return v;
}

const std::vector<std::string>& formal_pool() {
    static const std::vector<std::string> v = {
        "government",     "parliament",     "committee",      "administration",
        "investigation",  "economic",       "statement",      "officials",
        "policy",         "legislation",    "representatives", "infrastructure",
        "development",    "international",  "significant",    "independent"};
    return v;
}

const std::vector<std::string>& core_pool() {
    static const std::vector<std::string> v = {
        "the",    "a",      "new",   "report", "on",     "of",    "to",     "and",
        "in",     "that",   "for",   "with",   "people", "city",  "plan",   "week",
        "year",   "time",   "group", "country", "public", "local", "day",    "home",
        "work",   "school", "market", "money",  "party",  "leader", "vote",  "law",
        "court",  "police", "health", "water",  "road",   "team",  "night",  "house",
        "family", "member", "number", "part",   "state",  "case",  "point",  "fact",
        "question", "story", "news",  "world",  "life",   "deal",  "job",    "cut"};
    return v;
}

// American and British renderings; the generator's only country cue.
const std::vector<std::pair<std::string, std::string>>& spelling_pairs() {
    static const std::vector<std::pair<std::string, std::string>> v = {
        {"color", "colour"},       {"center", "centre"},
        {"defense", "defence"},    {"organization", "organisation"},
        {"realize", "realise"},    {"behavior", "behaviour"},
        {"labor", "labour"},       {"favorite", "favourite"},
        {"analyze", "analyse"},    {"program", "programme"},
        {"theater", "theatre"},    {"rumor", "rumour"}};
    return v;
}

RegimeKnobs jitter_knobs(const RegimeKnobs& base, double jitter, Rng& rng) {
    auto wiggle = [&](double v) { return v * (1.0 + jitter * rng.uniform(-1.0, 1.0)); };
    RegimeKnobs k;
    k.exclaim_rate = std::clamp(wiggle(base.exclaim_rate), 0.0, 0.95);
    k.allcaps_rate = std::clamp(wiggle(base.allcaps_rate), 0.0, 0.95);
    k.sentence_len = std::max(4.0, wiggle(base.sentence_len));
    k.hedge_rate = std::clamp(wiggle(base.hedge_rate), 0.0, 0.95);
    return k;
}

// Full style of a regime or source: punctuation knobs plus the topic-pool mix.
struct StyleProfile {
    RegimeKnobs knobs;
    double formal = 0.0, pos = 0.0, neg = 0.0, bias = 0.0, report = 0.0;
};

// Imitation is a matter of diction, so only the topic-pool mix moves; the
// punctuation knobs keep betraying the outlet's own register.
StyleProfile lerp_pools(const StyleProfile& a, const StyleProfile& b, double t) {
    auto mix = [t](double x, double y) { return x + t * (y - x); };
    StyleProfile p = a;
    p.formal = mix(a.formal, b.formal);
    p.pos = mix(a.pos, b.pos);
    p.neg = mix(a.neg, b.neg);
    p.bias = mix(a.bias, b.bias);
    p.report = mix(a.report, b.report);
    return p;
}

StyleProfile wiggle_profile(const StyleProfile& p, double wig, Rng& rng) {
    StyleProfile out = p;
    out.knobs = jitter_knobs(p.knobs, wig, rng);
    auto w = [&](double v) {
        return std::clamp(v * (1.0 + wig * rng.uniform(-1.0, 1.0)), 0.0, 0.4);
    };
    out.formal = w(p.formal);
    out.pos = w(p.pos);
    out.neg = w(p.neg);
    out.bias = w(p.bias);
    out.report = w(p.report);
    return out;
}

struct SourcePlan {
    std::string name;
    corpus::Group group = corpus::Group::NONE;
    int factuality = 5;
    bool us_spelling = true;
    StyleProfile style;
    StyleProfile wire;  // the register of agency copy this outlet reprints
};

constexpr double kSpellRate = 0.10;

const std::string& pick(const std::vector<std::string>& pool, Rng& rng) {
    return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

std::string draw_word(Rng& rng, const StyleProfile& st, bool us_spelling) {
    double r = rng.uniform01();
    double acc = st.knobs.hedge_rate;
    if (r < acc) return pick(hedge_pool(), rng);
    if (r < (acc += st.pos)) return pick(positive_pool(), rng);
    if (r < (acc += st.neg)) return pick(negative_pool(), rng);
    if (r < (acc += st.bias)) return pick(bias_pool(), rng);
    if (r < (acc += st.report)) return pick(report_pool(), rng);
    if (r < (acc += kSpellRate)) {
        const auto& pair =
            spelling_pairs()[static_cast<std::size_t>(rng.below(spelling_pairs().size()))];
        return us_spelling ? pair.first : pair.second;
    }
    if (r < acc + st.formal) return pick(formal_pool(), rng);
    return pick(core_pool(), rng);
}

void append_token(std::string& out, Rng& rng, const StyleProfile& st, bool us_spelling,
                  bool first) {
    std::string w = draw_word(rng, st, us_spelling);
    if (rng.uniform01() < st.knobs.allcaps_rate)
        for (char& ch : w) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    else if (first)
        w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (!first) out.push_back(' ');
    out += w;
}

std::string make_sentence(Rng& rng, const StyleProfile& st, bool us_spelling) {
    auto len = static_cast<std::size_t>(
        std::max(4.0, std::llround(st.knobs.sentence_len * rng.uniform(0.65, 1.35)) * 1.0));
    std::string s;
    for (std::size_t j = 0; j < len; ++j) append_token(s, rng, st, us_spelling, j == 0);
    double r = rng.uniform01();
    if (r < 0.04)
        s.push_back('?');
    else if (r < 0.04 + st.knobs.exclaim_rate)
        s.push_back('!');
    else
        s.push_back('.');
    return s;
}

std::string make_title(Rng& rng, const StyleProfile& st, bool us_spelling) {
    std::size_t len = 4 + static_cast<std::size_t>(rng.below(5));
    std::string s;
    for (std::size_t j = 0; j < len; ++j) append_token(s, rng, st, us_spelling, j == 0);
    return s;
}

}  // namespace

corpus::Corpus generate_synthetic_corpus(const SyntheticSpec& spec, std::uint64_t seed) {
    corpus::Corpus c;
    std::vector<SourcePlan> plans;

    struct Regime {
        const char* prefix;
        corpus::Group group;
        int factuality;
        double jitter;
        bool us_spelling;
        StyleProfile house;
        int drift_target;  // index into regimes
    };
    Regime regimes[3] = {
        {"us-reliable-", corpus::Group::US, 5, spec.reliable_jitter, true,
         {spec.us_reliable, 0.24, 0.025, 0.012, 0.004, 0.035}, 0},
        {"uk-reliable-", corpus::Group::UK, 5, spec.reliable_jitter, false,
         {spec.uk_reliable, 0.18, 0.02, 0.02, 0.012, 0.03}, 1},
        {"unreliable-", corpus::Group::NONE, 1, spec.unreliable_jitter, true,
         {spec.unreliable, 0.10, 0.012, 0.03, 0.025, 0.015}, 0},
    };

    for (const auto& rg : regimes) {
        for (std::size_t i = 0; i < spec.sources_per_class; ++i) {
            SourcePlan sp;
            sp.name = rg.prefix + std::to_string(i);
            sp.group = rg.group;
            sp.factuality = rg.factuality;
            sp.us_spelling = rg.us_spelling;
            // Per-source heterogeneity: every outlet gravitates toward its
            // country's mainstream register. Reliable outlets already sit
            // there, so their drift is a no-op and the jitter config shows up
            // only as the wiggle; unreliable outlets can drift a long way,
            // and the occasional one imitates mainstream diction outright.
            // The squared draw keeps strong imitators rare, and tripling the
            // jitter for the unreliable class triples both the drift bound
            // and the wiggle.
            Rng drng(derive_seed(derive_seed(seed, sp.name), "drift"));
            double u = drng.uniform01();
            Rng krng(derive_seed(derive_seed(seed, sp.name), "knobs"));
            StyleProfile own = wiggle_profile(rg.house, 0.4 * rg.jitter, krng);
            sp.style = lerp_pools(own, regimes[rg.drift_target].house, rg.jitter * u * u);
            sp.wire = regimes[sp.group == corpus::Group::UK ? 1 : 0].house;
            c.roster[sp.name] =
                corpus::make_source_entry(sp.name, sp.factuality, sp.group);
            plans.push_back(std::move(sp));
        }
    }

    // A small share of any outlet's output is agency copy written in the
    // mainstream register rather than the outlet's own voice. For reliable
    // outlets that is barely a change; for unreliable ones it means a slice
    // of their articles reads like reliable text while keeping the
    // unreliable label.
    constexpr double kWireRate = 0.05;

    for (const auto& sp : plans) {
        std::uint64_t src_seed = derive_seed(seed, sp.name);
        for (std::size_t a = 0; a < spec.articles_per_source; ++a) {
            Rng rng(derive_seed(src_seed, a));
            corpus::Article art;
            char idbuf[16];
            std::snprintf(idbuf, sizeof idbuf, "-%04zu", a);
            art.id = sp.name + idbuf;
            art.source_name = sp.name;
            // Articles wobble around their source's style so the classes
            // overlap at the article level instead of separating cleanly.
            const StyleProfile& base = rng.uniform01() < kWireRate ? sp.wire : sp.style;
            StyleProfile ap = base;
            ap.knobs = jitter_knobs(base.knobs, 0.35, rng);
            art.title = make_title(rng, ap, sp.us_spelling);
            std::size_t n_sentences = 6 + static_cast<std::size_t>(rng.below(7));
            std::string body;
            for (std::size_t s = 0; s < n_sentences; ++s) {
                if (s) body.push_back(' ');
                body += make_sentence(rng, ap, sp.us_spelling);
            }
            art.body = std::move(body);
            c.articles.push_back(std::move(art));
        }
    }
    return c;
}

}  // namespace veribench::bench
