#include "veribench/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "veribench/csv.hpp"
#include "veribench/rng.hpp"
#include "veribench/textfeat.hpp"

namespace veribench::corpus {

using nlohmann::json;

const char* to_string(Group g) {
    switch (g) {
        case Group::US: return "US";
        case Group::UK: return "UK";
        default: return "NONE";
    }
}

const char* to_string(ArticleClass c) {
    return c == ArticleClass::RELIABLE ? "reliable" : "unreliable";
}

std::optional<Group> parse_group(const std::string& s) {
    if (s == "US") return Group::US;
    if (s == "UK") return Group::UK;
    if (s == "NONE") return Group::NONE;
    return std::nullopt;
}

SourceEntry make_source_entry(const std::string& name, int factuality, Group group) {
    if (factuality == 3)
        throw std::runtime_error("roster: source '" + name +
                                 "' has factuality 3, which is outside the reliable/unreliable "
                                 "grouping (allowed: 1,2 unreliable; 4,5 reliable)");
    if (factuality < 1 || factuality > 5)
        throw std::runtime_error("roster: source '" + name + "' has factuality " +
                                 std::to_string(factuality) + " outside 1..5");
    SourceEntry e;
    e.source_name = name;
    e.factuality = factuality;
    e.group = group;
    e.cls = factuality >= 4 ? ArticleClass::RELIABLE : ArticleClass::UNRELIABLE;
    if (e.cls == ArticleClass::RELIABLE && group == Group::NONE)
        throw std::runtime_error("roster: reliable source '" + name +
                                 "' must carry a country group (US or UK)");
    return e;
}

std::map<std::string, std::size_t> Corpus::count_by_source() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& [name, entry] : roster) counts[name] = 0;
    for (const auto& a : articles) ++counts[a.source_name];
    return counts;
}

std::map<std::string, SourceEntry> load_roster(const std::string& path) {
    CsvTable t = read_csv_file(path);
    if (t.header.size() < 3 || t.header[0] != "source" || t.header[1] != "factuality" ||
        t.header[2] != "group")
        throw std::runtime_error("roster: expected header source,factuality,group in " + path);
    std::map<std::string, SourceEntry> roster;
    for (const auto& row : t.rows) {
        if (row.size() < 3) throw std::runtime_error("roster: short row in " + path);
        int fact = 0;
        try {
            fact = std::stoi(row[1]);
        } catch (const std::exception&) {
            throw std::runtime_error("roster: bad factuality '" + row[1] + "' for source '" +
                                     row[0] + "'");
        }
        auto group = parse_group(row[2]);
        if (!group)
            throw std::runtime_error("roster: unknown group '" + row[2] + "' for source '" +
                                     row[0] + "' (expected US, UK or NONE)");
        roster[row[0]] = make_source_entry(row[0], fact, *group);
    }
    return roster;
}

namespace {

std::optional<Article> article_from_json(const std::string& line, std::string* error) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
        *error = "malformed JSON";
        return std::nullopt;
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("source") || !j.contains("content")) {
        *error = "missing required key (id, source, content)";
        return std::nullopt;
    }
    Article a;
    try {
        a.id = j.at("id").get<std::string>();
        a.source_name = j.at("source").get<std::string>();
        a.title = j.value("title", std::string());
        a.body = j.at("content").get<std::string>();
        a.published = j.value("date", std::string());
    } catch (const json::exception& e) {
        *error = e.what();
        return std::nullopt;
    }
    return a;
}

}  // namespace

Corpus load_corpus(const std::string& articles_path, ArticleFormat format,
                   const std::string& roster_path, LoadReport* report) {
    Corpus c;
    c.roster = load_roster(roster_path);
    LoadReport local;
    LoadReport& rep = report ? *report : local;

    auto admit = [&](Article&& a, std::size_t record) {
        if (!c.roster.count(a.source_name)) {
            rep.skipped.push_back({record, "unknown source '" + a.source_name + "'"});
            return;
        }
        c.articles.push_back(std::move(a));
        ++rep.loaded;
    };

    if (format == ArticleFormat::JSONL) {
        std::ifstream in(articles_path, std::ios::binary);
        if (!in) throw std::runtime_error("articles: cannot open " + articles_path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::string error;
            auto a = article_from_json(line, &error);
            if (!a) {
                rep.skipped.push_back({lineno, error});
                continue;
            }
            admit(std::move(*a), lineno);
        }
    } else {
        CsvTable t = read_csv_file(articles_path);
        auto col = [&](const char* name) {
            auto it = std::find(t.header.begin(), t.header.end(), name);
            return it == t.header.end() ? std::size_t(-1)
                                        : static_cast<std::size_t>(it - t.header.begin());
        };
        std::size_t id_c = col("id"), src_c = col("source"), title_c = col("title"),
                    body_c = col("content"), date_c = col("date");
        if (id_c == std::size_t(-1) || src_c == std::size_t(-1) || body_c == std::size_t(-1))
            throw std::runtime_error("articles: CSV header must contain id, source, content");
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const auto& row = t.rows[i];
            std::size_t need = std::max({id_c, src_c, body_c});
            if (row.size() <= need) {
                rep.skipped.push_back({i + 1, "short row"});
                continue;
            }
            Article a;
            a.id = row[id_c];
            a.source_name = row[src_c];
            if (title_c != std::size_t(-1) && title_c < row.size()) a.title = row[title_c];
            a.body = row[body_c];
            if (date_c != std::size_t(-1) && date_c < row.size()) a.published = row[date_c];
            admit(std::move(a), i + 1);
        }
    }
    return c;
}

ValidationReport validate_corpus(const Corpus& c) {
    ValidationReport r;
    std::map<std::string, std::size_t> seen;
    for (const auto& a : c.articles) ++seen[a.id];
    for (const auto& [id, n] : seen)
        if (n > 1) r.duplicate_ids.push_back(id);
    for (const auto& a : c.articles) {
        if (a.body.find_first_not_of(" \t\r\n\f\v") == std::string::npos)
            r.empty_body_ids.push_back(a.id);
        if (!c.roster.count(a.source_name)) r.orphan_sources.push_back(a.source_name);
    }
    std::sort(r.orphan_sources.begin(), r.orphan_sources.end());
    r.orphan_sources.erase(std::unique(r.orphan_sources.begin(), r.orphan_sources.end()),
                           r.orphan_sources.end());
    return r;
}

Corpus balanced_sample(const Corpus& c, const SamplingConfig& cfg,
                       std::vector<std::string>* warnings) {
    if (cfg.per_source_n < 1) throw std::runtime_error("sample: per_source_n must be >= 1");
    // per-source article indices, each list sorted by article id so the
    // selection is a function of corpus content only
    std::map<std::string, std::vector<std::size_t>> by_source;
    for (std::size_t i = 0; i < c.articles.size(); ++i)
        by_source[c.articles[i].source_name].push_back(i);
    for (auto& [name, idx] : by_source)
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return c.articles[a].id < c.articles[b].id;
        });

    Corpus out;
    out.roster = c.roster;
    for (auto& [name, idx] : by_source) {
        if (idx.size() < cfg.per_source_n) {
            if (!cfg.allow_short)
                throw std::runtime_error("sample: source '" + name + "' has only " +
                                         std::to_string(idx.size()) + " articles, need " +
                                         std::to_string(cfg.per_source_n) +
                                         " (pass allow_short to take all available)");
            if (warnings)
                warnings->push_back("source '" + name + "' short: " + std::to_string(idx.size()) +
                                    " < " + std::to_string(cfg.per_source_n) +
                                    "; class balance is degraded");
        }
        std::size_t take = std::min(idx.size(), cfg.per_source_n);
        Rng rng(derive_seed(cfg.seed, name));
        auto pick = sample_without_replacement(idx.size(), take, rng);
        std::sort(pick.begin(), pick.end());
        for (std::size_t p : pick) out.articles.push_back(c.articles[idx[p]]);
    }
    return out;
}

CorpusStats corpus_stats(const Corpus& c) {
    CorpusStats s;
    s.per_source = c.count_by_source();
    s.articles = c.articles.size();
    std::size_t total_tokens = 0;
    bool first = true;
    for (const auto& a : c.articles) {
        const auto& entry = c.roster.at(a.source_name);
        ++s.per_class[to_string(entry.cls)];
        std::size_t nt = text::tokenize(a.body).size();
        total_tokens += nt;
        if (first) {
            s.min_body_tokens = s.max_body_tokens = nt;
            first = false;
        } else {
            s.min_body_tokens = std::min(s.min_body_tokens, nt);
            s.max_body_tokens = std::max(s.max_body_tokens, nt);
        }
    }
    s.mean_body_tokens =
        s.articles ? static_cast<double>(total_tokens) / static_cast<double>(s.articles) : 0.0;
    return s;
}

void save_corpus_jsonl(const Corpus& c, const std::string& articles_path) {
    std::ofstream out(articles_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + articles_path);
    for (const auto& a : c.articles) {
        json j;
        j["id"] = a.id;
        j["source"] = a.source_name;
        j["title"] = a.title;
        j["content"] = a.body;
        if (!a.published.empty()) j["date"] = a.published;
        out << j.dump() << '\n';
    }
}

void save_roster_csv(const Corpus& c, const std::string& roster_path) {
    std::ofstream out(roster_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + roster_path);
    out << "source,factuality,group\n";
    for (const auto& [name, e] : c.roster) {
        write_csv_row(out, {name, std::to_string(e.factuality), to_string(e.group)});
    }
}

}  // namespace veribench::corpus
