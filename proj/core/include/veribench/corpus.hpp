#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace veribench::corpus {

enum class Group { US, UK, NONE };
enum class ArticleClass { RELIABLE, UNRELIABLE };

const char* to_string(Group g);
const char* to_string(ArticleClass c);
std::optional<Group> parse_group(const std::string& s);

struct Article {
    std::string id;
    std::string source_name;
    std::string title;
    std::string body;
    std::string published;  // optional ISO-8601 date, empty when absent
};

/// One roster row. Class membership is a function of the factuality score:
/// 4..5 -> RELIABLE, 1..2 -> UNRELIABLE. Score 3 is outside the grouping and
/// rejected at construction.
struct SourceEntry {
    std::string source_name;
    int factuality = 0;
    Group group = Group::NONE;
    ArticleClass cls = ArticleClass::UNRELIABLE;
};

/// Throws std::runtime_error on factuality outside {1,2,4,5} or on a
/// RELIABLE source tagged group NONE.
SourceEntry make_source_entry(const std::string& name, int factuality, Group group);

struct Corpus {
    std::vector<Article> articles;
    std::map<std::string, SourceEntry> roster;

    std::map<std::string, std::size_t> count_by_source() const;
};

enum class ArticleFormat { JSONL, CSV };

struct LoadReport {
    std::size_t loaded = 0;
    struct Skip {
        std::size_t record;  // 1-based line (JSONL) or data row (CSV)
        std::string reason;
    };
    std::vector<Skip> skipped;
};

/// Roster CSV: header source,factuality,group. Throws on missing file, bad
/// header, unparseable factuality, factuality 3 (message names the source),
/// or unknown group tag.
std::map<std::string, SourceEntry> load_roster(const std::string& path);

/// Loads articles plus roster. Per-record parse failures and articles naming
/// a source absent from the roster are collected in the report, not fatal.
Corpus load_corpus(const std::string& articles_path, ArticleFormat format,
                   const std::string& roster_path, LoadReport* report = nullptr);

struct ValidationReport {
    std::vector<std::string> duplicate_ids;
    std::vector<std::string> empty_body_ids;
    std::vector<std::string> orphan_sources;  // article sources missing from roster
    bool clean() const {
        return duplicate_ids.empty() && empty_body_ids.empty() && orphan_sources.empty();
    }
};

ValidationReport validate_corpus(const Corpus& c);

struct SamplingConfig {
    std::size_t per_source_n = 1000;
    std::uint64_t seed = 0;
    bool allow_short = false;
};

/// Uniform without-replacement sample of min(count, per_source_n) articles per
/// source, by partial Fisher-Yates over each source's articles sorted by id.
/// A source below per_source_n raises unless allow_short; then everything it
/// has is taken and a warning line is appended to `warnings`.
Corpus balanced_sample(const Corpus& c, const SamplingConfig& cfg,
                       std::vector<std::string>* warnings = nullptr);

struct CorpusStats {
    std::map<std::string, std::size_t> per_source;
    std::map<std::string, std::size_t> per_class;  // keyed "reliable"/"unreliable"
    std::size_t articles = 0;
    std::size_t min_body_tokens = 0;
    std::size_t max_body_tokens = 0;
    double mean_body_tokens = 0.0;
};

CorpusStats corpus_stats(const Corpus& c);

void save_corpus_jsonl(const Corpus& c, const std::string& articles_path);
void save_roster_csv(const Corpus& c, const std::string& roster_path);

}  // namespace veribench::corpus
