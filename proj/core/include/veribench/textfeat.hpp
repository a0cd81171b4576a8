#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "veribench/corpus.hpp"

namespace veribench::text {

// ---------------------------------------------------------------------------
// Tokenization / sentence splitting / tagging
// ---------------------------------------------------------------------------

/// Coarse part-of-speech tagset.
enum class Pos : unsigned char {
    NOUN, VERB, ADJ, ADV, PRON, DET, ADP, NUM, CONJ, PRT, PUNCT, X
};
inline constexpr std::size_t kPosCount = 12;
const char* to_string(Pos p);

/// Word tokens split on Unicode whitespace, punctuation split into separate
/// tokens. An apostrophe between letters stays inside the token ("don't").
/// Invalid UTF-8 bytes are treated as single Latin-1 codepoints; tokenize is
/// total over arbitrary byte strings.
std::vector<std::string> tokenize(std::string_view text);

/// Sentences split at {. ! ?} followed by whitespace and a capital (or quote
/// then capital), or end of text. Guarded by the bundled abbreviation list
/// ("Mr.", "U.S.", ...) and by decimal points between digits.
std::vector<std::string> split_sentences(std::string_view text);

/// Rule cascade: punctuation class, digit tokens to NUM, closed-class lexicon
/// lookup, suffix rules (-ing/-ed VERB, -ly ADV, -ous/-ful ADJ), default NOUN.
std::vector<Pos> pos_tag(const std::vector<std::string>& tokens);

/// Vowel-group syllable counter with a silent-e rule ("make" is 1, "little"
/// is 2). Tokens without letters count 1. Documented so FK/Fog values are
/// reproducible bit-for-bit.
std::size_t count_syllables(std::string_view token);

struct TokenizedDoc {
    std::vector<std::string> tokens;
    // [first, last) token index per sentence; ranges partition the token list
    std::vector<std::pair<std::size_t, std::size_t>> sentences;
    std::vector<Pos> tags;  // aligned with tokens
};

/// Tokenizes sentence-by-sentence and tags, so sentence ranges partition the
/// token list by construction.
TokenizedDoc analyze(std::string_view text);

/// True for tokens carrying at least one letter or digit (not pure punctuation).
bool is_word_token(std::string_view token);

// ---------------------------------------------------------------------------
// Lexicons
// ---------------------------------------------------------------------------

/// One term list: lowercase exact terms plus terminal-asterisk prefixes.
class Lexicon {
public:
    void add(const std::string& term);  // throws on empty / uppercase / inner '*'
    bool matches(std::string_view lowercase_token) const;
    std::size_t size() const { return exact_.size() + prefixes_.size(); }

private:
    std::set<std::string, std::less<>> exact_;
    std::vector<std::string> prefixes_;
};

inline constexpr std::array<const char*, 10> kMoralFoundations = {
    "care_virtue",     "care_vice",      "fairness_virtue", "fairness_vice",
    "loyalty_virtue",  "loyalty_vice",   "authority_virtue", "authority_vice",
    "sanctity_virtue", "sanctity_vice",
};

struct LexiconSet {
    Lexicon positive, negative;
    Lexicon hedges, factives, assertives, implicatives, report_verbs;
    Lexicon bias_terms, subjectivity_terms;
    std::array<Lexicon, 10> moral;  // kMoralFoundations order
};

/// Lexicon file: UTF-8, "[section]" headers, one term per line, '#' comments,
/// optional trailing '*' wildcard. Unknown section names raise.
LexiconSet load_lexicons(const std::string& path);
LexiconSet parse_lexicons(std::istream& in);

/// Small bundled lists used by tests and the synthetic generator. Real
/// analyses should load full user-supplied lexicons instead.
const LexiconSet& builtin_starter_lexicons();

// ---------------------------------------------------------------------------
// Feature catalog
// ---------------------------------------------------------------------------

enum class Category : unsigned char { STYLE, COMPLEXITY, BIAS, AFFECT, MORAL };
const char* to_string(Category c);

struct CatalogEntry {
    std::string name;
    Category category;
    std::string description;
};

struct FeatureCatalog {
    std::string version;
    std::vector<CatalogEntry> entries;
    std::size_t dimension() const { return entries.size(); }
    std::size_t index_of(std::string_view name) const;  // throws if absent
};

/// The shipped catalog. Fixed order; its dimension is part of the version
/// contract and asserted by extract_features.
const FeatureCatalog& nela_open_v1();

struct FeatureVector {
    std::vector<double> values;
    std::string signature;  // catalog version or embedding tag
};

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

// Per-category slices, concatenated by extract_features in catalog order.
// All return finite values; degenerate documents yield zeros.
std::vector<double> extract_style(const TokenizedDoc& doc, std::string_view raw);
std::vector<double> extract_complexity(const TokenizedDoc& doc);
std::vector<double> extract_bias(const TokenizedDoc& doc, const LexiconSet& lex);
std::vector<double> extract_affect(const TokenizedDoc& doc, const LexiconSet& lex);
std::vector<double> extract_moral(const TokenizedDoc& doc, const LexiconSet& lex);

/// Features over title + "\n" + body. Pure; length equals catalog dimension.
FeatureVector extract_features(const corpus::Article& article, const FeatureCatalog& catalog,
                               const LexiconSet& lex);

/// Feature matrix CSV (header = feature names, one row per article id, id in
/// first column) plus sidecar JSON recording the catalog version.
void write_feature_matrix(const std::string& csv_path, const std::string& sidecar_json_path,
                          const FeatureCatalog& catalog,
                          const std::vector<std::string>& article_ids,
                          const std::vector<FeatureVector>& vectors);

}  // namespace veribench::text
