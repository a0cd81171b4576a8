#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "veribench/corpus.hpp"
#include "veribench/csv.hpp"
#include "veribench/textfeat.hpp"

namespace veribench::text {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

std::size_t ascii_letter_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++n;
    return n;
}

std::size_t ascii_alnum_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) ++n;
    return n;
}

bool is_allcaps_word(std::string_view tok) {
    std::size_t letters = 0;
    for (char c : tok) {
        if (c >= 'A' && c <= 'Z') {
            ++letters;
        } else if ((static_cast<unsigned char>(c) & 0x80) != 0 || (c >= 'a' && c <= 'z')) {
            return false;
        }
    }
    return letters >= 2;
}

// Uppercase-initial word (Xxxx...), ASCII check only.
bool is_capitalized_word(std::string_view tok) {
    if (tok.size() < 2) return false;
    if (!(tok[0] >= 'A' && tok[0] <= 'Z')) return false;
    return tok[1] >= 'a' && tok[1] <= 'z';
}

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> s = {
        "a", "about", "above", "after", "again", "all", "am", "an", "and", "any", "are", "as",
        "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
        "by", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
        "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
        "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its",
        "itself", "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now",
        "of", "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
        "over", "own", "same", "she", "should", "so", "some", "such", "than", "that", "the",
        "their", "theirs", "them", "themselves", "then", "there", "these", "they", "this",
        "those", "through", "to", "too", "under", "until", "up", "very", "was", "we", "were",
        "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with",
        "you", "your", "yours", "yourself", "yourselves",
    };
    return s;
}

struct FunctionWords {
    std::unordered_set<std::string> first_singular{"i", "me", "my", "mine", "myself"};
    std::unordered_set<std::string> first_plural{"we", "us", "our", "ours", "ourselves"};
    std::unordered_set<std::string> second_person{"you", "your", "yours", "yourself",
                                                  "yourselves"};
    std::unordered_set<std::string> third_person{"he",      "him",     "his",   "himself",
                                                 "she",     "her",     "hers",  "herself",
                                                 "they",    "them",    "their", "theirs",
                                                 "themselves"};
    std::unordered_set<std::string> impersonal{"it",       "its",      "itself",   "something",
                                               "anything", "nothing",  "everything", "someone",
                                               "anyone",   "everyone", "somebody", "anybody",
                                               "nobody",   "everybody"};
    std::unordered_set<std::string> article{"a", "an", "the"};
    std::unordered_set<std::string> auxiliary{"am",   "is",    "are",  "was",   "were", "be",
                                              "been", "being", "do",   "does",  "did",  "have",
                                              "has",  "had",   "having", "will", "would",
                                              "shall", "should", "can", "could", "may",
                                              "might", "must"};
    std::unordered_set<std::string> negation{
        "not",     "no",      "never",     "none",      "neither", "nor",      "nowhere",
        "cannot",  "without", "don't",     "doesn't",   "didn't",  "won't",    "wouldn't",
        "can't",   "couldn't", "shouldn't", "isn't",    "aren't",  "wasn't",   "weren't",
        "haven't", "hasn't",  "hadn't",    "ain't"};
    std::unordered_set<std::string> quantifier{"all",  "some", "many",  "much",  "few",
                                               "several", "most", "more", "less", "least",
                                               "any",  "both", "each",  "every", "enough",
                                               "numerous"};
    std::unordered_set<std::string> intensifier{"very",       "really",     "extremely",
                                                "absolutely", "completely", "totally",
                                                "utterly",    "highly",     "incredibly",
                                                "remarkably", "quite",      "so",
                                                "too",        "deeply"};
    std::unordered_set<std::string> number_word{
        "zero", "one",  "two",    "three",  "four",    "five",    "six",     "seven",
        "eight", "nine", "ten",   "eleven", "twelve",  "twenty",  "thirty",  "forty",
        "fifty", "hundred", "thousand", "million", "billion", "first", "second", "third"};
    std::unordered_set<std::string> time_word{
        "today",     "yesterday", "tomorrow",    "now",     "then",      "soon",
        "later",     "recently",  "currently",   "immediately", "eventually", "finally",
        "already",   "yet",       "again",       "when",    "while",     "during"};
};

const FunctionWords& function_words() {
    static const FunctionWords fw;
    return fw;
}

// Non-overlapping substring count.
std::size_t count_substring(std::string_view hay, std::string_view needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string_view::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

std::size_t count_codepoint(std::string_view hay, std::string_view utf8) {
    return count_substring(hay, utf8);
}

struct DocCounts {
    std::size_t total = 0;     // all tokens
    std::size_t words = 0;     // word tokens
    std::size_t sentences = 0;
};

DocCounts counts_of(const TokenizedDoc& doc) {
    DocCounts c;
    c.total = doc.tokens.size();
    c.sentences = doc.sentences.size();
    for (const auto& t : doc.tokens)
        if (is_word_token(t)) ++c.words;
    return c;
}

double rate(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t lexicon_hits(const TokenizedDoc& doc, const Lexicon& lex) {
    std::size_t hits = 0;
    for (const auto& t : doc.tokens)
        if (is_word_token(t) && lex.matches(ascii_lower(t))) ++hits;
    return hits;
}

}  // namespace

std::vector<double> extract_style(const TokenizedDoc& doc, std::string_view raw) {
    std::vector<double> v(44, 0.0);
    const DocCounts c = counts_of(doc);
    const std::size_t T = c.total, W = c.words, S = c.sentences;

    std::size_t pos_counts[kPosCount] = {};
    for (Pos p : doc.tags) ++pos_counts[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < kPosCount; ++i) v[i] = rate(pos_counts[i], T);

    auto is_dquote = [](std::string_view t) {
        return t == "\"" || t == "“" || t == "”";
    };
    auto is_squote = [](std::string_view t) {
        return t == "'" || t == "‘" || t == "’";
    };
    std::size_t exclaim = 0, question = 0, dquote = 0, squote = 0, comma = 0, period = 0,
                colon = 0, semicolon = 0;
    std::size_t allcaps = 0, quoted_words = 0, stop = 0;
    std::size_t fw_counts[12] = {};
    const auto& fw = function_words();
    const std::unordered_set<std::string>* fw_sets[12] = {
        &fw.first_singular, &fw.first_plural, &fw.second_person, &fw.third_person,
        &fw.impersonal,     &fw.article,      &fw.auxiliary,     &fw.negation,
        &fw.quantifier,     &fw.intensifier,  &fw.number_word,   &fw.time_word};

    bool in_quote = false;
    for (const auto& t : doc.tokens) {
        if (t == "!") ++exclaim;
        else if (t == "?") ++question;
        else if (t == ",") ++comma;
        else if (t == ".") ++period;
        else if (t == ":") ++colon;
        else if (t == ";") ++semicolon;
        if (is_dquote(t)) {
            ++dquote;
            if (t == "“") in_quote = true;
            else if (t == "”") in_quote = false;
            else in_quote = !in_quote;
            continue;
        }
        if (is_squote(t)) ++squote;
        if (!is_word_token(t)) continue;
        if (in_quote) ++quoted_words;
        if (is_allcaps_word(t)) ++allcaps;
        std::string lower = ascii_lower(t);
        if (stopwords().count(lower)) ++stop;
        for (std::size_t i = 0; i < 12; ++i)
            if (fw_sets[i]->count(lower)) ++fw_counts[i];
    }

    v[12] = rate(exclaim, T);
    v[13] = rate(question, T);
    v[14] = rate(dquote, T);
    v[15] = rate(squote, T);
    v[16] = rate(comma, T);
    v[17] = rate(period, T);
    v[18] = rate(colon, T);
    v[19] = rate(semicolon, T);
    v[20] = rate(allcaps, W);
    v[21] = rate(quoted_words, W);
    v[22] = rate(stop, W);
    for (std::size_t i = 0; i < 12; ++i) v[23 + i] = rate(fw_counts[i], W);

    const double per_1k = T == 0 ? 0.0 : 1000.0 / static_cast<double>(T);
    std::size_t ellipsis = count_substring(raw, "...") + count_codepoint(raw, "…");
    std::size_t dash = count_substring(raw, "--") + count_codepoint(raw, "—") +
                       count_codepoint(raw, "–");
    std::size_t paren = 0, symbol = 0, digit = 0;
    for (char ch : raw) {
        if (ch == '(' || ch == ')') ++paren;
        else if (ch == '$' || ch == '%' || ch == '#' || ch == '&' || ch == '@') ++symbol;
        else if (ch >= '0' && ch <= '9') ++digit;
    }
    symbol += count_codepoint(raw, "€") + count_codepoint(raw, "£") +
              count_codepoint(raw, "¥");
    v[35] = static_cast<double>(ellipsis) * per_1k;
    v[36] = static_cast<double>(dash) * per_1k;
    v[37] = static_cast<double>(paren) * per_1k;
    v[38] = static_cast<double>(symbol) * per_1k;
    v[39] = static_cast<double>(digit) * per_1k;

    // capitalized words, skipping each sentence's first word token
    std::size_t capitalized = 0;
    for (auto [first, last] : doc.sentences) {
        bool lead = true;
        for (std::size_t i = first; i < last; ++i) {
            const auto& t = doc.tokens[i];
            if (!is_word_token(t)) continue;
            if (lead) {
                lead = false;
                continue;
            }
            if (is_capitalized_word(t)) ++capitalized;
        }
    }
    v[40] = rate(capitalized, W);
    v[41] = rate(exclaim, S);
    v[42] = rate(question, S);
    v[43] = std::log1p(static_cast<double>(T));
    return v;
}

std::vector<double> extract_complexity(const TokenizedDoc& doc) {
    std::vector<double> v(16, 0.0);
    const DocCounts c = counts_of(doc);
    const std::size_t T = c.total, W = c.words, S = c.sentences;
    if (W == 0 || S == 0) return v;  // degenerate rule: all zeros

    std::set<std::string> types(doc.tokens.begin(), doc.tokens.end());
    std::unordered_map<std::string, std::size_t> word_counts;
    std::size_t word_cp = 0, token_cp = 0, syllables = 0, complex_words = 0, long_words = 0,
                mono = 0, letters = 0, alnum = 0;
    for (const auto& t : doc.tokens) {
        token_cp += codepoint_count(t);
        if (!is_word_token(t)) continue;
        ++word_counts[ascii_lower(t)];
        word_cp += codepoint_count(t);
        std::size_t syl = count_syllables(t);
        syllables += syl;
        if (syl >= 3) ++complex_words;
        if (syl == 1) ++mono;
        if (ascii_letter_count(t) >= 7) ++long_words;
        letters += ascii_letter_count(t);
        alnum += ascii_alnum_count(t);
    }
    std::size_t hapax = 0;
    for (const auto& [w, n] : word_counts)
        if (n == 1) ++hapax;

    const double Wd = static_cast<double>(W), Sd = static_cast<double>(S);
    v[0] = rate(types.size(), T);
    v[1] = rate(word_counts.size(), W);
    v[2] = rate(hapax, W);
    v[3] = static_cast<double>(word_cp) / Wd;
    v[4] = static_cast<double>(T) / Sd;
    v[5] = static_cast<double>(token_cp) / Sd;
    v[6] = static_cast<double>(syllables) / Wd;
    v[7] = 0.39 * (Wd / Sd) + 11.8 * (static_cast<double>(syllables) / Wd) - 15.59;
    v[8] = 0.4 * ((Wd / Sd) + 100.0 * (static_cast<double>(complex_words) / Wd));
    v[9] = 206.835 - 1.015 * (Wd / Sd) - 84.6 * (static_cast<double>(syllables) / Wd);
    v[10] = 1.0430 * std::sqrt(static_cast<double>(complex_words) * 30.0 / Sd) + 3.1291;
    v[11] = 0.0588 * (100.0 * static_cast<double>(letters) / Wd) -
            0.296 * (100.0 * Sd / Wd) - 15.8;
    v[12] = 4.71 * (static_cast<double>(alnum) / Wd) + 0.5 * (Wd / Sd) - 21.43;
    v[13] = rate(complex_words, W);
    v[14] = rate(long_words, W);
    v[15] = rate(mono, W);
    return v;
}

std::vector<double> extract_bias(const TokenizedDoc& doc, const LexiconSet& lex) {
    std::vector<double> v(14, 0.0);
    const DocCounts c = counts_of(doc);
    const Lexicon* lists[7] = {&lex.hedges,       &lex.factives,   &lex.assertives,
                               &lex.implicatives, &lex.report_verbs, &lex.bias_terms,
                               &lex.subjectivity_terms};
    for (std::size_t i = 0; i < 7; ++i) {
        std::size_t hits = lexicon_hits(doc, *lists[i]);
        v[i] = rate(hits, c.words);
        v[7 + i] = rate(hits, c.sentences);
    }
    return v;
}

std::vector<double> extract_affect(const TokenizedDoc& doc, const LexiconSet& lex) {
    std::vector<double> v(6, 0.0);
    const DocCounts c = counts_of(doc);
    std::size_t pos_hits = lexicon_hits(doc, lex.positive);
    std::size_t neg_hits = lexicon_hits(doc, lex.negative);
    std::size_t exclaim = 0;
    for (const auto& t : doc.tokens)
        if (t == "!") ++exclaim;

    v[0] = rate(pos_hits, c.words);
    v[1] = rate(neg_hits, c.words);
    v[2] = (static_cast<double>(pos_hits) - static_cast<double>(neg_hits)) /
           (static_cast<double>(pos_hits) + static_cast<double>(neg_hits) + 1e-9);
    v[3] = (v[0] + v[1]) * (1.0 + rate(exclaim, c.total));
    v[4] = rate(pos_hits, c.sentences);
    v[5] = rate(neg_hits, c.sentences);
    return v;
}

std::vector<double> extract_moral(const TokenizedDoc& doc, const LexiconSet& lex) {
    std::vector<double> v(kMoralFoundations.size(), 0.0);
    const DocCounts c = counts_of(doc);
    for (std::size_t i = 0; i < kMoralFoundations.size(); ++i)
        v[i] = rate(lexicon_hits(doc, lex.moral[i]), c.words);
    return v;
}

FeatureVector extract_features(const corpus::Article& article, const FeatureCatalog& catalog,
                               const LexiconSet& lex) {
    std::string raw = article.title.empty() ? article.body : article.title + "\n" + article.body;
    TokenizedDoc doc = analyze(raw);

    FeatureVector out;
    out.signature = catalog.version;
    auto append = [&](std::vector<double>&& slice) {
        out.values.insert(out.values.end(), slice.begin(), slice.end());
    };
    append(extract_style(doc, raw));
    append(extract_complexity(doc));
    append(extract_bias(doc, lex));
    append(extract_affect(doc, lex));
    append(extract_moral(doc, lex));

    if (out.values.size() != catalog.dimension())
        throw std::logic_error("extract_features: slice lengths disagree with catalog dimension");
    for (double x : out.values)
        if (!std::isfinite(x)) throw std::logic_error("extract_features: non-finite feature");
    return out;
}

void write_feature_matrix(const std::string& csv_path, const std::string& sidecar_json_path,
                          const FeatureCatalog& catalog,
                          const std::vector<std::string>& article_ids,
                          const std::vector<FeatureVector>& vectors) {
    if (article_ids.size() != vectors.size())
        throw std::invalid_argument("write_feature_matrix: ids/vectors length mismatch");

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("write_feature_matrix: cannot open '" + csv_path + "'");
    std::vector<std::string> header{"id"};
    for (const auto& e : catalog.entries) header.push_back(e.name);
    write_csv_row(csv, header);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].values.size() != catalog.dimension())
            throw std::invalid_argument("write_feature_matrix: row dimension mismatch");
        std::vector<std::string> row{article_ids[r]};
        row.reserve(catalog.dimension() + 1);
        for (double x : vectors[r].values) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            row.emplace_back(buf);
        }
        write_csv_row(csv, row);
    }

    nlohmann::json sidecar{
        {"catalog_version", catalog.version},
        {"dimension", catalog.dimension()},
        {"rows", vectors.size()},
    };
    std::ofstream js(sidecar_json_path, std::ios::binary);
    if (!js)
        throw std::runtime_error("write_feature_matrix: cannot open '" + sidecar_json_path + "'");
    js << sidecar.dump(2) << '\n';
}

}  // namespace veribench::text
