#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "veribench/textfeat.hpp"

namespace veribench::text {

namespace {

// --- UTF-8 iteration -------------------------------------------------------
// Decodes one codepoint at byte offset i; on malformed input consumes a
// single byte and returns its value, so every byte string is processable.
struct Decoded {
    char32_t cp;
    std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
        return {cp, 2};
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                      (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3F);
        return {cp, 3};
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) |
                      (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
                      (char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3F);
        return {cp, 4};
    }
    return {b0, 1};  // malformed byte, Latin-1 fallback
}

bool is_ws(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
        case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punct(char32_t cp) {
    if (cp < 0x80)
        return std::ispunct(static_cast<int>(cp)) != 0;
    switch (cp) {
        case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
        case 0x2010: case 0x2011: case 0x2013: case 0x2014:  // hyphens, dashes
        case 0x2026:                                         // ellipsis
        case 0x00A1: case 0x00BF: case 0x00AB: case 0x00BB:  // inverted marks, guillemets
            return true;
        default:
            return false;
    }
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_letter(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    // Latin-1 supplement through Latin Extended-B, Greek, Cyrillic
    if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
    return cp >= 0x0370 && cp <= 0x04FF;
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

// words whose trailing period is not a sentence boundary; lowercase, dot kept
const std::set<std::string>& abbreviations() {
    static const std::set<std::string> abbr = {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "vs.", "etc.",
        "e.g.", "i.e.", "u.s.", "u.k.", "u.n.", "a.m.", "p.m.", "inc.", "co.",
        "corp.", "ltd.", "no.", "gen.", "sen.", "rep.", "gov.", "capt.", "lt.",
        "col.", "sgt.", "mt.", "ft.", "dept.", "est.", "fig.", "jan.", "feb.",
        "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.",
        "dec.", "mon.", "tue.", "wed.", "thu.", "fri.", "sat.", "sun.",
    };
    return abbr;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    char32_t prev_cp = 0;

    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };

    std::size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode(text, i);
        if (is_ws(cp)) {
            flush();
            prev_cp = 0;
            i += len;
            continue;
        }
        if (is_punct(cp)) {
            bool keep_inside = false;
            if (!current.empty()) {
                std::size_t j = i + len;
                char32_t next_cp = j < text.size() ? decode(text, j).cp : 0;
                if (is_apostrophe(cp) && is_letter(prev_cp) && is_letter(next_cp))
                    keep_inside = true;  // contraction: don't, it's
                else if ((cp == U'.' || cp == U',') && is_ascii_digit(prev_cp) &&
                         is_ascii_digit(next_cp))
                    keep_inside = true;  // decimal point / thousands separator
            }
            if (keep_inside) {
                current.append(text.substr(i, len));
            } else {
                flush();
                tokens.emplace_back(text.substr(i, len));
            }
        } else {
            current.append(text.substr(i, len));
        }
        prev_cp = cp;
        i += len;
    }
    flush();
    return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;

    auto trim = [](std::string_view s) {
        std::size_t a = 0, b = s.size();
        while (a < b) {
            auto [cp, len] = decode(s, a);
            if (!is_ws(cp)) break;
            a += len;
        }
        while (b > a) {
            // scan back one codepoint: find the last start byte
            std::size_t k = b - 1;
            while (k > a && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80) --k;
            auto [cp, len] = decode(s, k);
            if (!is_ws(cp) || k + len != b) break;
            b = k;
        }
        return std::string(s.substr(a, b - a));
    };

    auto is_closer = [](char32_t cp) {
        return cp == U'"' || cp == U'\'' || cp == 0x201D || cp == 0x2019 || cp == U')' ||
               cp == U']' || cp == 0x00BB;
    };
    auto is_opener = [](char32_t cp) {
        return cp == U'"' || cp == U'\'' || cp == 0x201C || cp == 0x2018 || cp == U'(' ||
               cp == U'[' || cp == 0x00AB || cp == 0x00BF || cp == 0x00A1;
    };
    auto is_upper = [](char32_t cp) {
        return (cp >= U'A' && cp <= U'Z') || (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7);
    };

    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode(text, i);
        if (cp != U'.' && cp != U'!' && cp != U'?') {
            i += len;
            continue;
        }

        if (cp == U'.') {
            // decimal point guard
            std::size_t after = i + len;
            char32_t next_cp = after < text.size() ? decode(text, after).cp : 0;
            bool prev_digit = false;
            if (i > start) {
                std::size_t k = i - 1;
                while (k > start && (static_cast<unsigned char>(text[k]) & 0xC0) == 0x80) --k;
                prev_digit = is_ascii_digit(decode(text, k).cp);
            }
            if (prev_digit && is_ascii_digit(next_cp)) {
                i += len;
                continue;
            }
            // abbreviation guard: word immediately before this period, dot included
            std::size_t w = i;
            while (w > start) {
                std::size_t k = w - 1;
                while (k > start && (static_cast<unsigned char>(text[k]) & 0xC0) == 0x80) --k;
                auto [pcp, plen] = decode(text, k);
                if (is_ws(pcp) || (is_punct(pcp) && pcp != U'.' && !is_apostrophe(pcp))) break;
                w = k;
                (void)plen;
            }
            std::string word = ascii_lower(text.substr(w, i - w)) + ".";
            if (abbreviations().count(word)) {
                i += len;
                continue;
            }
        }

        // absorb the rest of the terminator run: more terminators and closers
        std::size_t end = i + len;
        while (end < text.size()) {
            auto [ncp, nlen] = decode(text, end);
            if (ncp == U'.' || ncp == U'!' || ncp == U'?' || is_closer(ncp))
                end += nlen;
            else
                break;
        }

        // boundary requires whitespace (or end of text) then optional openers
        // then a capital letter
        std::size_t j = end;
        bool saw_ws = false;
        while (j < text.size()) {
            auto [ncp, nlen] = decode(text, j);
            if (!is_ws(ncp)) break;
            saw_ws = true;
            j += nlen;
        }
        bool boundary = false;
        if (j >= text.size()) {
            boundary = true;
        } else if (saw_ws) {
            std::size_t k = j;
            while (k < text.size()) {
                auto [ncp, nlen] = decode(text, k);
                if (!is_opener(ncp)) break;
                k += nlen;
            }
            if (k < text.size() && is_upper(decode(text, k).cp)) boundary = true;
        }

        if (boundary) {
            std::string s = trim(text.substr(start, end - start));
            if (!s.empty()) sentences.push_back(std::move(s));
            start = j;
            i = end;
        } else {
            i = end;
        }
    }
    if (start < text.size()) {
        std::string s = trim(text.substr(start));
        if (!s.empty()) sentences.push_back(std::move(s));
    }
    return sentences;
}

namespace {

const std::unordered_map<std::string, Pos>& closed_class() {
    static const std::unordered_map<std::string, Pos> m = [] {
        std::unordered_map<std::string, Pos> t;
        auto put = [&](Pos tag, std::initializer_list<const char*> words) {
            for (const char* w : words) t.emplace(w, tag);
        };
        put(Pos::DET, {"the", "a", "an", "this", "that", "these", "those", "each", "every",
                       "either", "neither", "another", "such", "what", "which", "whose", "all",
                       "some", "any", "no", "both", "few", "many", "much", "more", "most",
                       "less", "least", "several", "same", "own", "other"});
        put(Pos::PRON, {"i", "me", "my", "mine", "myself", "we", "us", "our", "ours",
                        "ourselves", "you", "your", "yours", "yourself", "yourselves", "he",
                        "him", "his", "himself", "she", "her", "hers", "herself", "it", "its",
                        "itself", "they", "them", "their", "theirs", "themselves", "who",
                        "whom", "somebody", "someone", "something", "anybody", "anyone",
                        "anything", "everybody", "everyone", "everything", "nobody", "nothing"});
        put(Pos::ADP, {"in", "on", "at", "by", "for", "with", "from", "into", "onto", "of",
                       "about", "above", "across", "after", "against", "along", "among",
                       "around", "before", "behind", "below", "beneath", "beside", "between",
                       "beyond", "during", "except", "inside", "near", "off", "outside",
                       "over", "since", "through", "throughout", "toward", "towards", "under",
                       "until", "upon", "within", "without", "up", "out", "down"});
        put(Pos::CONJ, {"and", "or", "but", "nor", "so", "yet", "although", "because", "if",
                        "unless", "while", "whereas", "though", "whether"});
        put(Pos::PRT, {"to", "not"});
        put(Pos::VERB, {"be", "am", "is", "are", "was", "were", "been", "being", "do", "does",
                        "did", "done", "doing", "have", "has", "had", "having", "will",
                        "would", "shall", "should", "can", "could", "may", "might", "must",
                        "ought"});
        put(Pos::ADV, {"very", "too", "also", "just", "now", "then", "here", "there", "when",
                       "where", "why", "how", "never", "always", "often", "sometimes",
                       "again", "almost", "already", "still", "quite", "rather", "soon",
                       "perhaps", "maybe"});
        put(Pos::NUM, {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
                       "nine", "ten", "eleven", "twelve", "twenty", "thirty", "forty",
                       "fifty", "hundred", "thousand", "million", "billion", "first",
                       "second", "third"});
        return t;
    }();
    return m;
}

}  // namespace

std::vector<Pos> pos_tag(const std::vector<std::string>& tokens) {
    std::vector<Pos> tags;
    tags.reserve(tokens.size());
    for (const auto& tok : tokens) {
        bool any_letter = false, any_digit = false, all_punct = true;
        for (std::size_t i = 0; i < tok.size();) {
            auto [cp, len] = decode(tok, i);
            if (is_letter(cp)) any_letter = true;
            if (is_ascii_digit(cp)) any_digit = true;
            if (!is_punct(cp)) all_punct = false;
            i += len;
        }
        if (all_punct && !tok.empty()) {
            tags.push_back(Pos::PUNCT);
            continue;
        }
        if (any_digit && !any_letter) {
            tags.push_back(Pos::NUM);
            continue;
        }
        std::string lower = ascii_lower(tok);
        auto it = closed_class().find(lower);
        if (it != closed_class().end()) {
            tags.push_back(it->second);
            continue;
        }
        std::size_t n = lower.size();
        if (n >= 5 && lower.compare(n - 3, 3, "ing") == 0) {
            tags.push_back(Pos::VERB);
        } else if (n >= 4 && lower.compare(n - 2, 2, "ed") == 0) {
            tags.push_back(Pos::VERB);
        } else if (n >= 4 && lower.compare(n - 2, 2, "ly") == 0) {
            tags.push_back(Pos::ADV);
        } else if (n >= 5 && (lower.compare(n - 3, 3, "ous") == 0 ||
                              lower.compare(n - 3, 3, "ful") == 0)) {
            tags.push_back(Pos::ADJ);
        } else if (any_letter) {
            tags.push_back(Pos::NOUN);
        } else {
            tags.push_back(Pos::X);
        }
    }
    return tags;
}

std::size_t count_syllables(std::string_view token) {
    std::string letters;
    for (std::size_t i = 0; i < token.size();) {
        auto [cp, len] = decode(token, i);
        if (cp >= U'a' && cp <= U'z') letters += static_cast<char>(cp);
        else if (cp >= U'A' && cp <= U'Z') letters += static_cast<char>(cp - U'A' + U'a');
        i += len;
    }
    if (letters.empty()) return 1;
    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    std::size_t groups = 0;
    bool in_group = false;
    for (char c : letters) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    std::size_t n = letters.size();
    // silent final e: "make" -> 1, but keep "-le" ("little") and lone-vowel words
    if (groups > 1 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) &&
        !(n >= 2 && letters[n - 2] == 'l'))
        --groups;
    return std::max<std::size_t>(groups, 1);
}

TokenizedDoc analyze(std::string_view text) {
    TokenizedDoc doc;
    for (const auto& sentence : split_sentences(text)) {
        auto toks = tokenize(sentence);
        if (toks.empty()) continue;
        std::size_t first = doc.tokens.size();
        for (auto& t : toks) doc.tokens.push_back(std::move(t));
        doc.sentences.emplace_back(first, doc.tokens.size());
    }
    doc.tags = pos_tag(doc.tokens);
    return doc;
}

bool is_word_token(std::string_view token) {
    for (std::size_t i = 0; i < token.size();) {
        auto [cp, len] = decode(token, i);
        if (is_letter(cp) || is_ascii_digit(cp)) return true;
        i += len;
    }
    return false;
}

const char* to_string(Pos p) {
    switch (p) {
        case Pos::NOUN: return "NOUN";
        case Pos::VERB: return "VERB";
        case Pos::ADJ: return "ADJ";
        case Pos::ADV: return "ADV";
        case Pos::PRON: return "PRON";
        case Pos::DET: return "DET";
        case Pos::ADP: return "ADP";
        case Pos::NUM: return "NUM";
        case Pos::CONJ: return "CONJ";
        case Pos::PRT: return "PRT";
        case Pos::PUNCT: return "PUNCT";
        default: return "X";
    }
}

const char* to_string(Category c) {
    switch (c) {
        case Category::STYLE: return "style";
        case Category::COMPLEXITY: return "complexity";
        case Category::BIAS: return "bias";
        case Category::AFFECT: return "affect";
        default: return "moral";
    }
}

}  // namespace veribench::text
