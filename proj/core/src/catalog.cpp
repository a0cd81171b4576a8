#include <stdexcept>
#include <string>

#include "veribench/textfeat.hpp"

namespace veribench::text {

std::size_t FeatureCatalog::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].name == name) return i;
    throw std::out_of_range("catalog: no feature named '" + std::string(name) + "'");
}

// The catalog order is part of the version contract: extractors emit slices in
// exactly this order and the golden fixtures pin it down.
const FeatureCatalog& nela_open_v1() {
    static const FeatureCatalog cat = [] {
        FeatureCatalog c;
        c.version = "nela-open-v1";
        auto add = [&](const char* name, Category cat_, const char* desc) {
            c.entries.push_back({name, cat_, desc});
        };

        // --- style (44) ---
        const char* pos_names[] = {"noun", "verb", "adj",  "adv", "pron", "det",
                                   "adp",  "num",  "conj", "prt", "punct", "x"};
        for (const char* p : pos_names)
            add(("pos_rate_" + std::string(p)).c_str(), Category::STYLE,
                "tag frequency over all tokens");
        add("punct_rate_exclaim", Category::STYLE, "'!' tokens over all tokens");
        add("punct_rate_question", Category::STYLE, "'?' tokens over all tokens");
        add("punct_rate_dquote", Category::STYLE, "double-quote tokens over all tokens");
        add("punct_rate_squote", Category::STYLE, "single-quote tokens over all tokens");
        add("punct_rate_comma", Category::STYLE, "',' tokens over all tokens");
        add("punct_rate_period", Category::STYLE, "'.' tokens over all tokens");
        add("punct_rate_colon", Category::STYLE, "':' tokens over all tokens");
        add("punct_rate_semicolon", Category::STYLE, "';' tokens over all tokens");
        add("allcaps_word_rate", Category::STYLE, "all-caps words (>=2 letters) per word token");
        add("quoted_token_rate", Category::STYLE,
            "word tokens inside double-quote spans per word token");
        add("stopword_rate", Category::STYLE, "stopwords per word token");
        add("fw_first_singular", Category::STYLE, "first-person singular pronouns per word token");
        add("fw_first_plural", Category::STYLE, "first-person plural pronouns per word token");
        add("fw_second_person", Category::STYLE, "second-person pronouns per word token");
        add("fw_third_person", Category::STYLE, "third-person pronouns per word token");
        add("fw_impersonal_pronoun", Category::STYLE, "impersonal pronouns per word token");
        add("fw_article", Category::STYLE, "articles per word token");
        add("fw_auxiliary", Category::STYLE, "auxiliary verbs per word token");
        add("fw_negation", Category::STYLE, "negations per word token");
        add("fw_quantifier", Category::STYLE, "quantifiers per word token");
        add("fw_intensifier", Category::STYLE, "intensifiers per word token");
        add("fw_number_word", Category::STYLE, "spelled-out numbers per word token");
        add("fw_time_word", Category::STYLE, "time adverbials per word token");
        add("ellipsis_per_1k", Category::STYLE, "ellipses per 1000 tokens, from raw text");
        add("dash_per_1k", Category::STYLE, "dashes per 1000 tokens, from raw text");
        add("paren_per_1k", Category::STYLE, "parentheses per 1000 tokens, from raw text");
        add("symbol_per_1k", Category::STYLE,
            "currency/percent/misc symbols per 1000 tokens, from raw text");
        add("digit_char_per_1k", Category::STYLE, "digit characters per 1000 tokens, from raw text");
        add("capitalized_word_rate", Category::STYLE,
            "capitalized non-sentence-initial words per word token");
        add("exclaim_per_sentence", Category::STYLE, "'!' tokens per sentence");
        add("question_per_sentence", Category::STYLE, "'?' tokens per sentence");
        add("log_token_count", Category::STYLE, "ln(1 + token count)");

        // --- complexity (16) ---
        add("type_token_ratio", Category::COMPLEXITY, "distinct tokens over all tokens");
        add("lexical_diversity", Category::COMPLEXITY,
            "distinct lowercased word tokens per word token");
        add("hapax_rate", Category::COMPLEXITY, "once-occurring word types per word token");
        add("mean_word_length", Category::COMPLEXITY, "mean word token length in codepoints");
        add("mean_sentence_tokens", Category::COMPLEXITY, "tokens per sentence");
        add("mean_sentence_chars", Category::COMPLEXITY, "token codepoints per sentence");
        add("mean_syllables_per_word", Category::COMPLEXITY, "syllables per word token");
        add("flesch_kincaid_grade", Category::COMPLEXITY,
            "0.39*(W/S) + 11.8*(Syll/W) - 15.59");
        add("gunning_fog", Category::COMPLEXITY, "0.4*((W/S) + 100*(complex/W))");
        add("flesch_reading_ease", Category::COMPLEXITY,
            "206.835 - 1.015*(W/S) - 84.6*(Syll/W)");
        add("smog_index", Category::COMPLEXITY, "1.0430*sqrt(complex*30/S) + 3.1291");
        add("coleman_liau_index", Category::COMPLEXITY,
            "0.0588*letters-per-100-words - 0.296*sentences-per-100-words - 15.8");
        add("automated_readability_index", Category::COMPLEXITY,
            "4.71*(chars/W) + 0.5*(W/S) - 21.43");
        add("complex_word_rate", Category::COMPLEXITY, "words with >=3 syllables per word token");
        add("long_word_rate", Category::COMPLEXITY, "words with >=7 letters per word token");
        add("monosyllable_rate", Category::COMPLEXITY, "one-syllable words per word token");

        // --- bias (14) ---
        const char* bias_lists[] = {"hedge",       "factive",   "assertive", "implicative",
                                    "report_verb", "bias_term", "subjectivity"};
        for (const char* b : bias_lists)
            add((std::string(b) + "_rate").c_str(), Category::BIAS,
                "lexicon hits per word token");
        for (const char* b : bias_lists)
            add((std::string(b) + "_per_sentence").c_str(), Category::BIAS,
                "lexicon hits per sentence");

        // --- affect (6) ---
        add("positive_rate", Category::AFFECT, "positive-lexicon hits per word token");
        add("negative_rate", Category::AFFECT, "negative-lexicon hits per word token");
        add("polarity", Category::AFFECT, "(pos - neg)/(pos + neg + 1e-9) over hit counts");
        add("affect_intensity", Category::AFFECT,
            "(positive_rate + negative_rate)*(1 + exclaims per token)");
        add("positive_per_sentence", Category::AFFECT, "positive-lexicon hits per sentence");
        add("negative_per_sentence", Category::AFFECT, "negative-lexicon hits per sentence");

        // --- moral (10) ---
        for (const char* f : kMoralFoundations)
            add(("moral_" + std::string(f) + "_rate").c_str(), Category::MORAL,
                "foundation-lexicon hits per word token");

        return c;
    }();
    return cat;
}

}  // namespace veribench::text
