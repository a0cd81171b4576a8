#include <doctest.h>

#include <string>
#include <vector>

#include "veribench/rng.hpp"
#include "veribench/textfeat.hpp"

using namespace veribench;
using text::Pos;

TEST_CASE("tokenize splits words and punctuation") {
    auto t = text::tokenize("Hello, world!");
    CHECK(t == std::vector<std::string>{"Hello", ",", "world", "!"});
}

TEST_CASE("apostrophes between letters stay inside the token") {
    CHECK(text::tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
    CHECK(text::tokenize("rock 'n roll") ==
          std::vector<std::string>{"rock", "'", "n", "roll"});
    // a trailing apostrophe is punctuation, not part of the word
    CHECK(text::tokenize("dogs' tails") ==
          std::vector<std::string>{"dogs", "'", "tails"});
}

TEST_CASE("decimal points and digit commas stay inside number tokens") {
    CHECK(text::tokenize("Pi is 3.14 now") ==
          std::vector<std::string>{"Pi", "is", "3.14", "now"});
    CHECK(text::tokenize("1,000 people") == std::vector<std::string>{"1,000", "people"});
    // but a sentence-final period after digits splits off
    CHECK(text::tokenize("It is 3.") == std::vector<std::string>{"It", "is", "3", "."});
}

TEST_CASE("accented letters are letters, including the Latin-1 fallback") {
    CHECK(text::tokenize("caf\xc3\xa9 time") == std::vector<std::string>{"caf\xc3\xa9", "time"});
    // raw 0xE9 is invalid UTF-8; the byte decodes as Latin-1 e-acute
    auto t = text::tokenize("caf\xe9 time");
    REQUIRE(t.size() == 2);
    CHECK(t[1] == "time");
}

TEST_CASE("tokenize is total over arbitrary bytes") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        std::size_t len = rng.below(120);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(static_cast<char>(rng.below(256)));
        auto tokens = text::tokenize(s);
        for (const auto& tok : tokens) CHECK_FALSE(tok.empty());
    }
}

TEST_CASE("token doubling doubles the token count") {
    Rng rng(7);
    const std::vector<std::string> words = {"alpha", "beta!", "3.14", "don't", "X."};
    for (int trial = 0; trial < 50; ++trial) {
        std::string s;
        std::size_t n = 1 + rng.below(12);
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += words[rng.below(words.size())];
        }
        auto once = text::tokenize(s);
        auto twice = text::tokenize(s + " " + s);
        CHECK(twice.size() == 2 * once.size());
    }
}

TEST_CASE("sentence splitting follows terminator-then-capital with guards") {
    CHECK(text::split_sentences("A b. C d.").size() == 2);
    CHECK(text::split_sentences("Mr. Smith left.").size() == 1);
    CHECK(text::split_sentences("Pi is 3.14 exactly.").size() == 1);
    CHECK(text::split_sentences("U.S. policy shifted.").size() == 1);
    CHECK(text::split_sentences("no terminator").size() == 1);
    CHECK(text::split_sentences("What?! Really.").size() == 2);
    CHECK(text::split_sentences("He left. then lowercase continues.").size() == 1);
    CHECK(text::split_sentences("").empty());
}

TEST_CASE("closing quotes attach to the finished sentence") {
    auto s = text::split_sentences("He said \"Go.\" Then left.");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == "He said \"Go.\"");
    CHECK(s[1] == "Then left.");
}

TEST_CASE("pos tagging covers the documented cascade") {
    auto tag1 = [](const std::string& w) { return text::pos_tag({w})[0]; };
    CHECK(tag1("the") == Pos::DET);
    CHECK(tag1("he") == Pos::PRON);
    CHECK(tag1("in") == Pos::ADP);
    CHECK(tag1("and") == Pos::CONJ);
    CHECK(tag1("to") == Pos::PRT);
    CHECK(tag1("not") == Pos::PRT);
    CHECK(tag1("is") == Pos::VERB);
    CHECK(tag1("quickly") == Pos::ADV);
    CHECK(tag1("running") == Pos::VERB);
    CHECK(tag1("walked") == Pos::VERB);
    CHECK(tag1("famous") == Pos::ADJ);
    CHECK(tag1("helpful") == Pos::ADJ);
    CHECK(tag1("42") == Pos::NUM);
    CHECK(tag1("3.14") == Pos::NUM);
    CHECK(tag1("one") == Pos::NUM);
    CHECK(tag1(".") == Pos::PUNCT);
    CHECK(tag1("...") == Pos::PUNCT);
    CHECK(tag1("table") == Pos::NOUN);
    CHECK(tag1("Table") == Pos::NOUN);
    // closed-class lookup is case-insensitive
    CHECK(tag1("The") == Pos::DET);
}

TEST_CASE("syllable counting matches the documented rules") {
    CHECK(text::count_syllables("make") == 1);  // silent e
    CHECK(text::count_syllables("little") == 2);  // -le keeps its syllable
    CHECK(text::count_syllables("apple") == 2);
    CHECK(text::count_syllables("see") == 1);
    CHECK(text::count_syllables("the") == 1);
    CHECK(text::count_syllables("syllable") == 3);
    CHECK(text::count_syllables("readability") == 5);
    CHECK(text::count_syllables("rhythm") == 1);  // y as the only vowel group
    CHECK(text::count_syllables("123") == 1);     // no letters still counts 1
    CHECK(text::count_syllables("") == 1);
}

TEST_CASE("analyze sentence ranges partition the token list") {
    auto doc = text::analyze("First one here. Second one! Third?");
    REQUIRE_FALSE(doc.sentences.empty());
    CHECK(doc.sentences.front().first == 0);
    for (std::size_t i = 1; i < doc.sentences.size(); ++i)
        CHECK(doc.sentences[i].first == doc.sentences[i - 1].second);
    CHECK(doc.sentences.back().second == doc.tokens.size());
    CHECK(doc.tags.size() == doc.tokens.size());
    CHECK(doc.sentences.size() == 3);
}

TEST_CASE("is_word_token distinguishes words from punctuation") {
    CHECK(text::is_word_token("don't"));
    CHECK(text::is_word_token("3.14"));
    CHECK(text::is_word_token("caf\xc3\xa9"));
    CHECK_FALSE(text::is_word_token("."));
    CHECK_FALSE(text::is_word_token("..."));
    CHECK_FALSE(text::is_word_token("!?"));
}
