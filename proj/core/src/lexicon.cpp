#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "veribench/textfeat.hpp"

namespace veribench::text {

void Lexicon::add(const std::string& term) {
    if (term.empty() || term == "*") throw std::invalid_argument("lexicon: empty term");
    for (std::size_t i = 0; i < term.size(); ++i) {
        char c = term[i];
        if (c >= 'A' && c <= 'Z')
            throw std::invalid_argument("lexicon: term not lowercase: '" + term + "'");
        if (c == '*' && i + 1 != term.size())
            throw std::invalid_argument("lexicon: wildcard only allowed in terminal position: '" +
                                        term + "'");
    }
    if (term.back() == '*')
        prefixes_.push_back(term.substr(0, term.size() - 1));
    else
        exact_.insert(term);
}

bool Lexicon::matches(std::string_view lowercase_token) const {
    if (exact_.count(lowercase_token)) return true;
    for (const auto& p : prefixes_)
        if (lowercase_token.size() >= p.size() && lowercase_token.compare(0, p.size(), p) == 0)
            return true;
    return false;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n\f\v");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(a, b - a + 1);
}

std::unordered_map<std::string, Lexicon*> section_map(LexiconSet& set) {
    std::unordered_map<std::string, Lexicon*> m = {
        {"positive", &set.positive},
        {"negative", &set.negative},
        {"hedges", &set.hedges},
        {"factives", &set.factives},
        {"assertives", &set.assertives},
        {"implicatives", &set.implicatives},
        {"report_verbs", &set.report_verbs},
        {"bias_terms", &set.bias_terms},
        {"subjectivity_terms", &set.subjectivity_terms},
    };
    for (std::size_t i = 0; i < kMoralFoundations.size(); ++i)
        m.emplace(kMoralFoundations[i], &set.moral[i]);
    return m;
}

}  // namespace

LexiconSet parse_lexicons(std::istream& in) {
    LexiconSet set;
    auto sections = section_map(set);
    Lexicon* current = nullptr;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("lexicon: malformed section header at line " +
                                         std::to_string(lineno));
            std::string name = trim(line.substr(1, line.size() - 2));
            auto it = sections.find(name);
            if (it == sections.end())
                throw std::runtime_error("lexicon: unknown section '" + name + "' at line " +
                                         std::to_string(lineno));
            current = it->second;
            continue;
        }
        if (!current)
            throw std::runtime_error("lexicon: term before any section header at line " +
                                     std::to_string(lineno));
        current->add(line);
    }
    return set;
}

LexiconSet load_lexicons(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("lexicon: cannot open '" + path + "'");
    return parse_lexicons(in);
}

const LexiconSet& builtin_starter_lexicons() {
    static const LexiconSet set = [] {
        static const char* text = R"(# starter lexicons, small hand-picked lists for tests and synthesis
[positive]
good
great
excellent
best
win
wins
success
successful
strong
positive
happy
hope
hopeful
improve*
benefit*
support*
praise*
celebrat*
triumph*
thriv*

[negative]
bad
worst
terrible
horrible
awful
fail
fails
failure
weak
negative
angry
fear
fearful
crisis
disaster*
threat*
damag*
destroy*
collaps*
corrupt*

[hedges]
maybe
perhaps
possibly
probably
likely
unlikely
apparently
seemingly
somewhat
roughly
around
approximately
suggest*
appear*
might
could
reportedly
allegedly

[factives]
know
knows
knew
known
realize*
regret*
forget
forgot
discover*
reveal*
acknowledg*

[assertives]
claim*
assert*
insist*
maintain*
argue*
declar*
contend*
alleg*
swear*

[implicatives]
manage*
fail*
forget
forgot
bother*
attempt*
dare*
avoid*
hesitat*

[report_verbs]
said
says
say
told
tells
tell
stated
announc*
report*
added
noted
confirm*
denied
denies
deny
explain*
describ*

[bias_terms]
radical*
extremis*
regime
propaganda
conspir*
hoax
sham
scandal*
corrupt*
elit*
mainstream
disgrace*
outrag*

[subjectivity_terms]
amazing
incredible
unbelievable
stunning
shocking
beautiful
ugly
ridiculous
absurd
obviously
clearly
certainly
definitely
truly
really
very
huge
massive
tremendous
horrif*

[care_virtue]
care
caring
protect*
nurtur*
safe
safety
shelter*
compassion*

[care_vice]
harm
harms
harmed
hurt*
suffer*
cruel*
brutal*
abuse*
kill*

[fairness_virtue]
fair
fairness
justice
equal*
rights
honest*
impartial*

[fairness_vice]
unfair*
unjust*
cheat*
fraud*
bias*
discriminat*
dishonest*

[loyalty_virtue]
loyal*
patriot*
solidarity
unity
together
devot*
ally
allies

[loyalty_vice]
betray*
treason*
traitor*
desert*
disloyal*
foreign*

[authority_virtue]
authority
obey*
duty
lawful*
order
respect*
tradition*
leader*

[authority_vice]
rebel*
defi*
disobe*
chaos
lawless*
riot*
subver*

[sanctity_virtue]
pure
purity
sacred*
holy
clean*
pristine
wholesome*

[sanctity_vice]
filth*
dirty
contaminat*
disgust*
repuls*
sick*
profan*
)";
        std::istringstream in(text);
        return parse_lexicons(in);
    }();
    return set;
}

}  // namespace veribench::text
