#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "veribench/embed.hpp"

namespace veribench::embed {

namespace {
constexpr std::size_t kNoiseTableSize = 1 << 17;
}

void Vocab::rebuild_noise_table() {
    double total = 0.0;
    std::vector<double> mass(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        mass[i] = std::pow(static_cast<double>(counts[i]), 0.75);
        total += mass[i];
    }
    noise_table.assign(kNoiseTableSize, 0);
    std::size_t begin = 0;
    double cum = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        cum += mass[i] / total;
        std::size_t end = i + 1 == mass.size()
                              ? kNoiseTableSize
                              : std::min<std::size_t>(
                                    kNoiseTableSize,
                                    static_cast<std::size_t>(std::llround(cum * kNoiseTableSize)));
        for (std::size_t slot = begin; slot < end; ++slot)
            noise_table[slot] = static_cast<std::uint32_t>(i);
        begin = std::max(begin, end);
    }
}

Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, std::size_t min_count) {
    if (corpus.empty()) throw std::invalid_argument("build_vocab: empty corpus");

    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& doc : corpus)
        for (const auto& tok : doc) ++freq[tok];

    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [term, n] : freq)
        if (n >= min_count) kept.emplace_back(term, n);
    if (kept.empty())
        throw std::invalid_argument("build_vocab: no term reaches min_count=" +
                                    std::to_string(min_count));
    // descending count, term text as tie-break, so indices are reproducible
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocab v;
    v.terms.reserve(kept.size());
    v.counts.reserve(kept.size());
    for (auto& [term, n] : kept) {
        v.index.emplace(term, v.terms.size());
        v.terms.push_back(term);
        v.counts.push_back(n);
    }
    v.rebuild_noise_table();
    return v;
}

}  // namespace veribench::embed
