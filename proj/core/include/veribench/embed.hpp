#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "veribench/matrix.hpp"

namespace veribench::embed {

enum class D2vVariant { PV_DBOW, PV_DM };  // PV_DM is a stub; train() rejects it

struct EmbeddingConfig {
    std::size_t dimension = 100;
    std::size_t window = 5;  // PV_DM only, unused by PV-DBOW
    std::size_t negative_k = 5;
    std::size_t epochs = 20;
    double learning_rate = 0.025;
    double final_lr = 0.0001;
    std::size_t min_count = 2;
    std::uint64_t seed = 0;
    D2vVariant variant = D2vVariant::PV_DBOW;

    void validate() const;  // throws std::invalid_argument listing every violation
    /// Stable content hash; tags vectors so classifiers never mix trainings.
    std::string tag() const;
};

struct Vocab {
    std::vector<std::string> terms;   // dense indices 0..V-1
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::uint32_t> noise_table;  // unigram^0.75 sampling table

    std::size_t size() const { return terms.size(); }
    bool contains(const std::string& t) const { return index.count(t) != 0; }
    void rebuild_noise_table();  // from counts; used by build_vocab and load_model
};

/// Terms with count >= min_count, indexed by descending count then term text.
/// Throws on an empty corpus or when nothing survives the cutoff.
Vocab build_vocab(const std::vector<std::vector<std::string>>& corpus, std::size_t min_count);

struct TrainReport {
    std::vector<double> epoch_mean_loss;   // mean per-pair loss, one entry per epoch
    std::vector<std::size_t> empty_docs;   // documents with zero in-vocab tokens
};

struct EmbeddingModel {
    EmbeddingConfig config;
    Vocab vocab;
    Matrix doc_vectors;   // N x D
    Matrix word_vectors;  // V x D output vectors
};

/// PV-DBOW with negative sampling, single-threaded SGD in corpus order with
/// per-epoch linear LR decay. Deterministic given config.seed.
EmbeddingModel train(const std::vector<std::vector<std::string>>& corpus,
                     const EmbeddingConfig& cfg, TrainReport* report = nullptr);

/// Gradient-descends a fresh doc vector against frozen word vectors.
/// steps=0 returns the seeded initialization; all-OOV docs give zeros + flag.
std::vector<double> infer_vector(const EmbeddingModel& m, const std::vector<std::string>& tokens,
                                 std::size_t steps, std::uint64_t seed,
                                 bool* all_oov = nullptr);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// One (doc, word) negative-sampling term, exposed for finite-difference tests.
// loss = -log sigmoid(v.target) - sum_i log sigmoid(-v.negatives[i])
struct PairSample {
    std::vector<double> target;
    std::vector<std::vector<double>> negatives;
};
double pair_loss(const std::vector<double>& v, const PairSample& s);
std::vector<double> pair_grad_doc(const std::vector<double>& v, const PairSample& s);

/// Persistence: prefix.json (config, vocab, shapes) + prefix.docs.csv +
/// prefix.words.csv. Portable, no binary payloads.
void save_model(const EmbeddingModel& m, const std::string& prefix);
EmbeddingModel load_model(const std::string& prefix);

}  // namespace veribench::embed
