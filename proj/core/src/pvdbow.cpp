#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "veribench/embed.hpp"
#include "veribench/rng.hpp"

namespace veribench::embed {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// log sigmoid(x), stable for large |x|
double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void EmbeddingConfig::validate() const {
    std::vector<std::string> bad;
    if (dimension < 1) bad.push_back("dimension must be >= 1");
    if (negative_k < 1) bad.push_back("negative_k must be >= 1");
    if (epochs < 1) bad.push_back("epochs must be >= 1");
    if (min_count < 1) bad.push_back("min_count must be >= 1");
    if (!(learning_rate > 0.0) || learning_rate > 1.0)
        bad.push_back("learning_rate must be in (0, 1]");
    if (!(final_lr > 0.0) || final_lr > learning_rate)
        bad.push_back("final_lr must satisfy 0 < final_lr <= learning_rate");
    if (!bad.empty()) {
        std::string msg = "embedding config invalid:";
        for (const auto& b : bad) msg += " " + b + ";";
        throw std::invalid_argument(msg);
    }
}

std::string EmbeddingConfig::tag() const {
    std::ostringstream os;
    os << "dim=" << dimension << ";window=" << window << ";k=" << negative_k
       << ";epochs=" << epochs << ";lr=" << fmt(learning_rate) << ";final=" << fmt(final_lr)
       << ";min_count=" << min_count << ";seed=" << seed
       << ";variant=" << (variant == D2vVariant::PV_DBOW ? "pvdbow" : "pvdm");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(os.str())));
    return std::string("d2v-") + buf;
}

double pair_loss(const std::vector<double>& v, const PairSample& s) {
    const std::size_t D = v.size();
    double loss = -log_sigmoid(dot(v.data(), s.target.data(), D));
    for (const auto& n : s.negatives) loss -= log_sigmoid(-dot(v.data(), n.data(), D));
    return loss;
}

std::vector<double> pair_grad_doc(const std::vector<double>& v, const PairSample& s) {
    const std::size_t D = v.size();
    std::vector<double> g(D, 0.0);
    double ct = sigmoid(dot(v.data(), s.target.data(), D)) - 1.0;
    for (std::size_t i = 0; i < D; ++i) g[i] += ct * s.target[i];
    for (const auto& n : s.negatives) {
        double cn = sigmoid(dot(v.data(), n.data(), D));
        for (std::size_t i = 0; i < D; ++i) g[i] += cn * n[i];
    }
    return g;
}

EmbeddingModel train(const std::vector<std::vector<std::string>>& corpus,
                     const EmbeddingConfig& cfg, TrainReport* report) {
    cfg.validate();
    if (cfg.variant != D2vVariant::PV_DBOW)
        throw std::invalid_argument("train: only the PV_DBOW variant is implemented");

    EmbeddingModel m;
    m.config = cfg;
    m.vocab = build_vocab(corpus, cfg.min_count);

    const std::size_t N = corpus.size();
    const std::size_t D = cfg.dimension;
    const std::size_t V = m.vocab.size();
    m.doc_vectors = Matrix(N, D);
    m.word_vectors = Matrix(V, D);

    Rng init_rng(derive_seed(cfg.seed, "init"));
    const double half = 0.5 / static_cast<double>(D);
    for (double& x : m.doc_vectors.data) x = init_rng.uniform(-half, half);
    for (double& x : m.word_vectors.data) x = init_rng.uniform(-half, half);

    std::vector<std::vector<std::uint32_t>> doc_words(N);
    for (std::size_t d = 0; d < N; ++d) {
        for (const auto& tok : corpus[d]) {
            auto it = m.vocab.index.find(tok);
            if (it != m.vocab.index.end())
                doc_words[d].push_back(static_cast<std::uint32_t>(it->second));
        }
        if (doc_words[d].empty() && report) report->empty_docs.push_back(d);
    }

    Rng rng(derive_seed(cfg.seed, "train"));
    const std::size_t table_size = m.vocab.noise_table.size();
    std::vector<double> grad(D);
    std::vector<std::uint32_t> negs(cfg.negative_k);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double t = cfg.epochs == 1
                             ? 0.0
                             : static_cast<double>(epoch) / static_cast<double>(cfg.epochs - 1);
        const double lr = cfg.learning_rate + (cfg.final_lr - cfg.learning_rate) * t;
        double loss_sum = 0.0;
        std::size_t pairs = 0;

        for (std::size_t d = 0; d < N; ++d) {
            double* v = m.doc_vectors.row(d);
            for (std::uint32_t w : doc_words[d]) {
                ++pairs;
                std::size_t k = 0;
                if (V > 1) {
                    for (; k < cfg.negative_k; ++k) {
                        std::uint32_t n;
                        do {
                            n = m.vocab.noise_table[rng.below(table_size)];
                        } while (n == w);
                        negs[k] = n;
                    }
                }

                std::fill(grad.begin(), grad.end(), 0.0);
                double* uw = m.word_vectors.row(w);
                double a = dot(v, uw, D);
                double ct = sigmoid(a) - 1.0;
                loss_sum -= log_sigmoid(a);
                for (std::size_t i = 0; i < D; ++i) grad[i] += ct * uw[i];
                for (std::size_t i = 0; i < D; ++i) uw[i] -= lr * ct * v[i];

                for (std::size_t j = 0; j < k; ++j) {
                    double* un = m.word_vectors.row(negs[j]);
                    double b = dot(v, un, D);
                    double cn = sigmoid(b);
                    loss_sum -= log_sigmoid(-b);
                    for (std::size_t i = 0; i < D; ++i) grad[i] += cn * un[i];
                    for (std::size_t i = 0; i < D; ++i) un[i] -= lr * cn * v[i];
                }
                for (std::size_t i = 0; i < D; ++i) v[i] -= lr * grad[i];
            }
        }
        if (report)
            report->epoch_mean_loss.push_back(pairs == 0 ? 0.0
                                                         : loss_sum / static_cast<double>(pairs));
    }

    for (double x : m.doc_vectors.data)
        if (!std::isfinite(x)) throw std::logic_error("train: non-finite doc vector");
    for (double x : m.word_vectors.data)
        if (!std::isfinite(x)) throw std::logic_error("train: non-finite word vector");
    return m;
}

std::vector<double> infer_vector(const EmbeddingModel& m, const std::vector<std::string>& tokens,
                                 std::size_t steps, std::uint64_t seed, bool* all_oov) {
    const std::size_t D = m.config.dimension;
    std::vector<std::uint32_t> words;
    for (const auto& tok : tokens) {
        auto it = m.vocab.index.find(tok);
        if (it != m.vocab.index.end()) words.push_back(static_cast<std::uint32_t>(it->second));
    }
    if (all_oov) *all_oov = words.empty();
    if (words.empty()) return std::vector<double>(D, 0.0);

    Rng rng(derive_seed(seed, "infer"));
    const double half = 0.5 / static_cast<double>(D);
    std::vector<double> v(D);
    for (double& x : v) x = rng.uniform(-half, half);
    if (steps == 0) return v;

    const std::size_t V = m.vocab.size();
    const std::size_t table_size = m.vocab.noise_table.size();
    std::vector<double> grad(D);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t =
            steps == 1 ? 0.0 : static_cast<double>(step) / static_cast<double>(steps - 1);
        const double lr = m.config.learning_rate + (m.config.final_lr - m.config.learning_rate) * t;
        for (std::uint32_t w : words) {
            std::fill(grad.begin(), grad.end(), 0.0);
            const double* uw = m.word_vectors.row(w);
            double ct = sigmoid(dot(v.data(), uw, D)) - 1.0;
            for (std::size_t i = 0; i < D; ++i) grad[i] += ct * uw[i];
            if (V > 1) {
                for (std::size_t j = 0; j < m.config.negative_k; ++j) {
                    std::uint32_t n;
                    do {
                        n = m.vocab.noise_table[rng.below(table_size)];
                    } while (n == w);
                    const double* un = m.word_vectors.row(n);
                    double cn = sigmoid(dot(v.data(), un, D));
                    for (std::size_t i = 0; i < D; ++i) grad[i] += cn * un[i];
                }
            }
            for (std::size_t i = 0; i < D; ++i) v[i] -= lr * grad[i];
        }
    }
    return v;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine_similarity: length mismatch");
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

void save_model(const EmbeddingModel& m, const std::string& prefix) {
    nlohmann::json header{
        {"format", "veribench-d2v"},
        {"version", 1},
        {"tag", m.config.tag()},
        {"config",
         {{"dimension", m.config.dimension},
          {"window", m.config.window},
          {"negative_k", m.config.negative_k},
          {"epochs", m.config.epochs},
          {"learning_rate", m.config.learning_rate},
          {"final_lr", m.config.final_lr},
          {"min_count", m.config.min_count},
          {"seed", m.config.seed},
          {"variant", m.config.variant == D2vVariant::PV_DBOW ? "pvdbow" : "pvdm"}}},
        {"vocab", {{"terms", m.vocab.terms}, {"counts", m.vocab.counts}}},
        {"docs", m.doc_vectors.rows},
    };
    std::ofstream js(prefix + ".json", std::ios::binary);
    if (!js) throw std::runtime_error("save_model: cannot open '" + prefix + ".json'");
    js << header.dump(2) << '\n';

    auto write_matrix = [](const std::string& path, const Matrix& mat) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("save_model: cannot open '" + path + "'");
        for (std::size_t r = 0; r < mat.rows; ++r) {
            for (std::size_t c = 0; c < mat.cols; ++c) {
                if (c) out << ',';
                out << fmt(mat.at(r, c));
            }
            out << '\n';
        }
    };
    write_matrix(prefix + ".docs.csv", m.doc_vectors);
    write_matrix(prefix + ".words.csv", m.word_vectors);
}

EmbeddingModel load_model(const std::string& prefix) {
    std::ifstream js(prefix + ".json");
    if (!js) throw std::runtime_error("load_model: cannot open '" + prefix + ".json'");
    nlohmann::json header = nlohmann::json::parse(js);
    if (header.value("format", "") != "veribench-d2v")
        throw std::runtime_error("load_model: unrecognized format in '" + prefix + ".json'");

    EmbeddingModel m;
    const auto& c = header.at("config");
    m.config.dimension = c.at("dimension").get<std::size_t>();
    m.config.window = c.at("window").get<std::size_t>();
    m.config.negative_k = c.at("negative_k").get<std::size_t>();
    m.config.epochs = c.at("epochs").get<std::size_t>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.final_lr = c.at("final_lr").get<double>();
    m.config.min_count = c.at("min_count").get<std::size_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.variant =
        c.at("variant").get<std::string>() == "pvdm" ? D2vVariant::PV_DM : D2vVariant::PV_DBOW;

    m.vocab.terms = header.at("vocab").at("terms").get<std::vector<std::string>>();
    m.vocab.counts = header.at("vocab").at("counts").get<std::vector<std::uint64_t>>();
    for (std::size_t i = 0; i < m.vocab.terms.size(); ++i) m.vocab.index[m.vocab.terms[i]] = i;
    m.vocab.rebuild_noise_table();

    auto read_matrix = [](const std::string& path, std::size_t expect_cols) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");
        std::vector<double> data;
        std::size_t rows = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++rows;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) data.push_back(std::stod(cell));
        }
        if (rows * expect_cols != data.size())
            throw std::runtime_error("load_model: ragged matrix in '" + path + "'");
        Matrix mat(rows, expect_cols);
        mat.data = std::move(data);
        return mat;
    };
    m.doc_vectors = read_matrix(prefix + ".docs.csv", m.config.dimension);
    m.word_vectors = read_matrix(prefix + ".words.csv", m.config.dimension);
    if (m.word_vectors.rows != m.vocab.size())
        throw std::runtime_error("load_model: vocab/word matrix row mismatch");
    return m;
}

}  // namespace veribench::embed
