#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "veribench/eval.hpp"
#include "veribench/parallel.hpp"
#include "veribench/rng.hpp"

namespace veribench::eval {

const char* to_string(ModelSpec::Kind k) {
    switch (k) {
        case ModelSpec::Kind::FOREST: return "random_forest";
        case ModelSpec::Kind::EXTRA_TREES: return "extra_trees";
        default: return "svm";
    }
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw std::invalid_argument("accuracy: length mismatch or empty");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_pred[i]) ++hit;
    return static_cast<double>(hit) / static_cast<double>(y_true.size());
}

Matrix confusion_matrix(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                        bool normalize, std::array<bool, 2>* absent) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw std::invalid_argument("confusion_matrix: length mismatch or empty");
    Matrix m(2, 2);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if ((y_true[i] != 0 && y_true[i] != 1) || (y_pred[i] != 0 && y_pred[i] != 1))
            throw std::invalid_argument("confusion_matrix: labels must be 0 or 1");
        m.at(static_cast<std::size_t>(y_true[i]), static_cast<std::size_t>(y_pred[i])) += 1.0;
    }
    if (absent) *absent = {false, false};
    if (normalize) {
        for (std::size_t r = 0; r < 2; ++r) {
            double row_sum = m.at(r, 0) + m.at(r, 1);
            if (row_sum == 0.0) {
                if (absent) (*absent)[r] = true;
                continue;
            }
            m.at(r, 0) /= row_sum;
            m.at(r, 1) /= row_sum;
        }
    }
    return m;
}

namespace {

struct FoldOutcome {
    double accuracy = 0.0;
    Matrix confusion{2, 2};               // normalized
    std::array<bool, 2> row_absent{false, false};
    std::vector<double> importance;       // forest cells
};

struct FoldInputs {
    Matrix Xtr, Xte;
    std::vector<int> ytr, yte;
    std::string signature;
    std::string embedding_tag;
};

Matrix gather_features(const LabeledDataset& ds, const std::vector<std::size_t>& idx,
                       std::size_t dim) {
    Matrix X(idx.size(), dim);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto& f = ds.rows[idx[r]].features;
        if (f.size() != dim)
            throw std::invalid_argument("run_experiment: row feature length mismatch");
        std::copy(f.begin(), f.end(), X.row(r));
    }
    return X;
}

}  // namespace

ExperimentResult run_experiment(const LabeledDataset& ds, const SplitPlan& plan,
                                const ModelSpec& mspec, const FeatureSpec& fspec,
                                std::uint64_t run_seed, std::size_t workers) {
    if (plan.folds.empty()) throw std::invalid_argument("run_experiment: plan has no folds");
    if (mspec.kind == ModelSpec::Kind::SVM && !fspec.scaled)
        throw std::invalid_argument(
            "run_experiment: svm cells require a scaled feature variant (scaled+normalized "
            "features); refusing before any training");
    if (fspec.kind == FeatureSpec::Kind::PRECOMPUTED) {
        if (ds.rows.empty() || ds.rows.front().features.empty())
            throw std::invalid_argument("run_experiment: dataset carries no feature vectors");
    } else if (!ds.has_tokens) {
        throw std::invalid_argument("run_experiment: d2v cells need a token dataset");
    }

    std::unordered_map<std::string, std::size_t> by_id;
    by_id.reserve(ds.rows.size());
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        if (!by_id.emplace(ds.rows[i].article_id, i).second)
            throw std::invalid_argument("run_experiment: duplicate article id '" +
                                        ds.rows[i].article_id + "'");
    }
    auto resolve = [&](const std::vector<std::string>& ids) {
        std::vector<std::size_t> idx;
        idx.reserve(ids.size());
        for (const auto& id : ids) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw std::invalid_argument("run_experiment: plan id '" + id +
                                            "' not in dataset");
            idx.push_back(it->second);
        }
        return idx;
    };

    const std::array<std::string, 2> class_names{kClassNames[0], kClassNames[1]};
    std::vector<FoldOutcome> outcomes(plan.folds.size());
    std::string signature_used, embedding_tag;
    std::mutex sig_mu;

    auto run_fold = [&](std::size_t f) {
        const std::uint64_t fold_seed = derive_seed(run_seed, f);
        const Fold& fold = plan.folds[f];
        auto tr = resolve(fold.train_ids);
        auto te = resolve(fold.test_ids);
        if (tr.empty() || te.empty())
            throw std::invalid_argument("empty train or test side");

        FoldInputs in;
        in.ytr.reserve(tr.size());
        in.yte.reserve(te.size());
        for (std::size_t i : tr) in.ytr.push_back(class_index(ds.rows[i].cls));
        for (std::size_t i : te) in.yte.push_back(class_index(ds.rows[i].cls));

        if (fspec.kind == FeatureSpec::Kind::PRECOMPUTED) {
            std::size_t dim = ds.rows.front().features.size();
            in.Xtr = gather_features(ds, tr, dim);
            in.Xte = gather_features(ds, te, dim);
            in.signature = ds.signature;
        } else {
            embed::EmbeddingConfig cfg = fspec.d2v;
            cfg.seed = derive_seed(fold_seed, "d2v");
            std::vector<std::vector<std::string>> train_docs;
            train_docs.reserve(tr.size());
            for (std::size_t i : tr) train_docs.push_back(ds.tokens[i]);
            embed::EmbeddingModel model = embed::train(train_docs, cfg);

            in.Xtr = model.doc_vectors;
            in.Xte = Matrix(te.size(), cfg.dimension);
            const std::uint64_t infer_base = derive_seed(fold_seed, "infer");
            for (std::size_t r = 0; r < te.size(); ++r) {
                auto v = embed::infer_vector(model, ds.tokens[te[r]], fspec.infer_steps,
                                             derive_seed(infer_base, ds.rows[te[r]].article_id));
                std::copy(v.begin(), v.end(), in.Xte.row(r));
            }
            in.signature = model.config.tag();
            in.embedding_tag = in.signature;
        }

        if (fspec.scaled) {
            learn::Scaler scaler = learn::fit_scaler(in.Xtr);
            scaler.fitted_on = "fold-" + std::to_string(f);
            in.Xtr = learn::apply_scaler(scaler, in.Xtr);
            in.Xte = learn::apply_scaler(scaler, in.Xte);
            in.signature += learn::kScaledSuffix;
        }

        {
            std::lock_guard<std::mutex> lock(sig_mu);
            if (signature_used.empty()) signature_used = in.signature;
            if (!in.embedding_tag.empty() && embedding_tag.empty())
                embedding_tag = in.embedding_tag;
        }

        learn::TrainedModel model;
        if (mspec.kind == ModelSpec::Kind::SVM) {
            learn::SvmParams p = mspec.svm;
            p.seed = derive_seed(fold_seed, "svm");
            model = learn::train_svm(in.Xtr, in.ytr, p, in.signature, class_names);
        } else {
            learn::ForestParams p = mspec.forest;
            if (mspec.kind == ModelSpec::Kind::EXTRA_TREES) {
                p.bootstrap = false;
                p.split_rule = learn::SplitRule::RANDOM_THRESHOLD;
            }
            p.seed = derive_seed(fold_seed, "forest");
            model = learn::train_forest(in.Xtr, in.ytr, p, in.signature, class_names);
        }

        auto pred = learn::predict(model, in.Xte);
        FoldOutcome& out = outcomes[f];
        out.accuracy = accuracy(in.yte, pred);
        out.confusion = confusion_matrix(in.yte, pred, true, &out.row_absent);
        if (mspec.kind != ModelSpec::Kind::SVM)
            out.importance = learn::feature_importance(model);
    };

    try {
        parallel_for(plan.folds.size(), workers, run_fold);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("run_experiment: fold failure: ") + e.what());
    }

    ExperimentResult res;
    res.fold_accuracies.reserve(outcomes.size());
    for (const auto& o : outcomes) res.fold_accuracies.push_back(o.accuracy);
    const double n = static_cast<double>(res.fold_accuracies.size());
    double sum = 0.0;
    for (double a : res.fold_accuracies) sum += a;
    res.mean = sum / n;
    double ss = 0.0;
    for (double a : res.fold_accuracies) ss += (a - res.mean) * (a - res.mean);
    res.stddev = std::sqrt(ss / n);  // population std over folds

    for (const auto& o : outcomes) {
        res.fold_confusions.push_back(o.confusion);
        res.fold_row_absent.push_back(o.row_absent);
    }

    // fold-average each confusion row over the folds where it was defined
    for (std::size_t r = 0; r < 2; ++r) {
        double c0 = 0.0, c1 = 0.0;
        std::size_t defined = 0;
        for (const auto& o : outcomes) {
            if (o.row_absent[r]) continue;
            c0 += o.confusion.at(r, 0);
            c1 += o.confusion.at(r, 1);
            ++defined;
        }
        if (defined > 0) {
            res.confusion.at(r, 0) = c0 / static_cast<double>(defined);
            res.confusion.at(r, 1) = c1 / static_cast<double>(defined);
            res.confusion_row_defined[r] = true;
        }
    }

    if (mspec.kind != ModelSpec::Kind::SVM && !outcomes.empty() &&
        !outcomes.front().importance.empty()) {
        res.has_importance = true;
        res.importance_mean.assign(outcomes.front().importance.size(), 0.0);
        for (const auto& o : outcomes)
            for (std::size_t j = 0; j < res.importance_mean.size(); ++j)
                res.importance_mean[j] += o.importance[j];
        for (double& x : res.importance_mean) x /= n;
        res.concentration = learn::importance_concentration(res.importance_mean);
    }

    res.manifest.run_seed = run_seed;
    res.manifest.feature_signature = signature_used;
    res.manifest.embedding_tag = embedding_tag;
    res.manifest.scheme = to_string(plan.scheme);
    res.manifest.model = to_string(mspec.kind);
    res.manifest.folds = plan.folds.size();
    res.manifest.rows = ds.rows.size();
    return res;
}

}  // namespace veribench::eval
