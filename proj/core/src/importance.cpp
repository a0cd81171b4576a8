#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "veribench/learn.hpp"

namespace veribench::learn {

ConcentrationStats importance_concentration(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("importance_concentration: empty vector");
    double sum = 0.0;
    for (double x : v) {
        if (x < 0.0)
            throw std::invalid_argument("importance_concentration: negative entry");
        sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("importance_concentration: vector must sum to 1");

    const std::size_t n = v.size();
    ConcentrationStats out;
    if (n == 1) {
        out.gini_coefficient = 0.0;
        out.normalized_entropy = 1.0;  // a single mass point is maximally uniform
        return out;
    }

    // G = sum_i sum_j |v_i - v_j| / (2 n^2 vbar), via the sorted identity
    std::vector<double> s(v);
    std::sort(s.begin(), s.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += (2.0 * static_cast<double>(i) - static_cast<double>(n) + 1.0) * s[i];
    const double vbar = sum / static_cast<double>(n);
    out.gini_coefficient = acc / (static_cast<double>(n) * static_cast<double>(n) * vbar);

    double h = 0.0;
    for (double x : v)
        if (x > 0.0) h -= x * std::log(x);
    out.normalized_entropy = h / std::log(static_cast<double>(n));
    return out;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json scaler_json(const Scaler& s) {
    return {{"mean", s.mean}, {"stddev", s.stddev}, {"fitted_on", s.fitted_on}};
}

Scaler scaler_from_json(const nlohmann::json& j) {
    Scaler s;
    s.mean = j.at("mean").get<std::vector<double>>();
    s.stddev = j.at("stddev").get<std::vector<double>>();
    s.fitted_on = j.value("fitted_on", "");
    return s;
}

void save_svm(const TrainedModel& m, const std::string& path) {
    nlohmann::json j{
        {"format", "veribench-svm"},
        {"version", 1},
        {"signature", m.signature},
        {"classes", {m.class_names[0], m.class_names[1]}},
        {"params",
         {{"C", m.svm_params.C},
          {"epochs", m.svm_params.epochs},
          {"tolerance", m.svm_params.tolerance},
          {"seed", m.svm_params.seed}}},
        {"w", m.w},
        {"b", m.b},
    };
    if (m.has_scaler) j["scaler"] = scaler_json(m.scaler);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot open '" + path + "'");
    out << j.dump(2) << '\n';
}

void save_forest(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot open '" + path + "'");
    const auto& p = m.forest_params;
    out << "veribench-forest 1\n";
    out << "signature " << m.signature << '\n';
    out << "classes " << m.class_names[0] << ' ' << m.class_names[1] << '\n';
    out << "params n_trees=" << p.n_trees << " max_depth=" << p.max_depth << " mtry=" << p.mtry
        << " min_leaf=" << p.min_leaf << " bootstrap=" << (p.bootstrap ? 1 : 0)
        << " split_rule="
        << (p.split_rule == SplitRule::BEST_GINI ? "best_gini" : "random_threshold")
        << " seed=" << p.seed << '\n';
    out << "features " << m.impurity_decrease.size() << '\n';
    out << "importance";
    for (double x : m.impurity_decrease) out << ' ' << fmt(x);
    out << '\n';
    out << "scaler " << (m.has_scaler ? 1 : 0) << '\n';
    if (m.has_scaler) {
        out << "mean";
        for (double x : m.scaler.mean) out << ' ' << fmt(x);
        out << "\nstddev";
        for (double x : m.scaler.stddev) out << ' ' << fmt(x);
        out << '\n';
    }
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
        out << "tree " << t << " nodes " << m.trees[t].nodes.size() << '\n';
        for (const auto& nd : m.trees[t].nodes)
            out << nd.feature << ' ' << fmt(nd.threshold) << ' ' << nd.left << ' ' << nd.right
                << ' ' << nd.counts[0] << ' ' << nd.counts[1] << '\n';
    }
    out << "end\n";
}

TrainedModel load_svm(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "veribench-svm")
        throw std::runtime_error("load_model: unrecognized JSON model format");
    TrainedModel m;
    m.kind = ModelKind::SVM;
    m.signature = j.at("signature").get<std::string>();
    auto classes = j.at("classes").get<std::vector<std::string>>();
    if (classes.size() != 2) throw std::runtime_error("load_model: need exactly 2 classes");
    m.class_names = {classes[0], classes[1]};
    const auto& p = j.at("params");
    m.svm_params.C = p.at("C").get<double>();
    m.svm_params.epochs = p.at("epochs").get<std::size_t>();
    m.svm_params.tolerance = p.at("tolerance").get<double>();
    m.svm_params.seed = p.at("seed").get<std::uint64_t>();
    m.w = j.at("w").get<std::vector<double>>();
    m.b = j.at("b").get<double>();
    if (j.contains("scaler")) {
        m.has_scaler = true;
        m.scaler = scaler_from_json(j.at("scaler"));
    }
    return m;
}

TrainedModel load_forest(std::istream& in) {
    TrainedModel m;
    m.kind = ModelKind::FOREST;
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line))
            throw std::runtime_error(std::string("load_model: truncated forest dump at ") + what);
        return line;
    };

    std::istringstream hs(next_line("header"));
    std::string magic;
    int version = 0;
    hs >> magic >> version;
    if (magic != "veribench-forest" || version != 1)
        throw std::runtime_error("load_model: unrecognized forest dump header");

    std::istringstream sig(next_line("signature"));
    std::string key;
    sig >> key >> m.signature;
    std::istringstream cls(next_line("classes"));
    cls >> key >> m.class_names[0] >> m.class_names[1];

    std::istringstream ps(next_line("params"));
    ps >> key;
    std::string kv;
    while (ps >> kv) {
        auto eq = kv.find('=');
        std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
        auto& p = m.forest_params;
        if (k == "n_trees") p.n_trees = std::stoull(val);
        else if (k == "max_depth") p.max_depth = std::stoull(val);
        else if (k == "mtry") p.mtry = std::stoull(val);
        else if (k == "min_leaf") p.min_leaf = std::stoull(val);
        else if (k == "bootstrap") p.bootstrap = val == "1";
        else if (k == "split_rule")
            p.split_rule = val == "best_gini" ? SplitRule::BEST_GINI : SplitRule::RANDOM_THRESHOLD;
        else if (k == "seed") p.seed = std::stoull(val);
        else throw std::runtime_error("load_model: unknown forest param '" + k + "'");
    }

    std::istringstream fs(next_line("features"));
    std::size_t d = 0;
    fs >> key >> d;
    std::istringstream is(next_line("importance"));
    is >> key;
    m.impurity_decrease.resize(d);
    for (auto& x : m.impurity_decrease) is >> x;

    std::istringstream scs(next_line("scaler"));
    int has_scaler = 0;
    scs >> key >> has_scaler;
    if (has_scaler) {
        m.has_scaler = true;
        std::istringstream ms(next_line("mean"));
        ms >> key;
        double x;
        while (ms >> x) m.scaler.mean.push_back(x);
        std::istringstream ss(next_line("stddev"));
        ss >> key;
        while (ss >> x) m.scaler.stddev.push_back(x);
    }

    while (std::getline(in, line)) {
        if (line == "end") break;
        std::istringstream ts(line);
        std::size_t index = 0, nodes = 0;
        ts >> key >> index >> kv >> nodes;
        if (key != "tree")
            throw std::runtime_error("load_model: expected tree header, got '" + line + "'");
        Tree tree;
        tree.nodes.resize(nodes);
        for (auto& nd : tree.nodes) {
            std::istringstream ns(next_line("node"));
            ns >> nd.feature >> nd.threshold >> nd.left >> nd.right >> nd.counts[0] >>
                nd.counts[1];
            if (!ns)
                throw std::runtime_error("load_model: malformed node line '" + line + "'");
        }
        m.trees.push_back(std::move(tree));
    }
    return m;
}

}  // namespace

void save_model(const TrainedModel& m, const std::string& path) {
    if (m.kind == ModelKind::SVM)
        save_svm(m, path);
    else
        save_forest(m, path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");
    int first = in.peek();
    if (first == '{') return load_svm(in);
    return load_forest(in);
}

}  // namespace veribench::learn
