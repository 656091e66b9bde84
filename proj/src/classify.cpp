// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "evmscan/binning.hpp"
#include "evmscan/error.hpp"
#include "evmscan/rng.hpp"

namespace evmscan {

namespace {

void require_binary_training_set(const Dataset& ds) {
    if (!ds.has_both_classes())
        throw Error(ErrKind::SingleClassDataset, "training data needs both classes");
    for (const auto& row : ds.rows)
        for (double v : row)
            if (v != 0.0 && v != 1.0)
                throw Error(ErrKind::NonBinaryFeature, "training features must be 0/1");
}

void require_width(std::span<const int> bits, std::size_t width) {
    if (bits.size() != width)
        throw Error(ErrKind::DimensionMismatch, "input has " + std::to_string(bits.size()) +
                                                    " features, model expects " + std::to_string(width));
}

// score > 0.5 => malicious; an exact tie stays legitimate
int label_of(double score) { return score > 0.5 ? 1 : 0; }

std::vector<double>& lr_loss_curve_storage() {
    static std::vector<double> curve;
    return curve;
}

// --- Bernoulli naive Bayes --------------------------------------------------

class NaiveBayes final : public Classifier {
public:
    NaiveBayes(const Dataset& ds, const TrainOptions& opts) {
        feature_names_ = ds.feature_names;
        const double alpha = opts.nb_alpha;
        const double n = static_cast<double>(ds.size());
        const std::size_t d = ds.num_features();
        for (int c : {0, 1}) {
            const double nc = static_cast<double>(ds.count_label(c));
            log_prior_[c] = std::log(nc / n);
            p_one_[c].assign(d, 0.0);
            for (std::size_t f = 0; f < d; ++f) {
                double ones = 0;
                for (std::size_t r = 0; r < ds.size(); ++r)
                    if (ds.labels[r] == c && ds.rows[r][f] == 1.0) ones += 1;
                p_one_[c][f] = (ones + alpha) / (nc + 2 * alpha);
            }
        }
    }

    explicit NaiveBayes(const nlohmann::json& j) {
        feature_names_ = j.at("features").get<std::vector<std::string>>();
        for (int c : {0, 1}) {
            log_prior_[c] = j.at("log_prior")[static_cast<std::size_t>(c)].get<double>();
            p_one_[c] = j.at("p_one")[static_cast<std::size_t>(c)].get<std::vector<double>>();
        }
    }

    Algo algo() const override { return Algo::naive_bayes; }

    Prediction predict(std::span<const int> bits) const override {
        require_width(bits, feature_names_.size());
        double log_joint[2];
        for (int c : {0, 1}) {
            double lj = log_prior_[c];
            for (std::size_t f = 0; f < bits.size(); ++f)
                lj += std::log(bits[f] ? p_one_[c][f] : 1.0 - p_one_[c][f]);
            log_joint[c] = lj;
        }
        // posterior of class 1, computed stably
        const double score = 1.0 / (1.0 + std::exp(log_joint[0] - log_joint[1]));
        return {label_of(score), score};
    }

    nlohmann::json to_json() const override {
        return {{"algorithm", "nb"},
                {"features", feature_names_},
                {"log_prior", {log_prior_[0], log_prior_[1]}},
                {"p_one", {p_one_[0], p_one_[1]}}};
    }

private:
    double log_prior_[2] = {0, 0};
    std::vector<double> p_one_[2];
};

// --- logistic regression ----------------------------------------------------

class LogisticRegression final : public Classifier {
public:
    LogisticRegression(const Dataset& ds, const TrainOptions& opts) {
        feature_names_ = ds.feature_names;
        const std::size_t d = ds.num_features();
        const std::size_t n = ds.size();
        weights_.assign(d, 0.0);
        bias_ = 0.0;

        auto& curve = lr_loss_curve_storage();
        curve.clear();
        std::vector<double> grad(d);
        for (int epoch = 0; epoch < opts.lr_epochs; ++epoch) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_bias = 0, loss = 0;
            for (std::size_t r = 0; r < n; ++r) {
                double z = bias_;
                for (std::size_t f = 0; f < d; ++f) z += weights_[f] * ds.rows[r][f];
                const double p = 1.0 / (1.0 + std::exp(-z));
                const double y = ds.labels[r];
                const double err = p - y;
                for (std::size_t f = 0; f < d; ++f) grad[f] += err * ds.rows[r][f];
                grad_bias += err;
                const double eps = 1e-12;
                loss -= y * std::log(p + eps) + (1 - y) * std::log(1 - p + eps);
            }
            double l2 = 0;
            for (std::size_t f = 0; f < d; ++f) l2 += weights_[f] * weights_[f];
            curve.push_back(loss / static_cast<double>(n) + 0.5 * opts.lr_l2 * l2);
            for (std::size_t f = 0; f < d; ++f)
                weights_[f] -= opts.lr_learning_rate *
                               (grad[f] / static_cast<double>(n) + opts.lr_l2 * weights_[f]);
            bias_ -= opts.lr_learning_rate * grad_bias / static_cast<double>(n);
        }
    }

    explicit LogisticRegression(const nlohmann::json& j) {
        feature_names_ = j.at("features").get<std::vector<std::string>>();
        weights_ = j.at("weights").get<std::vector<double>>();
        bias_ = j.at("bias").get<double>();
    }

    Algo algo() const override { return Algo::logistic_regression; }

    Prediction predict(std::span<const int> bits) const override {
        require_width(bits, feature_names_.size());
        double z = bias_;
        for (std::size_t f = 0; f < bits.size(); ++f) z += weights_[f] * bits[f];
        const double score = 1.0 / (1.0 + std::exp(-z));
        return {label_of(score), score};
    }

    nlohmann::json to_json() const override {
        return {{"algorithm", "lr"}, {"features", feature_names_}, {"weights", weights_}, {"bias", bias_}};
    }

    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
    double bias_ = 0;
};

// --- decision tree ----------------------------------------------------------

struct TreeNode {
    int feature = -1;  // -1 => leaf
    int left = -1;     // child for bit 0
    int right = -1;    // child for bit 1
    int label = 0;
    double purity = 0;  // fraction of class 1 at the node
};

class DecisionTree final : public Classifier {
public:
    DecisionTree(const Dataset& ds, const TrainOptions& opts) {
        feature_names_ = ds.feature_names;
        std::vector<std::size_t> all(ds.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        build(ds, all, 0, opts);
    }

    explicit DecisionTree(const nlohmann::json& j) {
        feature_names_ = j.at("features").get<std::vector<std::string>>();
        for (const auto& n : j.at("nodes")) {
            TreeNode node;
            node.feature = n.at("feature").get<int>();
            node.left = n.at("left").get<int>();
            node.right = n.at("right").get<int>();
            node.label = n.at("label").get<int>();
            node.purity = n.at("purity").get<double>();
            nodes_.push_back(node);
        }
    }

    Algo algo() const override { return Algo::decision_tree; }

    Prediction predict(std::span<const int> bits) const override {
        require_width(bits, feature_names_.size());
        int at = 0;
        while (nodes_[static_cast<std::size_t>(at)].feature >= 0) {
            const auto& n = nodes_[static_cast<std::size_t>(at)];
            at = bits[static_cast<std::size_t>(n.feature)] ? n.right : n.left;
        }
        const auto& leaf = nodes_[static_cast<std::size_t>(at)];
        return {leaf.label, leaf.purity};
    }

    nlohmann::json to_json() const override {
        auto nodes = nlohmann::json::array();
        for (const auto& n : nodes_)
            nodes.push_back({{"feature", n.feature},
                             {"left", n.left},
                             {"right", n.right},
                             {"label", n.label},
                             {"purity", n.purity}});
        return {{"algorithm", "dt"}, {"features", feature_names_}, {"nodes", nodes}};
    }

private:
    int build(const Dataset& ds, const std::vector<std::size_t>& rows, int depth,
              const TrainOptions& opts) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();

        double ones = 0;
        for (std::size_t r : rows) ones += ds.labels[r];
        const double purity = ones / static_cast<double>(rows.size());
        nodes_[static_cast<std::size_t>(id)].purity = purity;
        nodes_[static_cast<std::size_t>(id)].label = label_of(purity);

        if (purity == 0.0 || purity == 1.0 || depth >= opts.dt_max_depth) return id;

        // best feature by information gain; smallest index wins ties
        int best_feature = -1;
        double best_gain = 0;
        std::vector<int> labels, high, low;
        for (std::size_t r : rows) labels.push_back(ds.labels[r]);
        const double h = entropy(labels);
        for (std::size_t f = 0; f < ds.num_features(); ++f) {
            high.clear();
            low.clear();
            for (std::size_t r : rows) (ds.rows[r][f] == 1.0 ? high : low).push_back(ds.labels[r]);
            if (high.empty() || low.empty()) continue;
            if (static_cast<int>(high.size()) < opts.dt_min_leaf ||
                static_cast<int>(low.size()) < opts.dt_min_leaf)
                continue;
            const double n = static_cast<double>(rows.size());
            const double gain = h - (static_cast<double>(high.size()) / n) * entropy(high) -
                                (static_cast<double>(low.size()) / n) * entropy(low);
            if (gain > best_gain + 1e-15) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
            }
        }
        if (best_feature < 0) return id;

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows)
            (ds.rows[r][static_cast<std::size_t>(best_feature)] == 1.0 ? right_rows : left_rows)
                .push_back(r);
        nodes_[static_cast<std::size_t>(id)].feature = best_feature;
        const int left = build(ds, left_rows, depth + 1, opts);
        nodes_[static_cast<std::size_t>(id)].left = left;
        const int right = build(ds, right_rows, depth + 1, opts);
        nodes_[static_cast<std::size_t>(id)].right = right;
        return id;
    }

    std::vector<TreeNode> nodes_;
};

// --- k-nearest neighbours ---------------------------------------------------

class Knn final : public Classifier {
public:
    Knn(const Dataset& ds, const TrainOptions& opts) : k_(opts.knn_k) {
        if (k_ <= 0 || k_ % 2 == 0) throw Error(ErrKind::UsageError, "knn k must be odd and positive");
        if (static_cast<std::size_t>(k_) > ds.size())
            throw Error(ErrKind::TooFewSamples, "knn k exceeds training set size");
        feature_names_ = ds.feature_names;
        labels_ = ds.labels;
        rows_.reserve(ds.size());
        for (const auto& row : ds.rows) {
            std::vector<std::uint8_t> bits(row.size());
            for (std::size_t i = 0; i < row.size(); ++i) bits[i] = row[i] == 1.0 ? 1 : 0;
            rows_.push_back(std::move(bits));
        }
    }

    explicit Knn(const nlohmann::json& j) {
        feature_names_ = j.at("features").get<std::vector<std::string>>();
        k_ = j.at("k").get<int>();
        labels_ = j.at("labels").get<std::vector<int>>();
        for (const auto& row : j.at("rows")) rows_.push_back(row.get<std::vector<std::uint8_t>>());
    }

    Algo algo() const override { return Algo::knn; }

    Prediction predict(std::span<const int> bits) const override {
        require_width(bits, feature_names_.size());
        // Hamming distances; partial sort keeps (distance, index) order so
        // distance ties resolve toward earlier training rows.
        std::vector<std::pair<int, std::size_t>> dist(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            int d = 0;
            for (std::size_t f = 0; f < bits.size(); ++f) d += (bits[f] != 0) != (rows_[r][f] != 0);
            dist[r] = {d, r};
        }
        std::partial_sort(dist.begin(), dist.begin() + k_, dist.end());
        double malicious = 0;
        for (int i = 0; i < k_; ++i) malicious += labels_[dist[static_cast<std::size_t>(i)].second];
        const double score = malicious / static_cast<double>(k_);
        return {label_of(score), score};
    }

    nlohmann::json to_json() const override {
        auto rows = nlohmann::json::array();
        for (const auto& row : rows_) rows.push_back(row);
        return {{"algorithm", "knn"}, {"features", feature_names_}, {"k", k_}, {"labels", labels_},
                {"rows", rows}};
    }

private:
    int k_ = 5;
    std::vector<std::vector<std::uint8_t>> rows_;
    std::vector<int> labels_;
};

}  // namespace

Algo algo_from_string(std::string_view name) {
    if (name == "nb") return Algo::naive_bayes;
    if (name == "lr") return Algo::logistic_regression;
    if (name == "dt") return Algo::decision_tree;
    if (name == "knn") return Algo::knn;
    throw Error(ErrKind::UsageError, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view algo_name(Algo algo) {
    switch (algo) {
        case Algo::naive_bayes: return "nb";
        case Algo::logistic_regression: return "lr";
        case Algo::decision_tree: return "dt";
        case Algo::knn: return "knn";
    }
    return "nb";
}

std::unique_ptr<Classifier> train(Algo algo, const Dataset& ds, const TrainOptions& opts) {
    require_binary_training_set(ds);
    switch (algo) {
        case Algo::naive_bayes: return std::make_unique<NaiveBayes>(ds, opts);
        case Algo::logistic_regression: return std::make_unique<LogisticRegression>(ds, opts);
        case Algo::decision_tree: return std::make_unique<DecisionTree>(ds, opts);
        case Algo::knn: return std::make_unique<Knn>(ds, opts);
    }
    throw Error(ErrKind::Internal, "unreachable algorithm tag");
}

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
    const auto tag = j.at("algorithm").get<std::string>();
    if (tag == "nb") return std::make_unique<NaiveBayes>(j);
    if (tag == "lr") return std::make_unique<LogisticRegression>(j);
    if (tag == "dt") return std::make_unique<DecisionTree>(j);
    if (tag == "knn") return std::make_unique<Knn>(j);
    throw Error(ErrKind::IoError, "unknown algorithm tag '" + tag + "' in model file");
}

void Classifier::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + path.string());
    out << to_json().dump(2) << '\n';
}

std::unique_ptr<Classifier> load_classifier(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrKind::IoError, "model parse: " + std::string(e.what()));
    }
    return classifier_from_json(j);
}

const std::vector<double>& last_lr_loss_curve() { return lr_loss_curve_storage(); }

// --- extra trees -------------------------------------------------------------

namespace {

struct ExtraTreesBuilder {
    const Dataset& ds;
    std::vector<double>& importance;
    Rng& rng;
    std::size_t subset_size;

    void build(const std::vector<std::size_t>& rows) {
        double ones = 0;
        for (std::size_t r : rows) ones += ds.labels[r];
        if (ones == 0 || ones == static_cast<double>(rows.size())) return;

        const std::size_t d = ds.num_features();
        // random feature subset via partial Fisher-Yates
        std::vector<std::size_t> features(d);
        for (std::size_t i = 0; i < d; ++i) features[i] = i;
        for (std::size_t i = 0; i < subset_size; ++i)
            std::swap(features[i], features[i + rng.uniform_below(d - i)]);
        features.resize(subset_size);

        std::vector<int> labels, high, low;
        for (std::size_t r : rows) labels.push_back(ds.labels[r]);
        const double h = entropy(labels);

        double best_gain = 0;
        std::vector<std::size_t> best_features;  // all features tied at the max gain
        for (std::size_t f : features) {
            high.clear();
            low.clear();
            for (std::size_t r : rows) (ds.rows[r][f] == 1.0 ? high : low).push_back(ds.labels[r]);
            if (high.empty() || low.empty()) continue;
            const double n = static_cast<double>(rows.size());
            const double gain = h - (static_cast<double>(high.size()) / n) * entropy(high) -
                                (static_cast<double>(low.size()) / n) * entropy(low);
            if (gain <= 0) continue;
            if (gain > best_gain + 1e-12) {
                best_gain = gain;
                best_features = {f};
            } else if (gain > best_gain - 1e-12) {
                best_features.push_back(f);
            }
        }
        if (best_features.empty()) return;

        // exact gain ties (common with duplicated columns) break randomly so
        // identical features share importance over the ensemble
        const std::size_t chosen = best_features[rng.uniform_below(best_features.size())];
        importance[chosen] +=
            best_gain * static_cast<double>(rows.size()) / static_cast<double>(ds.size());

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows)
            (ds.rows[r][chosen] == 1.0 ? right_rows : left_rows).push_back(r);
        build(left_rows);
        build(right_rows);
    }
};

}  // namespace

FeatureRanking rank_features(const Dataset& ds, int n_trees, std::uint64_t seed) {
    require_binary_training_set(ds);
    const std::size_t d = ds.num_features();
    std::vector<double> importance(d, 0.0);
    const auto subset_size =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));

    std::vector<std::size_t> all(ds.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (int t = 0; t < n_trees; ++t) {
        Rng rng(derive_seed(seed, "extra_trees", static_cast<std::uint64_t>(t)));
        ExtraTreesBuilder builder{ds, importance, rng, subset_size};
        builder.build(all);
    }

    double total = 0;
    for (double v : importance) total += v;
    if (total == 0) {
        // nothing informative anywhere: fall back to uniform importances
        std::fill(importance.begin(), importance.end(), 1.0 / static_cast<double>(d));
        total = 1.0;
    }

    FeatureRanking ranking;
    for (std::size_t f = 0; f < d; ++f)
        ranking.entries.emplace_back(ds.feature_names[f], importance[f] / total);
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranking;
}

std::vector<std::string> select_top(const FeatureRanking& ranking, std::size_t m) {
    if (m > ranking.entries.size())
        throw Error(ErrKind::UsageError, "cannot select " + std::to_string(m) + " of " +
                                             std::to_string(ranking.entries.size()) + " features");
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back(ranking.entries[i].first);
    return names;
}

Dataset select_features(const Dataset& ds, const std::vector<std::string>& names) {
    std::vector<std::size_t> cols;
    for (const auto& name : names) {
        const auto it = std::find(ds.feature_names.begin(), ds.feature_names.end(), name);
        if (it == ds.feature_names.end())
            throw Error(ErrKind::MissingFeature, "feature '" + name + "' not in dataset");
        cols.push_back(static_cast<std::size_t>(it - ds.feature_names.begin()));
    }
    Dataset out;
    out.feature_names = names;
    out.ids = ds.ids;
    out.labels = ds.labels;
    out.rows.reserve(ds.size());
    for (const auto& row : ds.rows) {
        std::vector<double> projected;
        projected.reserve(cols.size());
        for (std::size_t c : cols) projected.push_back(row[c]);
        out.rows.push_back(std::move(projected));
    }
    return out;
}

}  // namespace evmscan
