// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/explain.hpp"

#include <cmath>
#include <fstream>

#include "evmscan/error.hpp"
#include "evmscan/rng.hpp"

namespace evmscan {

namespace {

// Solves A beta = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14)
            throw Error(ErrKind::SingularSystem, "degenerate perturbation matrix");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double sum = b[row];
        for (std::size_t c = row + 1; c < n; ++c) sum -= a[row][c] * x[c];
        x[row] = sum / a[row][row];
    }
    return x;
}

}  // namespace

std::vector<std::vector<int>> perturb(std::span<const int> x, const LimeConfig& cfg,
                                      std::span<const double> marginals) {
    if (x.size() != marginals.size())
        throw Error(ErrKind::DimensionMismatch, "instance/marginals dimensionality differs");
    std::vector<std::vector<int>> samples;
    samples.reserve(cfg.n_perturbations);
    samples.emplace_back(x.begin(), x.end());
    Rng rng(derive_seed(cfg.seed, "lime_perturb"));
    for (std::size_t s = 1; s < cfg.n_perturbations; ++s) {
        std::vector<int> z(x.size());
        for (std::size_t f = 0; f < x.size(); ++f) z[f] = rng.uniform() < marginals[f] ? 1 : 0;
        samples.push_back(std::move(z));
    }
    return samples;
}

double proximity(std::span<const int> x, std::span<const int> z, double sigma) {
    if (x.size() != z.size())
        throw Error(ErrKind::DimensionMismatch, "proximity arguments differ in dimension");
    double sq = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - z[i]) * (x[i] - z[i]);
    return std::exp(-sq / (sigma * sigma));
}

std::vector<double> feature_marginals(const Dataset& ds) {
    std::vector<double> marginals(ds.num_features(), 0.0);
    if (ds.size() == 0) throw Error(ErrKind::EmptyInput, "marginals of an empty dataset");
    for (const auto& row : ds.rows)
        for (std::size_t f = 0; f < marginals.size(); ++f) marginals[f] += row[f];
    for (auto& m : marginals) m /= static_cast<double>(ds.size());
    return marginals;
}

Explanation fit_surrogate(const Classifier& model, std::span<const int> x, const LimeConfig& cfg,
                          std::span<const double> marginals, const std::string& instance_id) {
    const std::size_t d = x.size();
    if (cfg.n_perturbations < d + 1)
        throw Error(ErrKind::SingularSystem,
                    "need at least " + std::to_string(d + 1) + " perturbations for " +
                        std::to_string(d) + " features");
    const double sigma =
        cfg.kernel_width > 0 ? cfg.kernel_width : 0.75 * std::sqrt(static_cast<double>(d));

    const auto samples = perturb(x, cfg, marginals);

    // weighted least squares on (z, f(z)) via normal equations; index 0 is
    // the intercept; small ridge term keeps the system well posed
    const std::size_t n = d + 1;
    std::vector<std::vector<double>> ata(n, std::vector<double>(n, 0.0));
    std::vector<double> atb(n, 0.0);
    std::vector<double> design(n);
    for (const auto& z : samples) {
        const double w = proximity(x, z, sigma);
        const double y = model.predict(z).score;
        design[0] = 1.0;
        for (std::size_t f = 0; f < d; ++f) design[f + 1] = z[f];
        for (std::size_t i = 0; i < n; ++i) {
            if (design[i] == 0) continue;
            atb[i] += w * design[i] * y;
            for (std::size_t j = 0; j < n; ++j) ata[i][j] += w * design[i] * design[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) ata[i][i] += 1e-8;
    const auto beta = solve_linear(std::move(ata), std::move(atb));

    Explanation e;
    e.instance_id = instance_id;
    e.predicted_label = model.predict(x).label;
    e.intercept = beta[0];
    const auto& names = model.feature_names();
    for (std::size_t f = 0; f < d; ++f) {
        // signed term: weight pushes toward malicious when the instance has
        // the bit set, away when it does not
        const double term = beta[f + 1] * (2.0 * x[f] - 1.0);
        e.entries.push_back({names[f], x[f], term > 0, std::abs(term)});
    }
    return e;
}

double Explanation::surrogate_at_instance() const {
    // only set bits contribute weight * bit; for a set bit the signed term
    // equals the raw surrogate weight
    double score = intercept;
    for (const auto& entry : entries)
        if (entry.actual_bit)
            score += entry.supports_malicious ? entry.contribution : -entry.contribution;
    return score;
}

std::string_view to_string(Verdict v) { return v == Verdict::malicious ? "Malicious" : "Legitimate"; }

Verdict aggregate_verdict(const Explanation& e) {
    if (e.entries.empty()) throw Error(ErrKind::EmptyInput, "cannot aggregate an empty explanation");
    double malicious = 0, legitimate = 0;
    for (const auto& entry : e.entries)
        (entry.supports_malicious ? malicious : legitimate) += entry.contribution;
    if (malicious > legitimate) return Verdict::malicious;
    if (legitimate > malicious) return Verdict::legitimate;
    return e.predicted_label == 1 ? Verdict::malicious : Verdict::legitimate;
}

nlohmann::json Explanation::to_json() const {
    auto entries_json = nlohmann::json::array();
    for (const auto& entry : entries)
        entries_json.push_back({{"feature", entry.feature},
                                {"actual_bit", entry.actual_bit},
                                {"supported_class", entry.supports_malicious ? "Malicious" : "Legitimate"},
                                {"contribution", entry.contribution}});
    return {{"instance_id", instance_id},
            {"predicted_label", predicted_label},
            {"intercept", intercept},
            {"entries", entries_json},
            {"aggregate_verdict", std::string(to_string(aggregate_verdict(*this)))}};
}

void Explanation::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + path.string());
    out << "feature,actual_bit,supported_class,contribution\n";
    for (const auto& entry : entries)
        out << entry.feature << ',' << entry.actual_bit << ','
            << (entry.supports_malicious ? "Malicious" : "Legitimate") << ',' << entry.contribution
            << '\n';
}

}  // namespace evmscan
