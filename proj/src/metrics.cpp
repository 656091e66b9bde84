// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "evmscan/error.hpp"

namespace evmscan {

namespace {

std::string cell(const std::optional<double>& v) {
    if (!v) return "N/A";
    std::ostringstream os;
    os << *v;
    return os.str();
}

}  // namespace

Metrics score(std::span<const int> predictions, std::span<const int> truths) {
    if (predictions.empty()) throw Error(ErrKind::EmptyInput, "no predictions to score");
    if (predictions.size() != truths.size())
        throw Error(ErrKind::LengthMismatch, "predictions/truths length mismatch");

    Metrics m;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (truths[i] == 1)
            ++(predictions[i] == 1 ? m.tp : m.fn);
        else
            ++(predictions[i] == 1 ? m.fp : m.tn);
    }
    const auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.tpr = ratio(m.tp, m.tp + m.fn);
    m.fpr = ratio(m.fp, m.fp + m.tn);
    m.precision = ratio(m.tp, m.tp + m.fp);
    m.accuracy = ratio(m.tp + m.tn, m.tp + m.tn + m.fp + m.fn);
    if (m.precision && m.tpr && (*m.precision + *m.tpr) > 0)
        m.f1 = 2 * *m.precision * *m.tpr / (*m.precision + *m.tpr);
    return m;
}

nlohmann::json Metrics::to_json() const {
    const auto field = [](const std::optional<double>& v) -> nlohmann::json {
        if (!v) return "N/A";
        return *v;
    };
    return {{"confusion", {{"tp", tp}, {"fp", fp}, {"tn", tn}, {"fn", fn}}},
            {"tpr", field(tpr)},
            {"fpr", field(fpr)},
            {"precision", field(precision)},
            {"accuracy", field(accuracy)},
            {"f1", field(f1)}};
}

BaselineRow forta_baseline() {
    BaselineRow row;
    row.name = "Forta";
    row.tpr = 0.59;
    row.precision = 0.88;
    return row;
}

std::string compare_report(const std::string& our_name, const Metrics& ours,
                           std::span<const BaselineRow> baselines) {
    std::ostringstream os;
    os << "method,tpr,fpr,precision,accuracy,f1\n";
    os << our_name << ',' << cell(ours.tpr) << ',' << cell(ours.fpr) << ',' << cell(ours.precision)
       << ',' << cell(ours.accuracy) << ',' << cell(ours.f1) << '\n';
    for (const auto& row : baselines)
        os << row.name << ',' << cell(row.tpr) << ',' << cell(row.fpr) << ',' << cell(row.precision)
           << ',' << cell(row.accuracy) << ',' << cell(row.f1) << '\n';
    return os.str();
}

void emit_contribution_chart(const Explanation& e, const std::filesystem::path& svg_path) {
    if (e.entries.empty()) throw Error(ErrKind::EmptyInput, "explanation has no entries to plot");

    auto csv_path = svg_path;
    csv_path.replace_extension(".csv");
    {
        std::ofstream csv(csv_path);
        if (!csv) throw Error(ErrKind::IoError, "cannot write " + csv_path.string());
        csv << "feature,signed_contribution\n";
        for (const auto& entry : e.entries)
            csv << entry.feature << ','
                << (entry.supports_malicious ? entry.contribution : -entry.contribution) << '\n';
    }

    double max_abs = 0;
    for (const auto& entry : e.entries) max_abs = std::max(max_abs, entry.contribution);
    if (max_abs == 0) max_abs = 1;  // all-zero contributions still render

    const int bar_width = 40, gap = 16, margin = 60;
    const int half_height = 160;
    const int width = margin * 2 + static_cast<int>(e.entries.size()) * (bar_width + gap);
    const int height = margin * 2 + half_height * 2;
    const int axis_y = margin + half_height;

    std::ofstream out(svg_path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + svg_path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\">\n";
    out << "  <line x1=\"" << margin / 2 << "\" y1=\"" << axis_y << "\" x2=\"" << width - margin / 2
        << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
    int x = margin;
    for (const auto& entry : e.entries) {
        const double signed_value =
            entry.supports_malicious ? entry.contribution : -entry.contribution;
        const int bar = static_cast<int>(std::lround(std::abs(signed_value) / max_abs * half_height));
        const int y = signed_value >= 0 ? axis_y - bar : axis_y;
        const char* fill = entry.supports_malicious ? "#3366cc" : "#e899b0";
        out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_width << "\" height=\""
            << bar << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << x + bar_width / 2 << "\" y=\"" << height - margin / 3
            << "\" font-size=\"10\" text-anchor=\"middle\" transform=\"rotate(-45 "
            << x + bar_width / 2 << ' ' << height - margin / 3 << ")\">" << entry.feature
            << "</text>\n";
        x += bar_width + gap;
    }
    out << "</svg>\n";
    if (!out) throw Error(ErrKind::IoError, "write failed for " + svg_path.string());
}

}  // namespace evmscan
