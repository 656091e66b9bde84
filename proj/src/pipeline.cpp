// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "evmscan/binning.hpp"
#include "evmscan/disasm.hpp"
#include "evmscan/error.hpp"
#include "evmscan/metrics.hpp"
#include "evmscan/rng.hpp"

namespace evmscan {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

// Synthetic rows interpolated between bit vectors are real-valued; round
// back to bits so the classifiers see strictly binary features.
void round_to_bits(Dataset& ds) {
    for (auto& row : ds.rows)
        for (auto& v : row) v = v >= 0.5 ? 1.0 : 0.0;
}

Explanation explain_instance(const Classifier& model, const Dataset& bits, std::size_t row,
                             const LimeConfig& lime, std::span<const double> marginals) {
    std::vector<int> x(bits.rows[row].size());
    for (std::size_t f = 0; f < x.size(); ++f) x[f] = bits.rows[row][f] == 1.0 ? 1 : 0;
    return fit_surrogate(model, x, lime, marginals, bits.ids[row]);
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j{{"input_csv", input_csv.string()},
                     {"bytecode_dir", bytecode_dir.string()},
                     {"manifest", manifest.string()},
                     {"out_dir", out_dir.string()},
                     {"seed", seed},
                     {"malicious_train_fraction", malicious_train_fraction},
                     {"legitimate_train_fraction", legitimate_train_fraction},
                     {"smote_k", smote_k},
                     {"smote_after_binning", smote_after_binning},
                     {"algorithm", algorithm},
                     {"top_m", top_m},
                     {"extra_trees", extra_trees},
                     {"lime_perturbations", lime_perturbations},
                     {"lime_kernel_width", lime_kernel_width},
                     {"nb_alpha", train_options.nb_alpha},
                     {"lr_learning_rate", train_options.lr_learning_rate},
                     {"lr_epochs", train_options.lr_epochs},
                     {"lr_l2", train_options.lr_l2},
                     {"dt_max_depth", train_options.dt_max_depth},
                     {"dt_min_leaf", train_options.dt_min_leaf},
                     {"knn_k", train_options.knn_k}};
    if (smote_target_count) j["smote_target_count"] = *smote_target_count;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    std::string input_csv_s, bytecode_dir_s, manifest_s, out_dir_s = "out";
    get("input_csv", input_csv_s);
    get("bytecode_dir", bytecode_dir_s);
    get("manifest", manifest_s);
    get("out_dir", out_dir_s);
    cfg.input_csv = input_csv_s;
    cfg.bytecode_dir = bytecode_dir_s;
    cfg.manifest = manifest_s;
    cfg.out_dir = out_dir_s;
    get("seed", cfg.seed);
    get("malicious_train_fraction", cfg.malicious_train_fraction);
    get("legitimate_train_fraction", cfg.legitimate_train_fraction);
    get("smote_k", cfg.smote_k);
    get("smote_after_binning", cfg.smote_after_binning);
    get("algorithm", cfg.algorithm);
    get("top_m", cfg.top_m);
    get("extra_trees", cfg.extra_trees);
    get("lime_perturbations", cfg.lime_perturbations);
    get("lime_kernel_width", cfg.lime_kernel_width);
    get("nb_alpha", cfg.train_options.nb_alpha);
    get("lr_learning_rate", cfg.train_options.lr_learning_rate);
    get("lr_epochs", cfg.train_options.lr_epochs);
    get("lr_l2", cfg.train_options.lr_l2);
    get("dt_max_depth", cfg.train_options.dt_max_depth);
    get("dt_min_leaf", cfg.train_options.dt_min_leaf);
    get("knn_k", cfg.train_options.knn_k);
    if (j.contains("smote_target_count"))
        cfg.smote_target_count = j.at("smote_target_count").get<std::size_t>();
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrKind::IoError, "config parse: " + std::string(e.what()));
    }
    return from_json(j);
}

std::string RunConfig::hash() const {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(to_json().dump())));
    return buf;
}

nlohmann::json run_pipeline(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string config_hash = cfg.hash();

    const auto stage_error = [](const char* stage, const Error& e) -> Error {
        return Error(e.kind(), std::string("stage ") + stage + ": " + e.what());
    };

    // featurize / load
    Dataset full;
    try {
        if (!cfg.input_csv.empty())
            full = load_csv(cfg.input_csv);
        else if (!cfg.bytecode_dir.empty() && !cfg.manifest.empty())
            full = build_from_bytecode_dir(cfg.bytecode_dir, load_manifest(cfg.manifest));
        else
            throw Error(ErrKind::UsageError, "need input_csv or bytecode_dir + manifest");
    } catch (const Error& e) {
        throw stage_error("featurize", e);
    }

    Dataset train_bits, test_bits;
    BinningModel binning;
    try {
        SplitSpec split_spec{cfg.malicious_train_fraction, cfg.legitimate_train_fraction, cfg.seed};
        auto [train, test] = stratified_split(full, split_spec);
        save_csv(train, cfg.out_dir / "split_train.csv");
        save_csv(test, cfg.out_dir / "split_test.csv");

        SmoteConfig smote_cfg;
        smote_cfg.k_neighbors = std::min(cfg.smote_k, train.count_label(1) - 1);
        smote_cfg.target_count = cfg.smote_target_count;
        smote_cfg.seed = derive_seed(cfg.seed, "stage_smote");

        if (cfg.smote_after_binning) {
            binning = fit_binning(train);
            Dataset balanced = balance_with_smote(transform_dataset(train, binning), smote_cfg);
            round_to_bits(balanced);
            save_csv(balanced, cfg.out_dir / "balanced_train.csv");
            train_bits = std::move(balanced);
        } else {
            Dataset balanced = balance_with_smote(train, smote_cfg);
            save_csv(balanced, cfg.out_dir / "balanced_train.csv");
            binning = fit_binning(balanced);
            train_bits = transform_dataset(balanced, binning);
        }
        binning.save(cfg.out_dir / "binning.json");
        test_bits = transform_dataset(test, binning);
    } catch (const Error& e) {
        throw stage_error("balance_and_bin", e);
    }

    std::vector<std::string> selected;
    try {
        const auto ranking =
            rank_features(train_bits, cfg.extra_trees, derive_seed(cfg.seed, "stage_rank"));
        std::ostringstream rank_csv;
        rank_csv << "feature,importance\n";
        for (const auto& [name, importance] : ranking.entries)
            rank_csv << name << ',' << importance << '\n';
        write_text(cfg.out_dir / "ranking.csv", rank_csv.str());
        selected = select_top(ranking, std::min(cfg.top_m, train_bits.num_features()));
        train_bits = select_features(train_bits, selected);
        test_bits = select_features(test_bits, selected);
    } catch (const Error& e) {
        throw stage_error("rank_select", e);
    }

    std::unique_ptr<Classifier> model;
    try {
        TrainOptions opts = cfg.train_options;
        opts.seed = derive_seed(cfg.seed, "stage_train");
        model = train(algo_from_string(cfg.algorithm), train_bits, opts);
        model->save(cfg.out_dir / "model.json");
    } catch (const Error& e) {
        throw stage_error("train", e);
    }

    Metrics metrics;
    try {
        std::vector<int> predictions, x(test_bits.num_features());
        for (const auto& row : test_bits.rows) {
            for (std::size_t f = 0; f < x.size(); ++f) x[f] = row[f] == 1.0 ? 1 : 0;
            predictions.push_back(model->predict(x).label);
        }
        metrics = score(predictions, test_bits.labels);
        const BaselineRow baselines[] = {forta_baseline()};
        write_text(cfg.out_dir / "comparison.csv",
                   compare_report("evmscan-" + cfg.algorithm, metrics, baselines));
    } catch (const Error& e) {
        throw stage_error("evaluate", e);
    }

    try {
        const auto marginals = feature_marginals(train_bits);
        nlohmann::json background = nlohmann::json::object();
        for (std::size_t f = 0; f < selected.size(); ++f) background[selected[f]] = marginals[f];
        write_json(cfg.out_dir / "lime_background.json", background);

        LimeConfig lime{cfg.lime_perturbations, cfg.lime_kernel_width,
                        derive_seed(cfg.seed, "stage_explain")};
        for (int label : {1, 0}) {
            std::size_t row = test_bits.size();
            for (std::size_t r = 0; r < test_bits.size(); ++r)
                if (test_bits.labels[r] == label) {
                    row = r;
                    break;
                }
            if (row == test_bits.size()) continue;
            const auto e = explain_instance(*model, test_bits, row, lime, marginals);
            const std::string stem = label ? "explanation_malicious" : "explanation_legitimate";
            write_json(cfg.out_dir / (stem + ".json"), e.to_json());
            e.write_csv(cfg.out_dir / (stem + ".table.csv"));
            emit_contribution_chart(e, cfg.out_dir / (stem + ".svg"));
        }
    } catch (const Error& e) {
        throw stage_error("explain", e);
    }

    nlohmann::json summary{{"config", cfg.to_json()},
                           {"config_hash", config_hash},
                           {"selected_features", selected},
                           {"train_size", train_bits.size()},
                           {"test_size", test_bits.size()},
                           {"metrics", metrics.to_json()}};
    write_json(cfg.out_dir / "summary.json", summary);
    return summary;
}

ScanResult scan(const std::filesystem::path& model_path, const std::filesystem::path& binning_path,
                const std::string& bytecode_hex, const LimeConfig& lime,
                const std::filesystem::path& background_path) {
    const auto model = load_classifier(model_path);
    const auto binning = BinningModel::load(binning_path);

    const auto fv = featurize_hex(bytecode_hex);
    if (fv.counts.size() != binning.feature_names.size())
        throw Error(ErrKind::MissingFeature, "binning model does not cover the opcode vocabulary");
    const std::vector<double> frequencies(fv.counts.begin(), fv.counts.end());
    const auto all_bits = transform(frequencies, binning);

    // project onto the model's (selected) feature order
    std::vector<int> x;
    std::vector<double> marginals;
    nlohmann::json background = nlohmann::json::object();
    if (!background_path.empty()) {
        std::ifstream in(background_path);
        if (!in) throw Error(ErrKind::MissingFile, "cannot open " + background_path.string());
        in >> background;
    }
    for (const auto& name : model->feature_names()) {
        const auto it =
            std::find(binning.feature_names.begin(), binning.feature_names.end(), name);
        if (it == binning.feature_names.end())
            throw Error(ErrKind::MissingFeature, "model feature '" + name + "' missing from binning");
        x.push_back(all_bits[static_cast<std::size_t>(it - binning.feature_names.begin())]);
        marginals.push_back(background.contains(name) ? background[name].get<double>() : 0.5);
    }

    ScanResult result{model->predict(x), Verdict::legitimate,
                      fit_surrogate(*model, x, lime, marginals, "scan")};
    result.verdict = result.prediction.label == 1 ? Verdict::malicious : Verdict::legitimate;
    return result;
}

}  // namespace evmscan
