// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Single binary driving the detection pipeline: featurize bytecode, split,
// balance, bin, rank, train, evaluate, explain, and scan single contracts.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "evmscan/binning.hpp"
#include "evmscan/disasm.hpp"
#include "evmscan/error.hpp"
#include "evmscan/metrics.hpp"
#include "evmscan/pipeline.hpp"
#include "evmscan/rng.hpp"

using namespace evmscan;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string hex_input(const std::string& hex, const std::string& file) {
    if (!hex.empty()) return hex;
    if (!file.empty()) return read_file(file);
    throw Error(ErrKind::UsageError, "provide --hex or --file");
}

void print_explanation(const Explanation& e) {
    std::cout << "feature,actual_bit,supported_class,contribution\n";
    for (const auto& entry : e.entries)
        std::cout << entry.feature << ',' << entry.actual_bit << ','
                  << (entry.supports_malicious ? "Malicious" : "Legitimate") << ','
                  << entry.contribution << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evmscan: explainable malicious smart contract detection from EVM bytecode"};
    app.require_subcommand(1);

    // --- disasm ---
    auto* disasm_cmd = app.add_subcommand("disasm", "Disassemble hex bytecode to canonical opcodes");
    std::string hex, file;
    disasm_cmd->add_option("--hex", hex, "hex string (optional 0x prefix)");
    disasm_cmd->add_option("--file", file, "file containing hex text");

    // --- featurize ---
    auto* feat_cmd = app.add_subcommand("featurize", "Build a frequency CSV from a bytecode dir");
    std::string feat_dir, feat_manifest, feat_out;
    feat_cmd->add_option("--dir", feat_dir, "directory of hex bytecode files")->required();
    feat_cmd->add_option("--manifest", feat_manifest, "JSON {file: label}")->required();
    feat_cmd->add_option("--out", feat_out, "output CSV")->required();

    // --- split ---
    auto* split_cmd = app.add_subcommand("split", "Stratified train/test split");
    std::string split_in, split_train, split_test;
    SplitSpec split_spec;
    split_cmd->add_option("--in", split_in)->required();
    split_cmd->add_option("--train-out", split_train)->required();
    split_cmd->add_option("--test-out", split_test)->required();
    split_cmd->add_option("--malicious-fraction", split_spec.malicious_train_fraction);
    split_cmd->add_option("--legitimate-fraction", split_spec.legitimate_train_fraction);
    split_cmd->add_option("--seed", split_spec.seed);

    // --- smote ---
    auto* smote_cmd = app.add_subcommand("smote", "Oversample the malicious class");
    std::string smote_in, smote_out;
    SmoteConfig smote_cfg;
    std::size_t smote_target = 0, smote_rate = 0;
    smote_cmd->add_option("--in", smote_in)->required();
    smote_cmd->add_option("--out", smote_out)->required();
    smote_cmd->add_option("--k", smote_cfg.k_neighbors, "nearest neighbours per sample");
    smote_cmd->add_option("--target-count", smote_target, "desired minority total");
    smote_cmd->add_option("--rate", smote_rate, "synthetic samples per minority sample");
    smote_cmd->add_option("--seed", smote_cfg.seed);

    // --- bin ---
    auto* bin_cmd = app.add_subcommand("bin", "Fit and/or apply the entropy binning model");
    std::string bin_in, bin_model, bin_out;
    bool bin_fit = false;
    bin_cmd->add_option("--in", bin_in)->required();
    bin_cmd->add_option("--model", bin_model, "binning model JSON")->required();
    bin_cmd->add_flag("--fit", bin_fit, "fit the model on --in before applying");
    bin_cmd->add_option("--out", bin_out, "binarized CSV");

    // --- rank ---
    auto* rank_cmd = app.add_subcommand("rank", "Extra-trees feature importance ranking");
    std::string rank_in, rank_out;
    int rank_trees = 200;
    std::uint64_t rank_seed = 0;
    rank_cmd->add_option("--in", rank_in)->required();
    rank_cmd->add_option("--out", rank_out)->required();
    rank_cmd->add_option("--trees", rank_trees);
    rank_cmd->add_option("--seed", rank_seed);

    // --- train ---
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on binary features");
    std::string train_in, train_algo = "lr", train_model_out;
    TrainOptions train_opts;
    train_cmd->add_option("--in", train_in)->required();
    train_cmd->add_option("--algo", train_algo, "nb|lr|dt|knn");
    train_cmd->add_option("--seed", train_opts.seed);
    train_cmd->add_option("--model-out", train_model_out)->required();
    train_cmd->add_option("--lr-rate", train_opts.lr_learning_rate);
    train_cmd->add_option("--lr-epochs", train_opts.lr_epochs);
    train_cmd->add_option("--lr-l2", train_opts.lr_l2);
    train_cmd->add_option("--dt-max-depth", train_opts.dt_max_depth);
    train_cmd->add_option("--knn-k", train_opts.knn_k);
    train_cmd->add_option("--nb-alpha", train_opts.nb_alpha);

    // --- eval ---
    auto* eval_cmd = app.add_subcommand("eval", "Score a model on a labeled binary CSV");
    std::string eval_in, eval_model, eval_out;
    bool eval_compare = false;
    eval_cmd->add_option("--in", eval_in)->required();
    eval_cmd->add_option("--model", eval_model)->required();
    eval_cmd->add_option("--out", eval_out, "metrics CSV (stdout if omitted)");
    eval_cmd->add_flag("--compare", eval_compare, "include the Forta baseline row");

    // --- explain ---
    auto* explain_cmd = app.add_subcommand("explain", "LIME explanation for one dataset row");
    std::string explain_in, explain_model, explain_background, explain_out;
    std::size_t explain_row = 0;
    LimeConfig explain_lime;
    explain_cmd->add_option("--in", explain_in)->required();
    explain_cmd->add_option("--model", explain_model)->required();
    explain_cmd->add_option("--row", explain_row, "row index to explain");
    explain_cmd->add_option("--background", explain_background, "lime_background.json");
    explain_cmd->add_option("--perturbations", explain_lime.n_perturbations);
    explain_cmd->add_option("--kernel-width", explain_lime.kernel_width);
    explain_cmd->add_option("--seed", explain_lime.seed);
    explain_cmd->add_option("--out", explain_out, "output stem (.json/.table.csv/.svg)");

    // --- scan ---
    auto* scan_cmd = app.add_subcommand("scan", "Classify and explain one contract");
    std::string scan_model, scan_binning, scan_background, scan_hex, scan_file;
    LimeConfig scan_lime;
    scan_cmd->add_option("--model", scan_model)->required();
    scan_cmd->add_option("--binning", scan_binning)->required();
    scan_cmd->add_option("--background", scan_background, "lime_background.json");
    scan_cmd->add_option("--hex", scan_hex, "hex bytecode");
    scan_cmd->add_option("--file", scan_file, "file containing hex bytecode");
    scan_cmd->add_option("--perturbations", scan_lime.n_perturbations);
    scan_cmd->add_option("--seed", scan_lime.seed);

    // --- run ---
    auto* run_cmd = app.add_subcommand("run", "Full pipeline from one config");
    std::string run_config;
    std::string run_input_csv, run_out_dir, run_algo;
    std::uint64_t run_seed = 0;
    run_cmd->add_option("--config", run_config, "config JSON");
    auto* run_in_opt = run_cmd->add_option("--input-csv", run_input_csv);
    auto* run_out_opt = run_cmd->add_option("--out-dir", run_out_dir);
    auto* run_algo_opt = run_cmd->add_option("--algo", run_algo, "nb|lr|dt|knn");
    auto* run_seed_opt = run_cmd->add_option("--seed", run_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // any parse failure is a usage error
    }

    try {
        if (*disasm_cmd) {
            for (int op : disassemble(decode_hex(hex_input(hex, file))))
                std::cout << canonical_name(op) << '\n';
        } else if (*feat_cmd) {
            save_csv(build_from_bytecode_dir(feat_dir, load_manifest(feat_manifest)), feat_out);
        } else if (*split_cmd) {
            auto [train_ds, test_ds] = stratified_split(load_csv(split_in), split_spec);
            save_csv(train_ds, split_train);
            save_csv(test_ds, split_test);
        } else if (*smote_cmd) {
            if (smote_target) smote_cfg.target_count = smote_target;
            if (smote_rate) smote_cfg.sampling_rate = smote_rate;
            save_csv(balance_with_smote(load_csv(smote_in), smote_cfg), smote_out);
        } else if (*bin_cmd) {
            const auto ds = load_csv(bin_in);
            BinningModel model;
            if (bin_fit) {
                model = fit_binning(ds);
                model.save(bin_model);
            } else {
                model = BinningModel::load(bin_model);
            }
            if (!bin_out.empty()) save_csv(transform_dataset(ds, model), bin_out);
        } else if (*rank_cmd) {
            const auto ranking = rank_features(load_csv(rank_in), rank_trees, rank_seed);
            std::ofstream out(rank_out);
            if (!out) throw Error(ErrKind::IoError, "cannot write " + rank_out);
            out << "feature,importance\n";
            for (const auto& [name, importance] : ranking.entries)
                out << name << ',' << importance << '\n';
        } else if (*train_cmd) {
            const auto model = train(algo_from_string(train_algo), load_csv(train_in), train_opts);
            model->save(train_model_out);
        } else if (*eval_cmd) {
            const auto ds = load_csv(eval_in);
            const auto model = load_classifier(eval_model);
            std::vector<int> predictions, x(ds.num_features());
            for (const auto& row : ds.rows) {
                for (std::size_t f = 0; f < x.size(); ++f) x[f] = row[f] == 1.0 ? 1 : 0;
                predictions.push_back(model->predict(x).label);
            }
            const auto metrics = score(predictions, ds.labels);
            std::vector<BaselineRow> baselines;
            if (eval_compare) baselines.push_back(forta_baseline());
            const auto report = compare_report("evmscan", metrics, baselines);
            if (eval_out.empty())
                std::cout << report;
            else {
                std::ofstream out(eval_out);
                if (!out) throw Error(ErrKind::IoError, "cannot write " + eval_out);
                out << report;
            }
        } else if (*explain_cmd) {
            const auto ds = load_csv(explain_in);
            const auto model = load_classifier(explain_model);
            if (explain_row >= ds.size())
                throw Error(ErrKind::UsageError, "--row out of range");
            std::vector<double> marginals(ds.num_features(), 0.5);
            if (!explain_background.empty()) {
                nlohmann::json bg = nlohmann::json::parse(read_file(explain_background));
                for (std::size_t f = 0; f < ds.num_features(); ++f)
                    if (bg.contains(ds.feature_names[f]))
                        marginals[f] = bg[ds.feature_names[f]].get<double>();
            }
            std::vector<int> x(ds.num_features());
            for (std::size_t f = 0; f < x.size(); ++f)
                x[f] = ds.rows[explain_row][f] == 1.0 ? 1 : 0;
            const auto e =
                fit_surrogate(*model, x, explain_lime, marginals, ds.ids[explain_row]);
            if (explain_out.empty()) {
                print_explanation(e);
            } else {
                std::ofstream out(explain_out + ".json");
                out << e.to_json().dump(2) << '\n';
                e.write_csv(explain_out + ".table.csv");
                emit_contribution_chart(e, explain_out + ".svg");
            }
            std::cout << "verdict: " << to_string(aggregate_verdict(e)) << '\n';
        } else if (*scan_cmd) {
            const auto result = scan(scan_model, scan_binning, hex_input(scan_hex, scan_file),
                                     scan_lime, scan_background);
            std::cout << "verdict: " << to_string(result.verdict)
                      << " (score " << result.prediction.score << ")\n";
            print_explanation(result.explanation);
        } else if (*run_cmd) {
            RunConfig cfg;
            if (!run_config.empty()) cfg = RunConfig::load(run_config);
            if (*run_in_opt) cfg.input_csv = run_input_csv;  // flags win over the config file
            if (*run_out_opt) cfg.out_dir = run_out_dir;
            if (*run_algo_opt) cfg.algorithm = run_algo;
            if (*run_seed_opt) cfg.seed = run_seed;
            const auto summary = run_pipeline(cfg);
            std::cout << summary.dump(2) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
