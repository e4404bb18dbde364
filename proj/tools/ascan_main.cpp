// ascan: static scanner for malicious office-document and archive attachments.
// Subcommands wire the pipeline: extract -> train -> eval / calibrate / scan.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ascan/bytes.hpp"
#include "ascan/corpus.hpp"
#include "ascan/dnn.hpp"
#include "ascan/eval.hpp"
#include "ascan/featex.hpp"
#include "ascan/formats.hpp"
#include "ascan/gbt.hpp"
#include "ascan/mat.hpp"
#include "ascan/model_file.hpp"
#include "ascan/store.hpp"

namespace {

using namespace ascan;
using nlohmann::json;

constexpr double kTrainFraction = 0.7;
constexpr double kGbtValidationFraction = 0.1;

struct ToolConfig {
    dnn::TrainConfig dnn;
    gbt::GbtConfig gbt;
    featex::FeatureConfig features;
};

template <class T>
void maybe(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

ToolConfig load_tool_config(const std::string& path) {
    ToolConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json doc = json::parse(in);

    if (doc.contains("dnn")) {
        const json& d = doc["dnn"];
        maybe(d, "dropout", cfg.dnn.dropout);
        maybe(d, "minibatch", cfg.dnn.minibatch);
        maybe(d, "patience", cfg.dnn.patience);
        maybe(d, "max_epochs", cfg.dnn.max_epochs);
        maybe(d, "learning_rate", cfg.dnn.learning_rate);
        maybe(d, "beta1", cfg.dnn.beta1);
        maybe(d, "beta2", cfg.dnn.beta2);
        maybe(d, "adam_eps", cfg.dnn.adam_eps);
        maybe(d, "seed", cfg.dnn.seed);
        maybe(d, "validation_fraction", cfg.dnn.validation_fraction);
        maybe(d, "bn_momentum", cfg.dnn.bn_momentum);
    }
    if (doc.contains("gbt")) {
        const json& g = doc["gbt"];
        maybe(g, "max_depth", cfg.gbt.max_depth);
        maybe(g, "eta", cfg.gbt.eta);
        maybe(g, "subsample_rows", cfg.gbt.subsample_rows);
        maybe(g, "lambda", cfg.gbt.lambda);
        maybe(g, "min_child_hessian", cfg.gbt.min_child_hessian);
        maybe(g, "max_rounds", cfg.gbt.max_rounds);
        maybe(g, "patience_rounds", cfg.gbt.patience_rounds);
        maybe(g, "seed", cfg.gbt.seed);
    }
    if (doc.contains("features")) {
        const json& f = doc["features"];
        maybe(f, "window", cfg.features.window);
        maybe(f, "stride", cfg.features.stride);
        maybe(f, "string_log_buckets", cfg.features.string_log_buckets);
        maybe(f, "string_log1p", cfg.features.string_log1p);
    }
    return cfg;
}

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool skip_errors = false;
};

ToolConfig resolve_config(const CommonArgs& common) {
    ToolConfig cfg = load_tool_config(common.config_path);
    if (common.seed) {
        cfg.dnn.seed = *common.seed;
        cfg.gbt.seed = *common.seed;
    }
    return cfg;
}

int cmd_extract(const std::string& manifest_path, const std::string& mode,
                const std::string& out_path, const CommonArgs& common) {
    std::vector<corpus::SampleRecord> records;
    try {
        records = corpus::load_manifest(manifest_path);
    } catch (const Error& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return 2;
    }

    ToolConfig cfg;
    try {
        cfg = resolve_config(common);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::vector<featex::FeatureVector> vectors;
    std::vector<std::uint8_t> labels;
    std::vector<std::int64_t> timestamps;
    std::size_t indeterminate = 0, skipped = 0;

    for (const auto& rec : records) {
        if (rec.label == corpus::Label::Indeterminate) {
            ++indeterminate;
            continue;
        }
        try {
            const Bytes bytes = read_file(rec.path);
            featex::FeatureVector fv = mode == "archive"
                                           ? featex::archive_features(bytes, cfg.features)
                                           : featex::document_features(bytes, cfg.features);
            vectors.push_back(std::move(fv));
            labels.push_back(rec.label == corpus::Label::Malicious ? 1 : 0);
            timestamps.push_back(rec.first_seen);
        } catch (const std::exception& e) {
            std::cerr << "extract failed for " << rec.path << ": " << e.what() << "\n";
            if (!common.skip_errors) return 1;
            ++skipped;
        }
    }

    try {
        featex::write_feature_store(vectors, labels, timestamps, out_path);
    } catch (const std::exception& e) {
        std::cerr << "store write error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "extracted " << vectors.size() << " rows (" << indeterminate
              << " indeterminate skipped, " << skipped << " errors skipped)\n";
    return 0;
}

Mat rows_to_mat(const featex::FeatureStore& store, const std::vector<std::size_t>& idx) {
    Mat m(idx.size(), store.dim);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto& row = store.rows[idx[i]];
        for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
    }
    return m;
}

std::vector<double> scores_for(const model::ModelFile& mf, const featex::FeatureStore& store,
                               const std::vector<std::size_t>& idx) {
    if (mf.type == model::ModelType::Dnn) {
        const Mat x = rows_to_mat(store, idx);
        return dnn::forward(mf.dnn_model, x, dnn::Mode::Infer);
    }
    std::vector<double> scores(idx.size());
    std::vector<double> row(store.dim);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto& src = store.rows[idx[i]];
        for (std::size_t j = 0; j < src.size(); ++j) row[j] = src[j];
        scores[i] = gbt::predict(mf.gbt_model, row);
    }
    return scores;
}

int cmd_train(const std::string& store_path, const std::string& model_kind,
              const std::string& out_path, const CommonArgs& common) {
    try {
        const ToolConfig cfg = resolve_config(common);
        const featex::FeatureStore store = featex::read_feature_store(store_path);

        const corpus::IndexSplit split =
            corpus::time_split_indices(store.timestamps, kTrainFraction);

        model::ModelFile mf;
        mf.input_dim = store.dim;
        mf.mode = model::mode_for_dim(store.dim);
        mf.layout = model::layout_for_mode(mf.mode, store.dim);

        const Mat train_x = rows_to_mat(store, split.train);
        std::vector<double> train_y(split.train.size());
        std::vector<std::int64_t> train_ts(split.train.size());
        for (std::size_t i = 0; i < split.train.size(); ++i) {
            train_y[i] = store.labels[split.train[i]];
            train_ts[i] = store.timestamps[split.train[i]];
        }

        std::uint64_t seed = 0;
        if (model_kind == "dnn") {
            seed = cfg.dnn.seed;
            mf.type = model::ModelType::Dnn;
            mf.dnn_cfg = cfg.dnn;
            mf.dnn_model = dnn::init(store.dim, cfg.dnn.seed);
            dnn::train(mf.dnn_model, train_x, train_y, train_ts, cfg.dnn);
        } else {
            seed = cfg.gbt.seed;
            mf.type = model::ModelType::Gbt;
            mf.gbt_cfg = cfg.gbt;

            // Early-stopping validation: the temporally latest slice of train.
            std::vector<std::size_t> order(split.train.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return train_ts[a] < train_ts[b];
            });
            std::size_t n_val = static_cast<std::size_t>(
                std::floor(kGbtValidationFraction * static_cast<double>(order.size())));
            n_val = std::clamp<std::size_t>(n_val, 1, order.size() > 2 ? order.size() - 2 : 1);
            const std::size_t n_fit = order.size() - n_val;

            Mat fit_x(n_fit, store.dim), val_x(n_val, store.dim);
            std::vector<double> fit_y(n_fit), val_y(n_val);
            for (std::size_t i = 0; i < n_fit; ++i) {
                std::copy(train_x.row(order[i]).begin(), train_x.row(order[i]).end(),
                          fit_x.row(i).begin());
                fit_y[i] = train_y[order[i]];
            }
            for (std::size_t i = 0; i < n_val; ++i) {
                std::copy(train_x.row(order[n_fit + i]).begin(),
                          train_x.row(order[n_fit + i]).end(), val_x.row(i).begin());
                val_y[i] = train_y[order[n_fit + i]];
            }
            std::tie(mf.gbt_model, std::ignore) =
                gbt::train_gbt(fit_x, fit_y, cfg.gbt, &val_x, val_y);
        }

        mf.model_id = std::string(model::type_name(mf.type)) + "-" + model::mode_name(mf.mode) +
                      "-d" + std::to_string(store.dim) + "-s" + std::to_string(seed);

        const auto test_scores = scores_for(mf, store, split.test);
        std::vector<std::uint8_t> test_labels(split.test.size());
        for (std::size_t i = 0; i < split.test.size(); ++i)
            test_labels[i] = store.labels[split.test[i]];
        const eval::RocCurve roc = eval::roc_curve(test_scores, test_labels);
        std::printf("AUC %.4f\n", roc.auc);

        model::save(mf, out_path);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "train error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_eval(const std::string& store_path, const std::string& model_path,
             const std::string& roc_out) {
    try {
        const featex::FeatureStore store = featex::read_feature_store(store_path);
        const model::ModelFile mf = model::load(model_path);
        if (mf.input_dim != store.dim) {
            std::cerr << "dimension mismatch: store dim " << store.dim << ", model dim "
                      << mf.input_dim << "\n";
            return 1;
        }

        const corpus::IndexSplit split =
            corpus::time_split_indices(store.timestamps, kTrainFraction);
        const auto scores = scores_for(mf, store, split.test);
        std::vector<std::uint8_t> labels(split.test.size());
        for (std::size_t i = 0; i < split.test.size(); ++i)
            labels[i] = store.labels[split.test[i]];

        const eval::RocCurve roc = eval::roc_curve(scores, labels);
        eval::write_roc_csv(roc, roc_out);
        std::printf("AUC %.4f\n", roc.auc);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "eval error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_calibrate(const std::string& store_path, const std::string& model_path,
                  double target_fpr, const std::string& test_store_path,
                  const std::string& out_path) {
    try {
        const featex::FeatureStore store = featex::read_feature_store(store_path);
        const model::ModelFile mf = model::load(model_path);

        std::vector<std::size_t> benign_idx;
        for (std::size_t i = 0; i < store.rows.size(); ++i)
            if (store.labels[i] == 0) benign_idx.push_back(i);
        if (benign_idx.empty()) {
            std::cerr << "calibrate error: benign store has no benign rows\n";
            return 1;
        }

        const auto benign_scores = scores_for(mf, store, benign_idx);
        eval::CalibrationResult result;
        result.target_fpr = target_fpr;
        result.threshold = eval::threshold_at_fpr(benign_scores, target_fpr);
        std::size_t hits = 0;
        for (double s : benign_scores)
            if (s >= result.threshold) ++hits;
        result.achieved_fpr_on_benign =
            static_cast<double>(hits) / static_cast<double>(benign_scores.size());

        if (!test_store_path.empty()) {
            const featex::FeatureStore test = featex::read_feature_store(test_store_path);
            if (test.dim != store.dim) {
                std::cerr << "calibrate error: test store dim differs\n";
                return 1;
            }
            std::vector<std::size_t> mal_idx;
            for (std::size_t i = 0; i < test.rows.size(); ++i)
                if (test.labels[i] == 1) mal_idx.push_back(i);
            if (!mal_idx.empty()) {
                const auto mal_scores = scores_for(mf, test, mal_idx);
                result.tpr_on_test = eval::tpr_at_threshold(mal_scores, result.threshold);
            }
        }

        const std::string doc = eval::calibration_to_json(result);
        std::cout << doc << "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            out << doc << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "calibrate error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_scan(const std::string& file_path, const std::string& model_path, double threshold) {
    model::ModelFile mf;
    try {
        mf = model::load(model_path);
    } catch (const std::exception& e) {
        std::cerr << "scan error: " << e.what() << "\n";
        return 1;
    }

    Bytes bytes;
    try {
        bytes = read_file(file_path);
    } catch (const std::exception& e) {
        std::cerr << "scan error: " << e.what() << "\n";
        return 1;
    }

    const formats::FileFormat fmt = formats::detect_format(bytes);
    const char* fmt_name = fmt == formats::FileFormat::Ole2  ? "ole2"
                           : fmt == formats::FileFormat::Zip ? "zip"
                                                             : "other";

    featex::FeatureVector fv;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (mf.mode == model::FeatureMode::Archive) {
            fv = featex::archive_features(bytes);
        } else {
            if (fmt == formats::FileFormat::Other) {
                std::cerr << "scan error: unrecognized format for document mode\n";
                return 2;
            }
            fv = featex::document_features(bytes);
        }
    } catch (const Error& e) {
        std::cerr << "scan error: " << e.what() << "\n";
        return 2;
    }
    const auto t1 = std::chrono::steady_clock::now();

    double score = 0.0;
    try {
        score = model::score_row(mf, fv.values);
    } catch (const std::exception& e) {
        std::cerr << "scan error: " << e.what() << "\n";
        return 1;
    }
    const auto t2 = std::chrono::steady_clock::now();

    const bool malicious = score >= threshold;
    const auto ms = [](auto a, auto b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    json report{{"path", file_path},
                {"format", fmt_name},
                {"score", score},
                {"threshold", threshold},
                {"verdict", malicious ? "malicious" : "benign"},
                {"model_id", mf.model_id},
                {"feature_ms", ms(t0, t1)},
                {"inference_ms", ms(t1, t2)}};
    std::cout << report.dump() << "\n";
    return malicious ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"static detector for malicious office-document and archive attachments"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonArgs common;
    app.add_option("--config", common.config_path, "JSON config overriding trainer/feature defaults");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "seed for model training");
    app.add_flag("--skip-errors", common.skip_errors, "skip unreadable inputs instead of aborting");

    auto* extract = app.add_subcommand("extract", "featurize a manifest into a feature store");
    std::string manifest_path, mode = "document", out_store;
    extract->add_option("--manifest", manifest_path, "JSON-lines manifest")->required();
    extract->add_option("--mode", mode, "document or archive")
        ->check(CLI::IsMember({"document", "archive"}))
        ->required();
    extract->add_option("--out", out_store, "output feature store")->required();

    auto* train = app.add_subcommand("train", "train a classifier on a feature store");
    std::string store_path, model_kind = "gbt", out_model;
    train->add_option("--store", store_path, "feature store")->required();
    train->add_option("--model", model_kind, "dnn or gbt")
        ->check(CLI::IsMember({"dnn", "gbt"}))
        ->required();
    train->add_option("--out", out_model, "output model file")->required();

    auto* evalc = app.add_subcommand("eval", "score the test split and write a ROC curve");
    std::string eval_store, eval_model, roc_out;
    evalc->add_option("--store", eval_store, "feature store")->required();
    evalc->add_option("--model-file", eval_model, "trained model")->required();
    evalc->add_option("--roc-out", roc_out, "output ROC CSV")->required();

    auto* calibrate = app.add_subcommand("calibrate", "derive a threshold at a target FPR");
    std::string cal_store, cal_model, cal_test_store, cal_out;
    double target_fpr = 1e-3;
    calibrate->add_option("--store", cal_store, "benign feature store")->required();
    calibrate->add_option("--model-file", cal_model, "trained model")->required();
    calibrate->add_option("--target-fpr", target_fpr, "target false-positive rate")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9))
        ->required();
    calibrate->add_option("--test-store", cal_test_store, "optional store for TPR at threshold");
    calibrate->add_option("--out", cal_out, "also write the JSON report here");

    auto* scan = app.add_subcommand("scan", "score a single file against a threshold");
    std::string scan_file, scan_model;
    double scan_threshold = 0.5;
    scan->add_option("--file", scan_file, "file to scan")->required();
    scan->add_option("--model-file", scan_model, "trained model")->required();
    scan->add_option("--threshold", scan_threshold, "malicious verdict at score >= threshold")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->required();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) common.seed = seed_value;

    if (extract->parsed()) return cmd_extract(manifest_path, mode, out_store, common);
    if (train->parsed()) return cmd_train(store_path, model_kind, out_model, common);
    if (evalc->parsed()) return cmd_eval(eval_store, eval_model, roc_out);
    if (calibrate->parsed())
        return cmd_calibrate(cal_store, cal_model, target_fpr, cal_test_store, cal_out);
    if (scan->parsed()) return cmd_scan(scan_file, scan_model, scan_threshold);
    return 0;
}
