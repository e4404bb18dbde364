// Acceptance suite: runs every advertised guarantee end to end and prints one
// pass/fail line per criterion. Invoke as: acceptance <path-to-ascan-binary>.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ascan/bytes.hpp"
#include "ascan/corpus.hpp"
#include "ascan/dnn.hpp"
#include "ascan/eval.hpp"
#include "ascan/featex.hpp"
#include "ascan/formats.hpp"
#include "ascan/gbt.hpp"
#include "ascan/mat.hpp"
#include "ascan/model_file.hpp"
#include "ascan/random.hpp"
#include "ascan/store.hpp"
#include "support/oracles.hpp"
#include "support/run.hpp"
#include "support/synth.hpp"
#include "support/tmpdir.hpp"
#include "support/ziptool.hpp"

using namespace ascan;
using testrun::run;
using testrun::shquote;

namespace {

std::string g_bin;

struct Context {
    std::unique_ptr<testsupport::TempDir> e2e_dir;
    std::filesystem::path e2e_store;
    std::filesystem::path e2e_dnn_model;
};
Context g_ctx;

Bytes random_bytes(rnd::Engine& eng, std::size_t n) {
    Bytes b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rnd::uniform_below(eng, 256));
    return b;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool file_bytes_equal(const std::filesystem::path& a, const std::filesystem::path& b) {
    return read_file(a) == read_file(b);
}

double parse_auc(const std::string& out) {
    if (out.rfind("AUC ", 0) != 0) return -1.0;
    return std::stod(out.substr(4));
}

// --- criterion 1 -----------------------------------------------------------

bool extractor_oracle_equivalence(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    rnd::Engine eng(20240101);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = rnd::uniform_below(eng, 65537); // 0 .. 64 KiB
        const Bytes buf = random_bytes(eng, len);

        featex::FeatureConfig cfg;
        cfg.entropy_grid = trial % 2 ? 32 : 16;
        cfg.meanstd_grid = 16;
        cfg.string_min_len = trial % 2 ? 2 : 5;

        worst = std::max(worst, max_abs_diff(featex::byte_entropy_histogram(buf, cfg),
                                             testoracle::entropy_hist(buf, cfg.entropy_grid,
                                                                      cfg.window, cfg.stride)));
        worst = std::max(worst,
                         max_abs_diff(featex::byte_meanstd_histogram(buf, cfg),
                                      testoracle::meanstd_hist(buf, 16, cfg.window, cfg.stride)));
        worst = std::max(worst, max_abs_diff(featex::string_length_hash(buf, cfg),
                                             testoracle::string_hist(buf, 16, 64,
                                                                     cfg.string_min_len, 128)));
        worst = std::max(worst, max_abs_diff(featex::ngram_hash_histogram(buf, cfg),
                                             testoracle::ngram_hist(buf, {3, 4, 5, 6}, 1024)));
        if (worst > 1e-9) {
            note = "divergence " + std::to_string(worst) + " at trial " + std::to_string(trial);
            return false;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note = "100 buffers, worst diff " + std::to_string(worst) + ", " + std::to_string(secs) + " s";
    return worst <= 1e-9 && secs < 30.0;
}

// --- criterion 2 -----------------------------------------------------------

bool entropy_invariants(std::string& note) {
    rnd::Engine eng(512);
    featex::FeatureConfig cfg; // 16x16, window 1024

    Bytes uniform_pattern(1024);
    for (std::size_t i = 0; i < uniform_pattern.size(); ++i)
        uniform_pattern[i] = static_cast<std::uint8_t>(i % 256);

    for (int trial = 0; trial < 1000; ++trial) {
        // Random window: permuting its bytes must not change the histograms.
        Bytes window = random_bytes(eng, 1024);
        const auto e_before = featex::byte_entropy_histogram(window, cfg);
        const auto m_before = featex::byte_meanstd_histogram(window, cfg);
        rnd::shuffle(window, eng);
        if (featex::byte_entropy_histogram(window, cfg) != e_before ||
            featex::byte_meanstd_histogram(window, cfg) != m_before) {
            note = "permutation changed a histogram at trial " + std::to_string(trial);
            return false;
        }

        // Constant window: H = 0, all mass in entropy bin 0 of the byte's row.
        const auto value = static_cast<std::uint8_t>(rnd::uniform_below(eng, 256));
        const Bytes constant(1024, value);
        const auto ch = featex::byte_entropy_histogram(constant, cfg);
        if (ch[(value / 16) * 16 + 0] != 1.0) {
            note = "constant window missed the zero-entropy cell";
            return false;
        }

        // Uniform window (every byte value equally often): H = 8, top bin.
        Bytes uniform = uniform_pattern;
        rnd::shuffle(uniform, eng);
        const auto uh = featex::byte_entropy_histogram(uniform, cfg);
        for (std::size_t byte_bin = 0; byte_bin < 16; ++byte_bin) {
            for (std::size_t ebin = 0; ebin < 15; ++ebin) {
                if (uh[byte_bin * 16 + ebin] != 0.0) {
                    note = "uniform window leaked mass below the top entropy bin";
                    return false;
                }
            }
        }
    }
    note = "1000 windows";
    return true;
}

// --- criterion 3 -----------------------------------------------------------

bool zip_structural_agreement(std::string& note) {
    if (!testzip::have_python()) {
        note = "python3 with zipfile is required";
        return false;
    }
    testsupport::TempDir dir("accept-zip");
    rnd::Engine eng(777);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789_.-";

    for (int archive = 0; archive < 50; ++archive) {
        const std::size_t member_count = rnd::uniform_below(eng, 65); // 0 .. 64
        std::vector<testzip::Member> members;
        for (std::size_t m = 0; m < member_count; ++m) {
            const std::size_t name_len = 1 + rnd::uniform_below(eng, 64);
            std::string name;
            for (std::size_t i = 0; i < name_len; ++i) {
                if (i > 0 && i + 1 < name_len && rnd::uniform_below(eng, 12) == 0)
                    name += '/';
                else
                    name += alphabet[rnd::uniform_below(eng, alphabet.size())];
            }
            const Bytes payload = random_bytes(eng, rnd::uniform_below(eng, 2048));
            members.push_back({name, std::string(payload.begin(), payload.end())});
        }

        const auto zip_path = dir.file("a" + std::to_string(archive) + ".zip");
        const auto listing = testzip::make_zip(zip_path, members, archive % 2 == 0);
        const Bytes raw = read_file(zip_path);

        formats::CentralDirectoryView view;
        try {
            view = formats::parse_central_directory(raw);
        } catch (const std::exception& e) {
            note = "archive " + std::to_string(archive) + " failed to parse: " + e.what();
            return false;
        }
        if (view.entries.size() != listing.names.size()) {
            note = "archive " + std::to_string(archive) + ": count " +
                   std::to_string(view.entries.size()) + " vs tool " +
                   std::to_string(listing.names.size());
            return false;
        }
        for (std::size_t i = 0; i < view.entries.size(); ++i) {
            const std::string name(view.entries[i].name.begin(), view.entries[i].name.end());
            if (name != listing.names[i]) {
                note = "archive " + std::to_string(archive) + " entry " + std::to_string(i) +
                       " name mismatch";
                return false;
            }
        }
    }

    // A genuine Zip64 archive (member count overflows the EOCD field).
    {
        const auto path = dir.file("big64.zip");
        const std::string script = "import zipfile\n"
                                   "import sys\n"
                                   "with zipfile.ZipFile(sys.argv[1], 'w') as z:\n"
                                   "    for i in range(65600):\n"
                                   "        z.writestr('m%05d' % i, b'')\n";
        const auto script_path = dir.file("make64.py");
        {
            std::ofstream s(script_path);
            s << script;
        }
        if (std::system(("python3 '" + script_path.string() + "' '" + path.string() +
                         "' >/dev/null 2>&1")
                            .c_str()) != 0) {
            note = "python3 failed to build the zip64 fixture";
            return false;
        }
        try {
            formats::parse_central_directory(read_file(path));
            note = "zip64 archive was not rejected";
            return false;
        } catch (const Unsupported&) {
        }
    }
    note = "50 archives + zip64 rejection";
    return true;
}

// --- criterion 4 -----------------------------------------------------------

bool dnn_gradient_check(std::string& note) {
    rnd::Engine eng(4242);
    double worst = 0.0;

    auto check_model = [&](dnn::DnnModel model, std::size_t rows) {
        Mat x(rows, model.input_dim);
        for (auto& v : x.data) v = 2.0 * rnd::uniform_unit(eng) - 1.0;
        std::vector<double> y(rows);
        for (auto& v : y) v = static_cast<double>(rnd::uniform_below(eng, 2));

        const dnn::Gradients grads = dnn::gradients(model, x, y);
        const double step = 1e-5;
        auto probe = [&](double* param, double analytic) {
            const double saved = *param;
            *param = saved + step;
            const double up = dnn::train_mode_loss(model, x, y);
            *param = saved - step;
            const double down = dnn::train_mode_loss(model, x, y);
            *param = saved;
            const double numeric = (up - down) / (2.0 * step);
            const double diff = std::abs(analytic - numeric);
            // Batch norm cancels constant column shifts, so bias gradients
            // are exactly zero; below the finite-difference noise floor only
            // the absolute difference is meaningful.
            if (diff < 1e-9) return;
            worst = std::max(worst, diff / std::max(std::abs(analytic), std::abs(numeric)));
        };
        for (std::size_t l = 0; l < model.hidden.size(); ++l) {
            auto& layer = model.hidden[l];
            const auto& lg = grads.hidden[l];
            for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
                probe(&layer.weights.data[k], lg.weights.data[k]);
            for (std::size_t k = 0; k < layer.bias.size(); ++k) probe(&layer.bias[k], lg.bias[k]);
            for (std::size_t k = 0; k < layer.bn_gamma.size(); ++k)
                probe(&layer.bn_gamma[k], lg.bn_gamma[k]);
            for (std::size_t k = 0; k < layer.bn_beta.size(); ++k)
                probe(&layer.bn_beta[k], lg.bn_beta[k]);
        }
        for (std::size_t k = 0; k < model.out_weights.size(); ++k)
            probe(&model.out_weights[k], grads.out_weights[k]);
        probe(&model.out_bias, grads.out_bias);
    };

    check_model(dnn::init(6, {7, 5}, 11), 9);
    check_model(dnn::init(8, {8, 8, 8, 8}, 5), 12);
    note = "worst relative error " + std::to_string(worst);
    return worst < 1e-4;
}

// --- criterion 5 -----------------------------------------------------------

bool gbt_split_and_monotonicity(std::string& note) {
    rnd::Engine eng(31415);

    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 2 + rnd::uniform_below(eng, 63);
        const std::size_t features = 1 + rnd::uniform_below(eng, 4);
        const double lambda = trial % 2 ? 1.0 : 0.0;
        const double min_child = trial % 3 ? 0.0 : 0.4;

        std::vector<std::vector<double>> values(features, std::vector<double>(rows));
        std::vector<double> g(rows), h(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            g[i] = 2.0 * rnd::uniform_unit(eng) - 1.0;
            h[i] = 0.05 + rnd::uniform_unit(eng);
            for (std::size_t f = 0; f < features; ++f)
                values[f][i] = static_cast<double>(rnd::uniform_below(eng, 10));
        }

        for (std::size_t f = 0; f < features; ++f) {
            const auto got = gbt::best_split(values[f], g, h, lambda, min_child);
            const auto want = testoracle::brute_force_split(values[f], g, h, lambda, min_child);
            if (got.has_value() != want.has_value()) {
                note = "split presence mismatch at trial " + std::to_string(trial);
                return false;
            }
            if (got && (std::abs(got->gain - want->gain) > 1e-9 ||
                        std::abs(got->threshold - want->threshold) > 1e-12)) {
                note = "split value mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
    }

    // Monotone training loss: full-batch Newton boosting with no leaf penalty.
    const std::size_t n = 500;
    Mat x(n, 2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = rnd::uniform_unit(eng);
        x(i, 1) = rnd::uniform_unit(eng);
        const double signal = x(i, 0) + 0.5 * x(i, 1) + 0.2 * (rnd::uniform_unit(eng) - 0.5);
        y[i] = signal > 0.75 ? 1.0 : 0.0;
    }
    gbt::GbtConfig cfg;
    cfg.subsample_rows = 1.0;
    cfg.lambda = 0.0;
    cfg.max_rounds = 50;
    cfg.patience_rounds = 50;
    auto [ens, history] = gbt::train_gbt(x, y, cfg);
    if (history.size() < 50) {
        note = "expected 50 boosting rounds, saw " + std::to_string(history.size());
        return false;
    }
    for (std::size_t r = 1; r < history.size(); ++r) {
        if (history[r].train_logloss > history[r - 1].train_logloss + 1e-12) {
            note = "log-loss rose at round " + std::to_string(r);
            return false;
        }
    }
    note = "200 instances + 50 monotone rounds";
    return true;
}

// --- criterion 6 -----------------------------------------------------------

bool auc_oracle(std::string& note) {
    rnd::Engine eng(2718);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
        const std::size_t n = 2 + rnd::uniform_below(eng, 999);
        std::vector<double> scores(n);
        std::vector<std::uint8_t> labels(n);
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rnd::uniform_below(eng, 50)) / 49.0;
            labels[i] = static_cast<std::uint8_t>(rnd::uniform_below(eng, 2));
            (labels[i] ? has1 : has0) = true;
        }
        if (!has0 || !has1) continue;
        ++done;
        const auto roc = eval::roc_curve(scores, labels);
        worst = std::max(worst, std::abs(roc.auc - testoracle::auc_pairs(scores, labels)));
        if (worst >= 1e-12) break;
    }
    note = "worst |trapezoid - pairs| = " + std::to_string(worst);
    return worst < 1e-12;
}

// --- criterion 7 -----------------------------------------------------------

bool calibration_contract(std::string& note) {
    rnd::Engine eng(1001);
    std::vector<double> benign(10000);
    for (auto& s : benign) {
        const double u = rnd::uniform_unit(eng);
        s = u * u; // long right tail, like a well-behaved benign score pile
    }
    const double n = static_cast<double>(benign.size());

    for (const double target : {1e-3, 1e-2, 0.1}) {
        const double t = eval::threshold_at_fpr(benign, target);
        double at_or_above = 0.0, next_lower = -1.0;
        for (double s : benign) {
            if (s >= t) ++at_or_above;
            if (s < t) next_lower = std::max(next_lower, s);
        }
        if (at_or_above / n > target) {
            note = "achieved FPR exceeds target " + std::to_string(target);
            return false;
        }
        if (next_lower < 0.0) {
            note = "no lower candidate exists for target " + std::to_string(target);
            return false;
        }
        double at_or_above_lower = 0.0;
        for (double s : benign)
            if (s >= next_lower) ++at_or_above_lower;
        if (at_or_above_lower / n <= target) {
            note = "next-lower candidate also satisfies target " + std::to_string(target);
            return false;
        }
    }
    note = "targets 1e-3, 1e-2, 0.1 on 10000 scores";
    return true;
}

// --- criterion 8 -----------------------------------------------------------

bool e2e_synthetic_corpus(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    g_ctx.e2e_dir = std::make_unique<testsupport::TempDir>("accept-e2e");
    const auto& dir = *g_ctx.e2e_dir;

    const auto corpus_files = testsynth::make_corpus(dir.path, 2000, 2000, 99, 8192);
    const auto cfg_path = dir.file("cfg.json");
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"dnn": {"minibatch": 256, "max_epochs": 8}})";
    }
    const auto store = dir.file("docs.store");
    const auto dnn_model = dir.file("dnn.json");
    const auto gbt_model = dir.file("gbt.json");

    const auto rx = run(shquote(g_bin) + " extract --manifest " + shquote(corpus_files.manifest) +
                        " --mode document --out " + shquote(store));
    if (rx.exit_code != 0) {
        note = "extract failed";
        return false;
    }

    const auto rd = run(shquote(g_bin) + " train --store " + shquote(store) +
                        " --model dnn --out " + shquote(dnn_model) + " --seed 42 --config " +
                        shquote(cfg_path));
    const double dnn_auc = parse_auc(rd.out);
    if (rd.exit_code != 0 || dnn_auc < 0.0) {
        note = "dnn train failed";
        return false;
    }

    const auto rg = run(shquote(g_bin) + " train --store " + shquote(store) +
                        " --model gbt --out " + shquote(gbt_model) + " --seed 42");
    const double gbt_auc = parse_auc(rg.out);
    if (rg.exit_code != 0 || gbt_auc < 0.0) {
        note = "gbt train failed";
        return false;
    }

    const auto red = run(shquote(g_bin) + " eval --store " + shquote(store) + " --model-file " +
                         shquote(dnn_model) + " --roc-out " + shquote(dir.file("dnn_roc.csv")));
    const auto reg = run(shquote(g_bin) + " eval --store " + shquote(store) + " --model-file " +
                         shquote(gbt_model) + " --roc-out " + shquote(dir.file("gbt_roc.csv")));
    if (red.exit_code != 0 || reg.exit_code != 0 || parse_auc(red.out) != dnn_auc ||
        parse_auc(reg.out) != gbt_auc) {
        note = "eval disagreed with train";
        return false;
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    g_ctx.e2e_store = store;
    g_ctx.e2e_dnn_model = dnn_model;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "dnn AUC %.4f, gbt AUC %.4f, %.1f s", dnn_auc, gbt_auc, secs);
    note = buf;
    return dnn_auc >= 0.95 && gbt_auc >= 0.95 && secs < 300.0;
}

// --- criterion 9 -----------------------------------------------------------

bool stacking_pipeline(std::string& note) {
    if (g_ctx.e2e_store.empty()) {
        note = "requires the end-to-end artifacts";
        return false;
    }
    const auto store = featex::read_feature_store(g_ctx.e2e_store);
    const auto mf = model::load(g_ctx.e2e_dnn_model);

    const std::size_t take = std::min<std::size_t>(300, store.rows.size());
    const std::size_t deep_width = mf.dnn_model.hidden.back().weights.cols;
    Mat stacked(take, store.dim + deep_width);
    std::vector<double> y(take);
    std::vector<double> raw(store.dim);
    for (std::size_t i = 0; i < take; ++i) {
        for (std::size_t j = 0; j < store.dim; ++j) {
            raw[j] = store.rows[i][j];
            stacked(i, j) = raw[j];
        }
        const auto deep =
            dnn::hidden_activations(mf.dnn_model, raw, mf.dnn_model.hidden.size());
        for (std::size_t j = 0; j < deep.size(); ++j) stacked(i, store.dim + j) = deep[j];
        y[i] = store.labels[i];
    }

    gbt::GbtConfig cfg;
    cfg.max_rounds = 5;
    cfg.patience_rounds = 5;
    try {
        auto [ens, history] = gbt::train_gbt(stacked, y, cfg);
        if (ens.trees.empty()) {
            note = "stacked ensemble came back empty";
            return false;
        }
        const double p = gbt::predict(ens, stacked.row(0));
        if (!(p > 0.0 && p < 1.0)) {
            note = "stacked prediction outside (0,1)";
            return false;
        }
    } catch (const std::exception& e) {
        note = std::string("stacked training threw: ") + e.what();
        return false;
    }
    note = std::to_string(take) + " rows, " + std::to_string(store.dim + deep_width) + " dims";
    return true;
}

// --- criterion 10 ----------------------------------------------------------

bool determinism(std::string& note) {
    testsupport::TempDir dir("accept-det");
    const auto corpus_files = testsynth::make_corpus(dir.path, 120, 120, 5, 4096);
    const auto cfg_path = dir.file("cfg.json");
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"dnn": {"minibatch": 64, "max_epochs": 2}})";
    }

    auto pipeline = [&](const std::string& tag) {
        const auto store = dir.file("s-" + tag + ".store");
        const auto dnn_model = dir.file("dnn-" + tag + ".json");
        const auto gbt_model = dir.file("gbt-" + tag + ".json");
        const auto roc = dir.file("roc-" + tag + ".csv");
        bool ok = true;
        ok &= run(shquote(g_bin) + " extract --manifest " + shquote(corpus_files.manifest) +
                  " --mode document --out " + shquote(store))
                  .exit_code == 0;
        ok &= run(shquote(g_bin) + " train --store " + shquote(store) + " --model dnn --out " +
                  shquote(dnn_model) + " --seed 7 --config " + shquote(cfg_path))
                  .exit_code == 0;
        ok &= run(shquote(g_bin) + " train --store " + shquote(store) + " --model gbt --out " +
                  shquote(gbt_model) + " --seed 7")
                  .exit_code == 0;
        ok &= run(shquote(g_bin) + " eval --store " + shquote(store) + " --model-file " +
                  shquote(gbt_model) + " --roc-out " + shquote(roc))
                  .exit_code == 0;
        return ok;
    };

    if (!pipeline("a") || !pipeline("b")) {
        note = "a pipeline stage failed";
        return false;
    }
    if (!file_bytes_equal(dir.file("s-a.store"), dir.file("s-b.store"))) {
        note = "feature stores differ";
        return false;
    }
    if (!file_bytes_equal(dir.file("dnn-a.json"), dir.file("dnn-b.json"))) {
        note = "dnn model files differ";
        return false;
    }
    if (!file_bytes_equal(dir.file("gbt-a.json"), dir.file("gbt-b.json"))) {
        note = "gbt model files differ";
        return false;
    }
    if (!file_bytes_equal(dir.file("roc-a.csv"), dir.file("roc-b.csv"))) {
        note = "ROC CSVs differ";
        return false;
    }
    note = "store, dnn, gbt, roc all byte-identical";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-ascan>\n");
        return 2;
    }
    g_bin = argv[1];

    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria{
        {"extractor-oracle-equivalence", extractor_oracle_equivalence},
        {"entropy-invariants", entropy_invariants},
        {"zip-structural-agreement", zip_structural_agreement},
        {"dnn-gradient-check", dnn_gradient_check},
        {"gbt-split-optimality-and-monotonicity", gbt_split_and_monotonicity},
        {"auc-pair-statistic", auc_oracle},
        {"calibration-contract", calibration_contract},
        {"e2e-synthetic-corpus", e2e_synthetic_corpus},
        {"stacking-pipeline", stacking_pipeline},
        {"determinism", determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string note;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", criterion.name, secs,
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    g_ctx.e2e_dir.reset();
    return failures == 0 ? 0 : 1;
}
