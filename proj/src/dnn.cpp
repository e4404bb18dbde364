#include "ascan/dnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ascan::dnn {

namespace {

double sigmoid(double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
}

double uniform_signed(rnd::Engine& eng) { return 2.0 * rnd::uniform_unit(eng) - 1.0; }

DnnLayer make_layer(std::size_t fan_in, std::size_t fan_out, rnd::Engine& eng) {
    DnnLayer layer;
    layer.weights = Mat(fan_in, fan_out);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (double& w : layer.weights.data) w = uniform_signed(eng) * limit;
    layer.bias.assign(fan_out, 0.0);
    layer.bn_gamma.assign(fan_out, 1.0);
    layer.bn_beta.assign(fan_out, 0.0);
    layer.bn_running_mean.assign(fan_out, 0.0);
    layer.bn_running_var.assign(fan_out, 1.0);
    return layer;
}

void affine(const Mat& input, const Mat& weights, const std::vector<double>& bias, Mat& out) {
    matmul(input, weights, out);
    for (std::size_t i = 0; i < out.rows; ++i) {
        double* row = out.data.data() + i * out.cols;
        for (std::size_t j = 0; j < out.cols; ++j) row[j] += bias[j];
    }
}

struct LayerCache {
    Mat input;                        // activations entering the affine
    Mat zhat;                         // normalized pre-activation
    Mat out;                          // post ReLU (and dropout, when masked)
    std::vector<double> mean;         // batch statistics
    std::vector<double> var;
    std::vector<double> inv_std;
    std::vector<std::uint8_t> relu_pos;
    std::vector<double> mask;         // empty, or 0 / (1/keep) per element
};

// Train-mode pass through one hidden layer; fills the cache.
void layer_forward_train(const DnnModel& model, const DnnLayer& layer, const Mat& input,
                         LayerCache& cache, rnd::Engine* dropout_rng, double dropout) {
    const std::size_t m = input.rows, q = layer.weights.cols;
    cache.input = input;

    Mat z;
    affine(input, layer.weights, layer.bias, z);

    cache.mean.assign(q, 0.0);
    cache.var.assign(q, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = z.data.data() + i * q;
        for (std::size_t j = 0; j < q; ++j) cache.mean[j] += row[j];
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (double& v : cache.mean) v *= inv_m;
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = z.data.data() + i * q;
        for (std::size_t j = 0; j < q; ++j) {
            const double d = row[j] - cache.mean[j];
            cache.var[j] += d * d;
        }
    }
    for (double& v : cache.var) v *= inv_m;

    cache.inv_std.resize(q);
    for (std::size_t j = 0; j < q; ++j)
        cache.inv_std[j] = 1.0 / std::sqrt(cache.var[j] + model.bn_eps);

    cache.zhat = Mat(m, q);
    cache.out = Mat(m, q);
    cache.relu_pos.assign(m * q, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const double* zrow = z.data.data() + i * q;
        double* hrow = cache.zhat.data.data() + i * q;
        double* orow = cache.out.data.data() + i * q;
        for (std::size_t j = 0; j < q; ++j) {
            const double zh = (zrow[j] - cache.mean[j]) * cache.inv_std[j];
            hrow[j] = zh;
            const double a = layer.bn_gamma[j] * zh + layer.bn_beta[j];
            if (a > 0.0) {
                cache.relu_pos[i * q + j] = 1;
                orow[j] = a;
            }
        }
    }

    if (dropout_rng != nullptr && dropout > 0.0) {
        const double keep = 1.0 - dropout;
        const double scale = 1.0 / keep;
        cache.mask.resize(m * q);
        for (std::size_t k = 0; k < m * q; ++k)
            cache.mask[k] = rnd::uniform_unit(*dropout_rng) < keep ? scale : 0.0;
        for (std::size_t k = 0; k < m * q; ++k) cache.out.data[k] *= cache.mask[k];
    }
}

std::vector<double> output_scores(const DnnModel& model, const Mat& activations) {
    const std::size_t m = activations.rows;
    std::vector<double> scores(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = activations.data.data() + i * activations.cols;
        double s = model.out_bias;
        for (std::size_t j = 0; j < activations.cols; ++j) s += row[j] * model.out_weights[j];
        scores[i] = sigmoid(s);
    }
    return scores;
}

std::vector<double> forward_train_cached(const DnnModel& model, const Mat& batch,
                                         std::vector<LayerCache>& caches,
                                         rnd::Engine* dropout_rng, double dropout) {
    caches.resize(model.hidden.size());
    const Mat* cur = &batch;
    for (std::size_t l = 0; l < model.hidden.size(); ++l) {
        layer_forward_train(model, model.hidden[l], *cur, caches[l], dropout_rng, dropout);
        cur = &caches[l].out;
    }
    return output_scores(model, *cur);
}

Mat infer_hidden(const DnnModel& model, const Mat& batch, std::size_t upto) {
    Mat cur = batch;
    Mat z;
    for (std::size_t l = 0; l < upto; ++l) {
        const DnnLayer& layer = model.hidden[l];
        affine(cur, layer.weights, layer.bias, z);
        const std::size_t q = layer.weights.cols;
        Mat out(z.rows, q);
        for (std::size_t j = 0; j < q; ++j) {
            const double inv_std = 1.0 / std::sqrt(layer.bn_running_var[j] + model.bn_eps);
            const double gamma = layer.bn_gamma[j];
            const double shift = layer.bn_beta[j] - gamma * layer.bn_running_mean[j] * inv_std;
            const double scale = gamma * inv_std;
            for (std::size_t i = 0; i < z.rows; ++i) {
                const double a = z(i, j) * scale + shift;
                out(i, j) = a > 0.0 ? a : 0.0;
            }
        }
        cur = std::move(out);
    }
    return cur;
}

Gradients zero_gradients(const DnnModel& model) {
    Gradients g;
    g.hidden.resize(model.hidden.size());
    for (std::size_t l = 0; l < model.hidden.size(); ++l) {
        const auto& layer = model.hidden[l];
        g.hidden[l].weights = Mat(layer.weights.rows, layer.weights.cols);
        g.hidden[l].bias.assign(layer.bias.size(), 0.0);
        g.hidden[l].bn_gamma.assign(layer.bn_gamma.size(), 0.0);
        g.hidden[l].bn_beta.assign(layer.bn_beta.size(), 0.0);
    }
    g.out_weights.assign(model.out_weights.size(), 0.0);
    g.out_bias = 0.0;
    return g;
}

struct BatchStats {
    std::vector<std::vector<double>> mean; // per layer
    std::vector<std::vector<double>> var;
};

double backward_pass(const DnnModel& model, const Mat& batch, std::span<const double> y,
                     Gradients& grads, BatchStats* stats, rnd::Engine* dropout_rng,
                     double dropout) {
    std::vector<LayerCache> caches;
    const std::vector<double> scores =
        forward_train_cached(model, batch, caches, dropout_rng, dropout);
    const double batch_loss = loss(scores, y);

    if (stats != nullptr) {
        stats->mean.clear();
        stats->var.clear();
        for (const auto& c : caches) {
            stats->mean.push_back(c.mean);
            stats->var.push_back(c.var);
        }
    }

    const std::size_t m = batch.rows;
    const double inv_m = 1.0 / static_cast<double>(m);

    // Output layer.
    const Mat& top = caches.empty() ? batch : caches.back().out;
    std::vector<double> dlogit(m);
    for (std::size_t i = 0; i < m; ++i) dlogit[i] = (scores[i] - y[i]) * inv_m;

    grads.out_bias = std::accumulate(dlogit.begin(), dlogit.end(), 0.0);
    std::fill(grads.out_weights.begin(), grads.out_weights.end(), 0.0);
    Mat dcur(m, top.cols);
    for (std::size_t i = 0; i < m; ++i) {
        const double* trow = top.data.data() + i * top.cols;
        double* drow = dcur.data.data() + i * top.cols;
        for (std::size_t j = 0; j < top.cols; ++j) {
            grads.out_weights[j] += trow[j] * dlogit[i];
            drow[j] = model.out_weights[j] * dlogit[i];
        }
    }

    // Hidden layers, last to first.
    Mat dz, wt, dprev;
    for (std::size_t li = model.hidden.size(); li-- > 0;) {
        const DnnLayer& layer = model.hidden[li];
        LayerCache& cache = caches[li];
        LayerGrads& lg = grads.hidden[li];
        const std::size_t q = layer.weights.cols;

        if (!cache.mask.empty())
            for (std::size_t k = 0; k < m * q; ++k) dcur.data[k] *= cache.mask[k];
        for (std::size_t k = 0; k < m * q; ++k)
            if (!cache.relu_pos[k]) dcur.data[k] = 0.0;

        // Batch-norm backward: dcur currently holds dL/da where a = gamma*zhat + beta.
        std::fill(lg.bn_gamma.begin(), lg.bn_gamma.end(), 0.0);
        std::fill(lg.bn_beta.begin(), lg.bn_beta.end(), 0.0);
        std::vector<double> sum_dzhat(q, 0.0), sum_dzhat_zhat(q, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* zrow = cache.zhat.data.data() + i * q;
            const double* drow = dcur.data.data() + i * q;
            for (std::size_t j = 0; j < q; ++j) {
                lg.bn_gamma[j] += drow[j] * zrow[j];
                lg.bn_beta[j] += drow[j];
                const double dzh = drow[j] * layer.bn_gamma[j];
                sum_dzhat[j] += dzh;
                sum_dzhat_zhat[j] += dzh * zrow[j];
            }
        }

        dz.rows = m;
        dz.cols = q;
        dz.data.assign(m * q, 0.0);
        const double md = static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double* zrow = cache.zhat.data.data() + i * q;
            const double* drow = dcur.data.data() + i * q;
            double* dzrow = dz.data.data() + i * q;
            for (std::size_t j = 0; j < q; ++j) {
                const double dzh = drow[j] * layer.bn_gamma[j];
                dzrow[j] = cache.inv_std[j] * inv_m *
                           (md * dzh - sum_dzhat[j] - zrow[j] * sum_dzhat_zhat[j]);
            }
        }

        matmul_tn(cache.input, dz, lg.weights);
        std::fill(lg.bias.begin(), lg.bias.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* dzrow = dz.data.data() + i * q;
            for (std::size_t j = 0; j < q; ++j) lg.bias[j] += dzrow[j];
        }

        if (li > 0) {
            wt = transposed(layer.weights);
            matmul(dz, wt, dprev);
            dcur = std::move(dprev);
        }
    }
    return batch_loss;
}

// Parameter walk shared by the ADAM state and the update step; fixed order.
template <class Fn>
void visit_params(DnnModel& model, Gradients& grads, Fn&& fn) {
    for (std::size_t l = 0; l < model.hidden.size(); ++l) {
        auto& layer = model.hidden[l];
        auto& lg = grads.hidden[l];
        fn(layer.weights.data.data(), lg.weights.data.data(), layer.weights.data.size());
        fn(layer.bias.data(), lg.bias.data(), layer.bias.size());
        fn(layer.bn_gamma.data(), lg.bn_gamma.data(), layer.bn_gamma.size());
        fn(layer.bn_beta.data(), lg.bn_beta.data(), layer.bn_beta.size());
    }
    fn(model.out_weights.data(), grads.out_weights.data(), model.out_weights.size());
    fn(&model.out_bias, &grads.out_bias, 1);
}

std::size_t param_count(const DnnModel& model) {
    std::size_t total = 1 + model.out_weights.size();
    for (const auto& layer : model.hidden)
        total += layer.weights.data.size() + layer.bias.size() + layer.bn_gamma.size() +
                 layer.bn_beta.size();
    return total;
}

} // namespace

DnnModel init(std::size_t input_dim, std::uint64_t seed) {
    return init(input_dim, {1024, 1024, 1024, 1024}, seed);
}

DnnModel init(std::size_t input_dim, const std::vector<std::size_t>& widths,
              std::uint64_t seed) {
    if (input_dim == 0) throw std::invalid_argument("input_dim must be >= 1");
    if (widths.empty()) throw std::invalid_argument("at least one hidden layer required");
    rnd::Engine eng(seed);
    DnnModel model;
    model.input_dim = input_dim;
    std::size_t fan_in = input_dim;
    for (std::size_t w : widths) {
        model.hidden.push_back(make_layer(fan_in, w, eng));
        fan_in = w;
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    model.out_weights.resize(fan_in);
    for (double& w : model.out_weights) w = uniform_signed(eng) * limit;
    model.out_bias = 0.0;
    return model;
}

std::vector<double> forward(const DnnModel& model, const Mat& batch, Mode mode,
                            rnd::Engine* dropout_rng, double dropout) {
    if (batch.cols != model.input_dim)
        throw ShapeMismatch("batch has " + std::to_string(batch.cols) +
                            " columns, model expects " + std::to_string(model.input_dim));
    if (mode == Mode::Infer) return output_scores(model, infer_hidden(model, batch, model.hidden.size()));

    if (batch.rows < 2) throw ShapeMismatch("train-mode forward needs a batch of >= 2 rows");
    std::vector<LayerCache> caches;
    return forward_train_cached(model, batch, caches, dropout_rng, dropout);
}

double loss(std::span<const double> scores, std::span<const double> labels) {
    if (scores.size() != labels.size())
        throw ShapeMismatch("scores and labels differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double p = std::clamp(scores[i], 1e-12, 1.0 - 1e-12);
        total -= labels[i] * std::log(p) + (1.0 - labels[i]) * std::log(1.0 - p);
    }
    return total / static_cast<double>(scores.size());
}

double train_mode_loss(const DnnModel& model, const Mat& x, std::span<const double> y) {
    std::vector<LayerCache> caches;
    const auto scores = forward_train_cached(model, x, caches, nullptr, 0.0);
    return loss(scores, y);
}

Gradients gradients(const DnnModel& model, const Mat& x, std::span<const double> y,
                    double* loss_out) {
    Gradients grads = zero_gradients(model);
    const double l = backward_pass(model, x, y, grads, nullptr, nullptr, 0.0);
    if (loss_out != nullptr) *loss_out = l;
    return grads;
}

std::vector<double> hidden_activations(const DnnModel& model, std::span<const double> x,
                                       std::size_t layer_index) {
    if (layer_index < 1 || layer_index > model.hidden.size())
        throw IndexOutOfRange("layer_index " + std::to_string(layer_index) + " not in [1, " +
                              std::to_string(model.hidden.size()) + "]");
    if (x.size() != model.input_dim) throw ShapeMismatch("input width differs from model");
    Mat row(1, x.size());
    std::copy(x.begin(), x.end(), row.data.begin());
    Mat acts = infer_hidden(model, row, layer_index);
    return acts.data;
}

std::vector<double> hidden_activations(const DnnModel& model, std::span<const double> x) {
    return hidden_activations(model, x, model.hidden.size());
}

TrainHistory train(DnnModel& model, const Mat& x, std::span<const double> y,
                   std::span<const std::int64_t> first_seen, const TrainConfig& cfg) {
    const std::size_t n = x.rows;
    if (y.size() != n) throw ShapeMismatch("label count differs from row count");
    if (!first_seen.empty() && first_seen.size() != n)
        throw ShapeMismatch("first_seen count differs from row count");
    std::size_t pos = 0;
    for (double v : y) pos += v >= 0.5 ? 1 : 0;
    if (pos == 0 || pos == n) throw SingleClass("training labels are constant");

    // Temporal validation slice: latest validation_fraction of the rows.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (!first_seen.empty())
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return first_seen[a] < first_seen[b];
        });
    std::size_t n_val = static_cast<std::size_t>(
        std::floor(cfg.validation_fraction * static_cast<double>(n) + 1e-9));
    n_val = std::clamp<std::size_t>(n_val, 1, n > 2 ? n - 2 : 1);
    const std::size_t n_train = n - n_val;
    if (n_train < 2) throw ShapeMismatch("too few rows to train");

    std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> val_idx(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());

    Mat val_x(val_idx.size(), x.cols);
    std::vector<double> val_y(val_idx.size());
    for (std::size_t i = 0; i < val_idx.size(); ++i) {
        std::copy(x.row(val_idx[i]).begin(), x.row(val_idx[i]).end(), val_x.row(i).begin());
        val_y[i] = y[val_idx[i]];
    }

    const std::size_t batch_size = std::max<std::size_t>(2, std::min(cfg.minibatch, n_train));

    rnd::Engine eng(cfg.seed);
    std::vector<double> adam_m(param_count(model), 0.0), adam_v(param_count(model), 0.0);
    std::size_t step = 0;

    TrainHistory history;
    DnnModel best_model = model;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t stale = 0;

    Gradients grads = zero_gradients(model);
    BatchStats stats;
    Mat xb;
    std::vector<double> yb;

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        rnd::shuffle(train_idx, eng);

        double epoch_loss = 0.0;
        std::size_t covered = 0;
        std::size_t start = 0;
        while (start < n_train) {
            std::size_t end = std::min(start + batch_size, n_train);
            if (n_train - end == 1) end = n_train; // avoid a trailing batch of one
            const std::size_t bs = end - start;

            xb.rows = bs;
            xb.cols = x.cols;
            xb.data.resize(bs * x.cols);
            yb.resize(bs);
            for (std::size_t i = 0; i < bs; ++i) {
                const auto src = x.row(train_idx[start + i]);
                std::copy(src.begin(), src.end(), xb.data.begin() + static_cast<std::ptrdiff_t>(i * x.cols));
                yb[i] = y[train_idx[start + i]];
            }

            const double batch_loss =
                backward_pass(model, xb, yb, grads, &stats, &eng, cfg.dropout);
            epoch_loss += batch_loss * static_cast<double>(bs);
            covered += bs;

            // ADAM update.
            ++step;
            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
            std::size_t offset = 0;
            visit_params(model, grads, [&](double* param, const double* grad, std::size_t count) {
                for (std::size_t k = 0; k < count; ++k) {
                    double& mk = adam_m[offset + k];
                    double& vk = adam_v[offset + k];
                    mk = cfg.beta1 * mk + (1.0 - cfg.beta1) * grad[k];
                    vk = cfg.beta2 * vk + (1.0 - cfg.beta2) * grad[k] * grad[k];
                    const double mhat = mk / bc1;
                    const double vhat = vk / bc2;
                    param[k] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
                }
                offset += count;
            });

            // Running BN statistics.
            for (std::size_t l = 0; l < model.hidden.size(); ++l) {
                auto& layer = model.hidden[l];
                for (std::size_t j = 0; j < layer.bn_running_mean.size(); ++j) {
                    layer.bn_running_mean[j] = cfg.bn_momentum * layer.bn_running_mean[j] +
                                               (1.0 - cfg.bn_momentum) * stats.mean[l][j];
                    layer.bn_running_var[j] = cfg.bn_momentum * layer.bn_running_var[j] +
                                              (1.0 - cfg.bn_momentum) * stats.var[l][j];
                }
            }

            start = end;
        }

        history.train_loss.push_back(epoch_loss / static_cast<double>(covered));
        const auto val_scores = forward(model, val_x, Mode::Infer);
        const double val_loss = loss(val_scores, val_y);
        history.val_loss.push_back(val_loss);

        if (val_loss < best_val) {
            best_val = val_loss;
            best_model = model;
            history.best_epoch = epoch;
            stale = 0;
        } else {
            ++stale;
        }
        if (stale >= cfg.patience) break;
    }

    model = std::move(best_model);
    return history;
}

nlohmann::json to_json(const DnnModel& model, const TrainConfig& cfg) {
    nlohmann::json layers = nlohmann::json::array();
    nlohmann::json dims = nlohmann::json::array();
    dims.push_back(model.input_dim);
    for (const auto& layer : model.hidden) {
        dims.push_back(layer.weights.cols);
        layers.push_back({{"weights", layer.weights.data},
                          {"rows", layer.weights.rows},
                          {"cols", layer.weights.cols},
                          {"bias", layer.bias},
                          {"bn_gamma", layer.bn_gamma},
                          {"bn_beta", layer.bn_beta},
                          {"bn_running_mean", layer.bn_running_mean},
                          {"bn_running_var", layer.bn_running_var}});
    }
    dims.push_back(1);
    return nlohmann::json{{"schema_version", 1},
                          {"dims", dims},
                          {"bn_eps", model.bn_eps},
                          {"layers", layers},
                          {"output", {{"weights", model.out_weights}, {"bias", model.out_bias}}},
                          {"train_config",
                           {{"dropout", cfg.dropout},
                            {"minibatch", cfg.minibatch},
                            {"patience", cfg.patience},
                            {"max_epochs", cfg.max_epochs},
                            {"learning_rate", cfg.learning_rate},
                            {"beta1", cfg.beta1},
                            {"beta2", cfg.beta2},
                            {"adam_eps", cfg.adam_eps},
                            {"seed", cfg.seed},
                            {"validation_fraction", cfg.validation_fraction},
                            {"bn_momentum", cfg.bn_momentum}}}};
}

std::pair<DnnModel, TrainConfig> from_json(const nlohmann::json& doc) {
    if (doc.at("schema_version").get<int>() != 1)
        throw VersionMismatch("unsupported dnn schema version");

    DnnModel model;
    const auto dims = doc.at("dims").get<std::vector<std::size_t>>();
    model.input_dim = dims.front();
    model.bn_eps = doc.at("bn_eps").get<double>();
    for (const auto& l : doc.at("layers")) {
        DnnLayer layer;
        layer.weights.rows = l.at("rows").get<std::size_t>();
        layer.weights.cols = l.at("cols").get<std::size_t>();
        layer.weights.data = l.at("weights").get<std::vector<double>>();
        layer.bias = l.at("bias").get<std::vector<double>>();
        layer.bn_gamma = l.at("bn_gamma").get<std::vector<double>>();
        layer.bn_beta = l.at("bn_beta").get<std::vector<double>>();
        layer.bn_running_mean = l.at("bn_running_mean").get<std::vector<double>>();
        layer.bn_running_var = l.at("bn_running_var").get<std::vector<double>>();
        model.hidden.push_back(std::move(layer));
    }
    model.out_weights = doc.at("output").at("weights").get<std::vector<double>>();
    model.out_bias = doc.at("output").at("bias").get<double>();

    TrainConfig cfg;
    const auto& t = doc.at("train_config");
    cfg.dropout = t.at("dropout").get<double>();
    cfg.minibatch = t.at("minibatch").get<std::size_t>();
    cfg.patience = t.at("patience").get<std::size_t>();
    cfg.max_epochs = t.at("max_epochs").get<std::size_t>();
    cfg.learning_rate = t.at("learning_rate").get<double>();
    cfg.beta1 = t.at("beta1").get<double>();
    cfg.beta2 = t.at("beta2").get<double>();
    cfg.adam_eps = t.at("adam_eps").get<double>();
    cfg.seed = t.at("seed").get<std::uint64_t>();
    cfg.validation_fraction = t.at("validation_fraction").get<double>();
    cfg.bn_momentum = t.at("bn_momentum").get<double>();
    return {std::move(model), cfg};
}

} // namespace ascan::dnn
