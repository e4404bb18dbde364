#include "ascan/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ascan/random.hpp"

namespace ascan::gbt {

double sigmoid(double logit) {
    if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
    const double e = std::exp(logit);
    return e / (1.0 + e);
}

std::pair<double, double> grad_hess(double p, double y) { return {p - y, p * (1.0 - p)}; }

double leaf_weight(double grad_sum, double hess_sum, double lambda) {
    return -grad_sum / (hess_sum + lambda);
}

double Tree::eval(std::span<const double> x) const {
    const TreeNode* node = &nodes[0];
    while (!node->is_leaf)
        node = &nodes[x[static_cast<std::size_t>(node->feature)] < node->threshold
                          ? static_cast<std::size_t>(node->left)
                          : static_cast<std::size_t>(node->right)];
    return node->leaf_weight;
}

namespace {

double split_gain(double gl, double hl, double gr, double hr, double g, double h,
                  double lambda) {
    auto term = [lambda](double gs, double hs) { return gs * gs / (hs + lambda); };
    return 0.5 * (term(gl, hl) + term(gr, hr) - term(g, h));
}

// Scan assuming `values` (with parallel g/h) is already ascending.
std::optional<SplitCandidate> best_split_sorted(std::span<const double> values,
                                                std::span<const double> gradients,
                                                std::span<const double> hessians, double lambda,
                                                double min_child_hessian) {
    const std::size_t n = values.size();
    double g_total = 0.0, h_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g_total += gradients[i];
        h_total += hessians[i];
    }

    std::optional<SplitCandidate> best;
    double gl = 0.0, hl = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double v = values[i];
        while (i < n && values[i] == v) {
            gl += gradients[i];
            hl += hessians[i];
            ++i;
        }
        if (i == n) break; // last distinct value: no right side
        const double gr = g_total - gl;
        const double hr = h_total - hl;
        if (hl < min_child_hessian || hr < min_child_hessian) continue;
        const double gain = split_gain(gl, hl, gr, hr, g_total, h_total, lambda);
        if (gain <= 0.0) continue;
        const double threshold = (v + values[i]) * 0.5;
        if (!best || gain > best->gain || (gain == best->gain && threshold < best->threshold))
            best = SplitCandidate{threshold, gain};
    }
    return best;
}

} // namespace

std::optional<SplitCandidate> best_split(std::span<const double> values,
                                         std::span<const double> gradients,
                                         std::span<const double> hessians, double lambda,
                                         double min_child_hessian) {
    const std::size_t n = values.size();
    if (n == 0) return std::nullopt;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> v(n), g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = values[order[i]];
        g[i] = gradients[order[i]];
        h[i] = hessians[order[i]];
    }
    return best_split_sorted(v, g, h, lambda, min_child_hessian);
}

namespace {

struct NodeRows {
    // Per feature, row indices ascending by that feature's value.
    std::vector<std::vector<std::uint32_t>> by_feature;
};

struct TreeBuilder {
    const Mat& x;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    const GbtConfig& cfg;
    Tree tree;
    std::vector<double> vbuf, gbuf, hbuf;

    int grow(NodeRows rows, int depth) {
        const auto& anchor = rows.by_feature[0];
        double g_sum = 0.0, h_sum = 0.0;
        for (std::uint32_t r : anchor) {
            g_sum += grad[r];
            h_sum += hess[r];
        }

        int best_feature = -1;
        double best_threshold = 0.0, best_gain = 0.0;
        if (depth < cfg.max_depth) {
            for (std::size_t f = 0; f < rows.by_feature.size(); ++f) {
                const auto& idx = rows.by_feature[f];
                vbuf.resize(idx.size());
                gbuf.resize(idx.size());
                hbuf.resize(idx.size());
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    vbuf[i] = x(idx[i], f);
                    gbuf[i] = grad[idx[i]];
                    hbuf[i] = hess[idx[i]];
                }
                const auto cand =
                    best_split_sorted(vbuf, gbuf, hbuf, cfg.lambda, cfg.min_child_hessian);
                if (!cand) continue;
                if (best_feature < 0 || cand->gain > best_gain ||
                    (cand->gain == best_gain && cand->threshold < best_threshold)) {
                    best_feature = static_cast<int>(f);
                    best_threshold = cand->threshold;
                    best_gain = cand->gain;
                }
            }
        }

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (best_feature < 0) {
            tree.nodes[node_id].is_leaf = true;
            tree.nodes[node_id].leaf_weight = leaf_weight(g_sum, h_sum, cfg.lambda);
            return node_id;
        }

        NodeRows left, right;
        left.by_feature.resize(rows.by_feature.size());
        right.by_feature.resize(rows.by_feature.size());
        const auto fsel = static_cast<std::size_t>(best_feature);
        for (std::size_t f = 0; f < rows.by_feature.size(); ++f) {
            for (std::uint32_t r : rows.by_feature[f])
                (x(r, fsel) < best_threshold ? left : right).by_feature[f].push_back(r);
        }
        rows.by_feature.clear();

        // A midpoint between adjacent doubles can round onto one of them and
        // leave a side empty; fall back to a leaf rather than split on it.
        if (left.by_feature[0].empty() || right.by_feature[0].empty()) {
            tree.nodes[node_id].is_leaf = true;
            tree.nodes[node_id].leaf_weight = leaf_weight(g_sum, h_sum, cfg.lambda);
            return node_id;
        }

        const int left_id = grow(std::move(left), depth + 1);
        const int right_id = grow(std::move(right), depth + 1);
        tree.nodes[node_id].is_leaf = false;
        tree.nodes[node_id].feature = best_feature;
        tree.nodes[node_id].threshold = best_threshold;
        tree.nodes[node_id].left = left_id;
        tree.nodes[node_id].right = right_id;
        return node_id;
    }
};

double logloss(std::span<const double> margins, std::span<const double> y) {
    double total = 0.0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
        const double p = std::clamp(sigmoid(margins[i]), 1e-12, 1.0 - 1e-12);
        total -= y[i] * std::log(p) + (1.0 - y[i]) * std::log(1.0 - p);
    }
    return total / static_cast<double>(margins.size());
}

double accuracy(std::span<const double> margins, std::span<const double> y) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
        const int pred = sigmoid(margins[i]) >= 0.5 ? 1 : 0;
        if (pred == static_cast<int>(y[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(margins.size());
}

} // namespace

std::pair<GbtEnsemble, std::vector<RoundRecord>> train_gbt(const Mat& x,
                                                           std::span<const double> y,
                                                           const GbtConfig& cfg,
                                                           const Mat* val_x,
                                                           std::span<const double> val_y) {
    const std::size_t n = x.rows, d = x.cols;
    if (y.size() != n) throw ShapeMismatch("label count differs from row count");
    std::size_t pos = 0;
    for (double v : y) pos += v >= 0.5 ? 1 : 0;
    if (pos == 0 || pos == n) throw SingleClass("training labels are constant");

    // Presort once per feature; per-round node lists filter this order.
    std::vector<std::vector<std::uint32_t>> presort(d);
    for (std::size_t f = 0; f < d; ++f) {
        auto& order = presort[f];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return x(a, f) < x(b, f); });
    }

    GbtEnsemble ens;
    ens.eta = cfg.eta;
    ens.input_dim = d;

    rnd::Engine rng(cfg.seed);
    std::vector<double> margin(n, ens.base_score_logit);
    const bool external_val = val_x != nullptr;
    std::vector<double> val_margin(external_val ? val_x->rows : 0, ens.base_score_logit);
    if (external_val && val_y.size() != val_x->rows)
        throw ShapeMismatch("validation labels differ from validation rows");

    std::vector<double> grad(n), hess(n);
    std::vector<RoundRecord> history;
    double best_acc = -1.0;
    int best_round = -1;

    for (int round = 0; round < cfg.max_rounds; ++round) {
        std::size_t take = static_cast<std::size_t>(
            std::floor(cfg.subsample_rows * static_cast<double>(n)));
        take = std::clamp<std::size_t>(take, 1, n);
        const auto sampled = rnd::sample_without_replacement(n, take, rng);
        std::vector<char> in_sample(n, 0);
        for (std::uint32_t r : sampled) in_sample[r] = 1;

        for (std::size_t i = 0; i < n; ++i) {
            const auto [g, h] = grad_hess(sigmoid(margin[i]), y[i]);
            grad[i] = g;
            hess[i] = h;
        }

        NodeRows root;
        root.by_feature.resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            auto& lst = root.by_feature[f];
            lst.reserve(take);
            for (std::uint32_t r : presort[f])
                if (in_sample[r]) lst.push_back(r);
        }

        TreeBuilder builder{x, grad, hess, cfg, {}, {}, {}, {}};
        builder.grow(std::move(root), 0);
        ens.trees.push_back(std::move(builder.tree));

        const Tree& tree = ens.trees.back();
        for (std::size_t i = 0; i < n; ++i) margin[i] += cfg.eta * tree.eval(x.row(i));
        for (std::size_t i = 0; i < val_margin.size(); ++i)
            val_margin[i] += cfg.eta * tree.eval(val_x->row(i));

        RoundRecord rec;
        rec.train_logloss = logloss(margin, y);
        rec.val_accuracy = external_val ? accuracy(val_margin, val_y) : accuracy(margin, y);
        history.push_back(rec);

        if (rec.val_accuracy > best_acc) {
            best_acc = rec.val_accuracy;
            best_round = round;
        }
        if (round - best_round >= cfg.patience_rounds) break;
    }

    ens.trees.resize(static_cast<std::size_t>(best_round) + 1);
    return {std::move(ens), std::move(history)};
}

double predict(const GbtEnsemble& ensemble, std::span<const double> x) {
    if (ensemble.input_dim != 0 && x.size() != ensemble.input_dim)
        throw ShapeMismatch("input has " + std::to_string(x.size()) + " features, model expects " +
                            std::to_string(ensemble.input_dim));
    double acc = 0.0;
    for (const Tree& t : ensemble.trees) acc += t.eval(x);
    return sigmoid(ensemble.base_score_logit + ensemble.eta * acc);
}

namespace {

nlohmann::json node_to_json(const Tree& tree, int id) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf) return nlohmann::json{{"leaf", node.leaf_weight}};
    return nlohmann::json{{"feature", node.feature},
                          {"threshold", node.threshold},
                          {"left", node_to_json(tree, node.left)},
                          {"right", node_to_json(tree, node.right)}};
}

int node_from_json(const nlohmann::json& doc, Tree& tree) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (doc.contains("leaf")) {
        tree.nodes[static_cast<std::size_t>(id)].leaf_weight = doc.at("leaf").get<double>();
        return id;
    }
    const int left = node_from_json(doc.at("left"), tree);
    const int right = node_from_json(doc.at("right"), tree);
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    node.is_leaf = false;
    node.feature = doc.at("feature").get<int>();
    node.threshold = doc.at("threshold").get<double>();
    node.left = left;
    node.right = right;
    return id;
}

} // namespace

nlohmann::json to_json(const GbtEnsemble& ensemble, const GbtConfig& cfg) {
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& t : ensemble.trees) trees.push_back(node_to_json(t, 0));
    return nlohmann::json{{"schema_version", 1},
                          {"config",
                           {{"max_depth", cfg.max_depth},
                            {"eta", cfg.eta},
                            {"subsample_rows", cfg.subsample_rows},
                            {"lambda", cfg.lambda},
                            {"min_child_hessian", cfg.min_child_hessian},
                            {"max_rounds", cfg.max_rounds},
                            {"patience_rounds", cfg.patience_rounds},
                            {"seed", cfg.seed}}},
                          {"base_score_logit", ensemble.base_score_logit},
                          {"eta", ensemble.eta},
                          {"input_dim", ensemble.input_dim},
                          {"trees", trees}};
}

std::pair<GbtEnsemble, GbtConfig> from_json(const nlohmann::json& doc) {
    if (doc.at("schema_version").get<int>() != 1)
        throw VersionMismatch("unsupported gbt schema version");
    GbtConfig cfg;
    const auto& c = doc.at("config");
    cfg.max_depth = c.at("max_depth").get<int>();
    cfg.eta = c.at("eta").get<double>();
    cfg.subsample_rows = c.at("subsample_rows").get<double>();
    cfg.lambda = c.at("lambda").get<double>();
    cfg.min_child_hessian = c.at("min_child_hessian").get<double>();
    cfg.max_rounds = c.at("max_rounds").get<int>();
    cfg.patience_rounds = c.at("patience_rounds").get<int>();
    cfg.seed = c.at("seed").get<std::uint64_t>();

    GbtEnsemble ens;
    ens.base_score_logit = doc.at("base_score_logit").get<double>();
    ens.eta = doc.at("eta").get<double>();
    ens.input_dim = doc.at("input_dim").get<std::size_t>();
    for (const auto& t : doc.at("trees")) {
        Tree tree;
        node_from_json(t, tree);
        ens.trees.push_back(std::move(tree));
    }
    return {std::move(ens), cfg};
}

} // namespace ascan::gbt
