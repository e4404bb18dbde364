#include "ascan/model_file.hpp"

#include <fstream>

#include "ascan/mat.hpp"

namespace ascan::model {

using nlohmann::json;

FeatureMode mode_for_dim(std::size_t dim) {
    if (dim == featex::document_dims()) return FeatureMode::Document;
    if (dim == featex::archive_dims()) return FeatureMode::Archive;
    return FeatureMode::Custom;
}

std::vector<featex::Block> layout_for_mode(FeatureMode mode, std::size_t dim) {
    switch (mode) {
    case FeatureMode::Document: return featex::document_layout();
    case FeatureMode::Archive: return featex::archive_layout();
    case FeatureMode::Custom: return {{"features", 0, dim}};
    }
    return {};
}

const char* mode_name(FeatureMode mode) {
    switch (mode) {
    case FeatureMode::Document: return "document";
    case FeatureMode::Archive: return "archive";
    case FeatureMode::Custom: return "custom";
    }
    return "?";
}

const char* type_name(ModelType type) {
    return type == ModelType::Dnn ? "dnn" : "gbt";
}

namespace {

FeatureMode mode_from_name(const std::string& name) {
    if (name == "document") return FeatureMode::Document;
    if (name == "archive") return FeatureMode::Archive;
    return FeatureMode::Custom;
}

} // namespace

void save(const ModelFile& file, const std::filesystem::path& path) {
    json layout = json::array();
    for (const auto& block : file.layout)
        layout.push_back({{"block", block.name}, {"start", block.start}, {"length", block.length}});

    json doc{{"schema_version", 1},
             {"model_type", type_name(file.type)},
             {"model_id", file.model_id},
             {"feature_mode", mode_name(file.mode)},
             {"input_dim", file.input_dim},
             {"feature_layout", layout}};
    doc["model"] = file.type == ModelType::Dnn ? dnn::to_json(file.dnn_model, file.dnn_cfg)
                                               : gbt::to_json(file.gbt_model, file.gbt_cfg);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open model file for write: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("short write: " + path.string());
}

ModelFile load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path.string());
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw BadMagic("model file is not valid JSON: " + path.string());
    if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != 1)
        throw VersionMismatch("unsupported model file schema");

    ModelFile file;
    const auto type = doc.at("model_type").get<std::string>();
    file.type = type == "dnn" ? ModelType::Dnn : ModelType::Gbt;
    file.model_id = doc.at("model_id").get<std::string>();
    file.mode = mode_from_name(doc.at("feature_mode").get<std::string>());
    file.input_dim = doc.at("input_dim").get<std::size_t>();
    for (const auto& block : doc.at("feature_layout"))
        file.layout.push_back({block.at("block").get<std::string>(),
                               block.at("start").get<std::size_t>(),
                               block.at("length").get<std::size_t>()});

    if (file.type == ModelType::Dnn)
        std::tie(file.dnn_model, file.dnn_cfg) = dnn::from_json(doc.at("model"));
    else
        std::tie(file.gbt_model, file.gbt_cfg) = gbt::from_json(doc.at("model"));
    return file;
}

double score_row(const ModelFile& file, std::span<const double> row) {
    if (row.size() != file.input_dim)
        throw ShapeMismatch("row has " + std::to_string(row.size()) + " features, model expects " +
                            std::to_string(file.input_dim));
    if (file.type == ModelType::Gbt) return gbt::predict(file.gbt_model, row);
    Mat batch(1, row.size());
    std::copy(row.begin(), row.end(), batch.data.begin());
    return dnn::forward(file.dnn_model, batch, dnn::Mode::Infer).front();
}

} // namespace ascan::model
