#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ascan/dnn.hpp"
#include "ascan/featex.hpp"
#include "ascan/gbt.hpp"

namespace ascan::model {

enum class ModelType { Dnn, Gbt };
enum class FeatureMode { Document, Archive, Custom };

/// Serialized model plus the feature plan it expects.
struct ModelFile {
    ModelType type = ModelType::Gbt;
    FeatureMode mode = FeatureMode::Custom;
    std::string model_id;
    std::size_t input_dim = 0;
    std::vector<featex::Block> layout;

    dnn::DnnModel dnn_model;
    dnn::TrainConfig dnn_cfg;
    gbt::GbtEnsemble gbt_model;
    gbt::GbtConfig gbt_cfg;
};

FeatureMode mode_for_dim(std::size_t dim);
std::vector<featex::Block> layout_for_mode(FeatureMode mode, std::size_t dim);
const char* mode_name(FeatureMode mode);
const char* type_name(ModelType type);

void save(const ModelFile& file, const std::filesystem::path& path);
ModelFile load(const std::filesystem::path& path);

/// Scores one feature row with whichever model is inside.
double score_row(const ModelFile& file, std::span<const double> row);

} // namespace ascan::model
