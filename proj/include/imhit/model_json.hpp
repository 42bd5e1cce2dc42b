#pragma once

#include "imhit/model.hpp"

#include <filesystem>
#include <json.hpp>
#include <stdexcept>
#include <string>

namespace imhit {

/// The model file could not be read.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model file schema:
///
///   {"states": ["a", "b", ...],
///    "target": ["b"],
///    "rows": {"a": {"vertices": [[0.5, 0.5], ...]},
///             "b": {"constraints": [{"a": {"a": 1.0}, "rel": ">=", "b": 0.3}]}}}
///
/// Labels are strings; index order is the order of "states". Coefficients
/// omitted from a constraint's "a" map are zero.
ModelData model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const ModelData& data);

/// Throws Error(InvalidModel) on malformed JSON or schema violations.
ModelData parse_model(const std::string& text);
ModelData load_model_file(const std::filesystem::path& path);

std::string serialize_model(const ModelData& data);

} // namespace imhit
