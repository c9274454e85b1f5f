#pragma once

#include <filesystem>
#include "json.hpp"
#include <string>

#include "indictts/features/types.hpp"

namespace indictts::features {

// Binary layout: "ITMX", uint32 rows, uint32 cols (little-endian), then
// rows*cols little-endian float32 in row-major order.
inline constexpr char kMatrixMagic[4] = {'I', 'T', 'M', 'X'};

std::string encode_matrix(const Matrix& m);
Matrix decode_matrix(std::string_view bytes);

// Writes `path` and the metadata sidecar `path` + ".json".
void write_matrix(const std::filesystem::path& path, const Matrix& m, const nlohmann::json& meta);
// Throws IoError or BadMatrixFile.
Matrix read_matrix(const std::filesystem::path& path);
nlohmann::json read_matrix_meta(const std::filesystem::path& path);

nlohmann::json to_json(const MelParams& p);
MelParams mel_params_from_json(const nlohmann::json& j);

}  // namespace indictts::features
