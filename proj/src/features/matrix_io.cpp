#include "indictts/features/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "indictts/common/error.hpp"
#include "indictts/common/tsv.hpp"
#include "json.hpp"

namespace indictts::features {

namespace {

static_assert(std::endian::native == std::endian::little, "matrix files are little-endian");

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

std::uint32_t get_u32(std::string_view s, std::size_t at) {
  std::uint32_t v;
  std::memcpy(&v, s.data() + at, 4);
  return v;
}

std::filesystem::path sidecar(const std::filesystem::path& p) { return p.string() + ".json"; }

void write_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::string encode_matrix(const Matrix& m) {
  std::string out(kMatrixMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  out.reserve(out.size() + static_cast<std::size_t>(m.size()) * 4);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto f = static_cast<float>(m(r, c));
      char b[4];
      std::memcpy(b, &f, 4);
      out.append(b, 4);
    }
  }
  return out;
}

Matrix decode_matrix(std::string_view bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMatrixMagic, 4) != 0) {
    throw Error(ErrorCode::BadMatrixFile, "missing matrix header");
  }
  const std::uint64_t rows = get_u32(bytes, 4);
  const std::uint64_t cols = get_u32(bytes, 8);
  if (bytes.size() != 12 + rows * cols * 4) {
    throw Error(ErrorCode::BadMatrixFile, "payload size does not match " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t at = 12;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, at += 4) {
      float f;
      std::memcpy(&f, bytes.data() + at, 4);
      m(r, c) = f;
    }
  }
  return m;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, const nlohmann::json& meta) {
  write_bytes(path, encode_matrix(m));
  nlohmann::json side = meta;
  side["rows"] = m.rows();
  side["cols"] = m.cols();
  write_bytes(sidecar(path), side.dump(2) + "\n");
}

Matrix read_matrix(const std::filesystem::path& path) { return decode_matrix(read_file(path)); }

nlohmann::json read_matrix_meta(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(sidecar(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadMatrixFile, std::string("sidecar: ") + e.what());
  }
}

nlohmann::json to_json(const MelParams& p) {
  return {{"sampleRate", p.sampleRate}, {"fftSize", p.fftSize}, {"hopSize", p.hopSize}, {"winSize", p.winSize},
          {"nMels", p.nMels},           {"fMin", p.fMin},       {"fMax", p.fMax}};
}

MelParams mel_params_from_json(const nlohmann::json& j) {
  MelParams p;
  try {
    p.sampleRate = j.value("sampleRate", p.sampleRate);
    p.fftSize = j.value("fftSize", p.fftSize);
    p.hopSize = j.value("hopSize", p.hopSize);
    p.winSize = j.value("winSize", p.winSize);
    p.nMels = j.value("nMels", p.nMels);
    p.fMin = j.value("fMin", p.fMin);
    p.fMax = j.value("fMax", p.fMax);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("mel params: ") + e.what());
  }
  return p;
}

}  // namespace indictts::features
