#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "indictts/common/audio.hpp"
#include "indictts/common/error.hpp"

namespace indictts {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

struct Layout {
  WavInfo info;
  std::uint64_t dataOffset = 0;
  std::uint64_t dataBytes = 0;
};

Layout parse_layout(std::istream& in, std::uint64_t fileSize, const std::string& name) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::UnreadableHeader, name + ": " + why);
  };
  unsigned char riff[12];
  if (!in.read(reinterpret_cast<char*>(riff), 12)) throw fail("file shorter than RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }
  Layout layout;
  bool haveFmt = false;
  std::uint16_t format = 0;
  std::uint64_t pos = 12;
  while (pos + 8 <= fileSize) {
    unsigned char head[8];
    in.seekg(static_cast<std::streamoff>(pos));
    if (!in.read(reinterpret_cast<char*>(head), 8)) break;
    const std::uint32_t size = le32(head + 4);
    const std::uint64_t body = pos + 8;
    if (std::memcmp(head, "fmt ", 4) == 0) {
      if (size < 16) throw fail("fmt chunk too small");
      unsigned char fmt[40] = {};
      const auto take = std::min<std::uint32_t>(size, 40);
      if (!in.read(reinterpret_cast<char*>(fmt), take)) throw fail("truncated fmt chunk");
      format = le16(fmt);
      layout.info.channels = le16(fmt + 2);
      layout.info.sampleRate = static_cast<int>(le32(fmt + 4));
      layout.info.bitsPerSample = le16(fmt + 14);
      if (format == kFormatExtensible && take >= 26) format = le16(fmt + 24);
      haveFmt = true;
    } else if (std::memcmp(head, "data", 4) == 0) {
      if (!haveFmt) throw fail("data chunk before fmt chunk");
      layout.dataOffset = body;
      // Streaming writers sometimes leave the size field at its maximum.
      layout.dataBytes = std::min<std::uint64_t>(size, fileSize - body);
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!haveFmt) throw fail("missing fmt chunk");
  if (layout.dataOffset == 0) throw fail("missing data chunk");
  if (format != kFormatPcm && format != kFormatFloat) throw fail("unsupported sample format");
  const int bits = layout.info.bitsPerSample;
  const bool okBits = format == kFormatFloat ? bits == 32 : (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  if (!okBits) throw fail("unsupported bit depth " + std::to_string(bits));
  if (layout.info.channels <= 0 || layout.info.sampleRate <= 0) throw fail("invalid channel count or rate");
  layout.info.isFloat = format == kFormatFloat;
  const std::uint64_t frameBytes = static_cast<std::uint64_t>(layout.info.channels) * (bits / 8);
  layout.info.frames = layout.dataBytes / frameBytes;
  return layout;
}

}  // namespace

WavInfo read_wav_info(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingAudio, path.string() + ": cannot open");
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(ErrorCode::UnreadableHeader, path.string() + ": cannot stat");
  return parse_layout(in, size, path.string()).info;
}

Audio read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingAudio, path.string() + ": cannot open");
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(ErrorCode::UnreadableHeader, path.string() + ": cannot stat");
  const Layout layout = parse_layout(in, size, path.string());
  const WavInfo& info = layout.info;
  const int bytesPerSample = info.bitsPerSample / 8;
  std::vector<unsigned char> raw(static_cast<std::size_t>(info.frames) * info.channels * bytesPerSample);
  in.clear();
  in.seekg(static_cast<std::streamoff>(layout.dataOffset));
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw Error(ErrorCode::UnreadableHeader, path.string() + ": truncated data chunk");
  }
  Audio audio;
  audio.sampleRate = info.sampleRate;
  audio.samples.resize(static_cast<std::size_t>(info.frames));
  const unsigned char* p = raw.data();
  for (std::size_t f = 0; f < audio.samples.size(); ++f) {
    double acc = 0.0;
    for (int c = 0; c < info.channels; ++c, p += bytesPerSample) {
      double v = 0.0;
      if (info.isFloat) {
        float x;
        std::uint32_t bits = le32(p);
        std::memcpy(&x, &bits, 4);
        v = x;
      } else if (bytesPerSample == 1) {
        v = (static_cast<int>(p[0]) - 128) / 128.0;
      } else if (bytesPerSample == 2) {
        v = static_cast<std::int16_t>(le16(p)) / 32768.0;
      } else if (bytesPerSample == 3) {
        std::int32_t x = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
        if (x & 0x800000) x -= 0x1000000;
        v = x / 8388608.0;
      } else {
        v = static_cast<std::int32_t>(le32(p)) / 2147483648.0;
      }
      acc += v;
    }
    audio.samples[f] = acc / info.channels;
  }
  return audio;
}

std::string encode_wav(const Audio& audio) {
  if (audio.sampleRate <= 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
  const auto dataBytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  std::string out;
  out.reserve(44 + dataBytes);
  out += "RIFF";
  put32(out, 36 + dataBytes);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(audio.sampleRate));
  put32(out, static_cast<std::uint32_t>(audio.sampleRate) * 2);
  put16(out, 2);
  put16(out, 16);
  out += "data";
  put32(out, dataBytes);
  for (double s : audio.samples) {
    const double clipped = std::clamp(s, -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::lround(clipped * 32767.0));
    put16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const Audio& audio) {
  const std::string bytes = encode_wav(audio);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot write");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

}  // namespace indictts
