#include "indictts/speaker/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "indictts/common/error.hpp"
#include "indictts/common/tsv.hpp"

namespace indictts::speaker {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

void check_dim(const SpeakerEmbedding& e) {
  if (e.vector.size() != kEmbeddingDim) {
    throw Error(ErrorCode::BadDimension, "embedding has " + std::to_string(e.vector.size()) + " components, expected " +
                                             std::to_string(kEmbeddingDim));
  }
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream f(file, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + file.string());
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + file.string());
}

}  // namespace

EmbeddingMap parse_embeddings(std::string_view text) {
  EmbeddingMap out;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      if (pos > start) tokens.push_back(line.substr(start, pos - start));
    }
    SpeakerEmbedding e;
    e.vector.resize(static_cast<Eigen::Index>(tokens.size() - 1));
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      double v = 0.0;
      const auto tok = tokens[i];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::CorruptArchive, at_line(lineNo) + "bad value '" + std::string(tok) + "'");
      }
      e.vector(static_cast<Eigen::Index>(i - 1)) = v;
    }
    if (e.vector.size() != kEmbeddingDim) {
      throw Error(ErrorCode::BadDimension, at_line(lineNo) + std::to_string(e.vector.size()) +
                                               " values, expected " + std::to_string(kEmbeddingDim));
    }
    if (!out.emplace(std::string(tokens[0]), std::move(e)).second) {
      throw Error(ErrorCode::DuplicateUtterance, at_line(lineNo) + "repeated id '" + std::string(tokens[0]) + "'");
    }
  }
  return out;
}

EmbeddingMap load_embeddings(const std::filesystem::path& file) { return parse_embeddings(read_file(file)); }

std::string format_embeddings(const EmbeddingMap& embs) {
  std::string out;
  char buf[32];
  for (const auto& [id, e] : embs) {
    check_dim(e);
    out += id;
    for (Eigen::Index i = 0; i < e.vector.size(); ++i) {
      // %.17g round-trips doubles exactly.
      std::snprintf(buf, sizeof buf, " %.17g", e.vector(i));
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

void write_embeddings(const std::filesystem::path& file, const EmbeddingMap& embs) {
  write_text(file, format_embeddings(embs));
}

Membership parse_membership(std::string_view text) {
  Membership out;
  for (const TsvRow& row : parse_tsv(text)) {
    if (row.fields.size() != 2 || row.fields[0].empty() || row.fields[1].empty()) {
      throw Error(ErrorCode::CorruptArchive, at_line(row.lineNumber) + "expected utterance-id<TAB>speaker-id");
    }
    if (!out.emplace(std::string(row.fields[0]), std::string(row.fields[1])).second) {
      throw Error(ErrorCode::DuplicateUtterance, at_line(row.lineNumber) + "repeated id");
    }
  }
  return out;
}

Membership load_membership(const std::filesystem::path& file) { return parse_membership(read_file(file)); }

SpeakerEmbedding mean_speaker_embedding(const EmbeddingMap& embs, std::string_view speaker,
                                        const Membership& membership, bool lengthNormalize) {
  SpeakerEmbedding out;
  out.speaker = std::string(speaker);
  out.vector = Eigen::VectorXd::Zero(kEmbeddingDim);
  for (const auto& [utt, spk] : membership) {
    if (spk != speaker) continue;
    const auto it = embs.find(utt);
    if (it == embs.end()) throw Error(ErrorCode::MissingEmbedding, "no embedding for utterance '" + utt + "'");
    check_dim(it->second);
    if (lengthNormalize) {
      const double norm = it->second.vector.norm();
      if (norm == 0.0) throw Error(ErrorCode::ZeroVector, "cannot length-normalize '" + utt + "'");
      out.vector += it->second.vector / norm;
    } else {
      out.vector += it->second.vector;
    }
    out.sourceUtterances.push_back(utt);
  }
  if (out.sourceUtterances.empty()) {
    throw Error(ErrorCode::UnknownSpeaker, "speaker '" + std::string(speaker) + "' has no utterances");
  }
  out.vector /= static_cast<double>(out.sourceUtterances.size());
  return out;
}

features::Matrix condition_encoder_states(const features::Matrix& states, const SpeakerEmbedding& emb) {
  check_dim(emb);
  if (states.rows() == 0) throw Error(ErrorCode::InvalidArgument, "encoder state matrix has no rows");
  features::Matrix out(states.rows(), states.cols() + kEmbeddingDim);
  out.leftCols(states.cols()) = states;
  out.rightCols(kEmbeddingDim) = emb.vector.transpose().replicate(states.rows(), 1);
  return out;
}

double cosine_similarity(const SpeakerEmbedding& a, const SpeakerEmbedding& b) {
  if (a.vector.size() != b.vector.size()) throw Error(ErrorCode::BadDimension, "embedding sizes differ");
  const double na = a.vector.norm();
  const double nb = b.vector.norm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  return std::clamp(a.vector.dot(b.vector) / (na * nb), -1.0, 1.0);
}

}  // namespace indictts::speaker
