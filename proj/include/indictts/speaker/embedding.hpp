#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "indictts/common/audio.hpp"
#include "indictts/features/types.hpp"

namespace indictts::speaker {

inline constexpr Eigen::Index kEmbeddingDim = 512;

struct SpeakerEmbedding {
  Eigen::VectorXd vector;
  std::string speaker;
  std::vector<std::string> sourceUtterances;
};

using EmbeddingMap = std::map<std::string, SpeakerEmbedding, std::less<>>;
using Membership = std::map<std::string, std::string, std::less<>>;

// Archive: one `utterance-id f1 ... f512` line per utterance, separated by
// spaces. Throws BadDimension, DuplicateUtterance or CorruptArchive.
EmbeddingMap parse_embeddings(std::string_view text);
EmbeddingMap load_embeddings(const std::filesystem::path& file);
std::string format_embeddings(const EmbeddingMap& embs);
void write_embeddings(const std::filesystem::path& file, const EmbeddingMap& embs);

// `utterance-id <TAB> speaker-id` lines. Throws CorruptArchive or
// DuplicateUtterance.
Membership parse_membership(std::string_view text);
Membership load_membership(const std::filesystem::path& file);

// Componentwise mean over the speaker's utterances, in utterance-id order.
// lengthNormalize divides each vector by its norm first. Throws
// UnknownSpeaker, MissingEmbedding (member without a vector), ZeroVector
// (length-normalizing a zero vector).
SpeakerEmbedding mean_speaker_embedding(const EmbeddingMap& embs, std::string_view speaker,
                                        const Membership& membership, bool lengthNormalize = false);

// [N x E] -> [N x (E + 512)] with the embedding replicated on every row.
// Throws BadDimension for a malformed embedding, InvalidArgument for N == 0.
features::Matrix condition_encoder_states(const features::Matrix& states, const SpeakerEmbedding& emb);

// Throws ZeroVector or BadDimension.
double cosine_similarity(const SpeakerEmbedding& a, const SpeakerEmbedding& b);

// Deterministic stand-in for an external extractor: statistics of
// frame-mean-normalized log-mel (band means, standard deviations, lag-1 and
// lag-2 band correlations, mean absolute deltas), zero-padded to 512.
// Throws TooShort for audio under one second.
SpeakerEmbedding toy_embedding(const Audio& audio);

}  // namespace indictts::speaker
