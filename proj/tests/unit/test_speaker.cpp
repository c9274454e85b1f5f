#include <algorithm>
#include <random>
#include <sstream>

#include "../oracles/oracles.hpp"
#include "../support/fixtures.hpp"
#include "helpers.hpp"
#include "indictts/common/random.hpp"
#include "indictts/speaker/embedding.hpp"

using namespace indictts;
using namespace indictts::speaker;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n = kEmbeddingDim) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 2.0 * unit_uniform(rng) - 1.0;
  return v;
}

std::string archive_line(const std::string& id, const Eigen::VectorXd& v) {
  std::ostringstream out;
  out.precision(17);
  out << id;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << v(i);
  out << '\n';
  return out.str();
}

}  // namespace

TEST_SUITE("speaker-space") {
  TEST_CASE("archive parsing") {
    std::mt19937_64 rng(1);
    std::string text;
    for (int i = 0; i < 3; ++i) text += archive_line("utt" + std::to_string(i), random_vector(rng));
    const auto embs = parse_embeddings(text);
    CHECK(embs.size() == 3);
    CHECK(parse_embeddings(format_embeddings(embs)).at("utt1").vector == embs.at("utt1").vector);

    CHECK_ERROR(parse_embeddings(archive_line("short", random_vector(rng, 500))), BadDimension);
    CHECK_ERROR(parse_embeddings(archive_line("long", random_vector(rng, 513))), BadDimension);
    CHECK_ERROR(parse_embeddings(text + archive_line("utt0", random_vector(rng))), DuplicateUtterance);
    std::string corrupt = archive_line("bad", random_vector(rng));
    corrupt.replace(corrupt.find(' ') + 1, 1, "x");
    CHECK_ERROR(parse_embeddings(corrupt), CorruptArchive);
  }

  TEST_CASE("file round trip") {
    testing::TempDir tmp;
    std::mt19937_64 rng(2);
    EmbeddingMap embs;
    embs["a"] = {random_vector(rng), "", {"a"}};
    write_embeddings(tmp / "x.ark", embs);
    CHECK(load_embeddings(tmp / "x.ark").at("a").vector == embs.at("a").vector);
  }

  TEST_CASE("membership") {
    const auto m = parse_membership("u1\tspkA\nu2\tspkB\n");
    CHECK(m.at("u2") == "spkB");
    CHECK_ERROR(parse_membership("u1\tspkA\nu1\tspkB\n"), DuplicateUtterance);
    CHECK_ERROR(parse_membership("u1\n"), CorruptArchive);
  }

  TEST_CASE("mean embedding examples") {
    std::mt19937_64 rng(3);
    const auto v = random_vector(rng);
    EmbeddingMap embs{{"a", {v, "", {}}}, {"b", {v, "", {}}}};
    const Membership m{{"a", "s"}, {"b", "s"}};
    CHECK(mean_speaker_embedding(embs, "s", m).vector.isApprox(v, 1e-15));
    embs["b"].vector = -v;
    CHECK(mean_speaker_embedding(embs, "s", m).vector.cwiseAbs().maxCoeff() == 0.0);
    CHECK_ERROR(mean_speaker_embedding(embs, "nobody", m), UnknownSpeaker);
    Membership missing = m;
    missing["c"] = "s";
    CHECK_ERROR(mean_speaker_embedding(embs, "s", missing), MissingEmbedding);
    embs["a"].vector.setZero();
    CHECK_ERROR(mean_speaker_embedding(embs, "s", m, true), ZeroVector);
  }

  TEST_CASE("mean embedding matches brute force") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      std::mt19937_64 rng(seed);
      EmbeddingMap embs;
      Membership mem;
      std::vector<std::vector<double>> mine;
      for (int i = 0; i < 10; ++i) {
        const auto id = "u" + std::to_string(i);
        const auto v = random_vector(rng);
        embs[id] = {v, "", {id}};
        mem[id] = "spk";
        mine.emplace_back(v.data(), v.data() + v.size());
      }
      embs["other"] = {random_vector(rng), "", {}};
      mem["other"] = "x";
      const auto got = mean_speaker_embedding(embs, "spk", mem);
      const auto want = oracle::mean_of(mine);
      CHECK(got.sourceUtterances.size() == 10);
      double worst = 0.0;
      for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(got.vector(static_cast<Eigen::Index>(i)) - want[i]));
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("length normalization") {
    std::mt19937_64 rng(4);
    const auto a = random_vector(rng), b = random_vector(rng);
    const EmbeddingMap embs{{"a", {3.0 * a, "", {}}}, {"b", {b, "", {}}}};
    const Membership m{{"a", "s"}, {"b", "s"}};
    const Eigen::VectorXd want = 0.5 * (a.normalized() + b.normalized());
    CHECK((mean_speaker_embedding(embs, "s", m, true).vector - want).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("conditioning") {
    std::mt19937_64 rng(5);
    features::Matrix states(3, 4);
    for (Eigen::Index i = 0; i < states.size(); ++i) states.data()[i] = unit_uniform(rng);
    const SpeakerEmbedding e{random_vector(rng), "s", {}};
    const auto out = condition_encoder_states(states, e);
    CHECK(out.rows() == 3);
    CHECK(out.cols() == 4 + 512);
    CHECK(out.leftCols(4) == states);
    for (Eigen::Index r = 0; r < 3; ++r) CHECK(out.row(r).tail(512).transpose() == e.vector);

    const SpeakerEmbedding zero{Eigen::VectorXd::Zero(512), "z", {}};
    const auto padded = condition_encoder_states(states, zero);
    CHECK(padded.rightCols(512).isZero(0.0));

    // Row permutation commutes with conditioning.
    const auto perm = seeded_permutation(3, 9);
    features::Matrix permuted(3, 4);
    for (Eigen::Index r = 0; r < 3; ++r) permuted.row(r) = states.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(r)]));
    const auto outPerm = condition_encoder_states(permuted, e);
    for (Eigen::Index r = 0; r < 3; ++r) CHECK(outPerm.row(r) == out.row(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(r)])));

    CHECK_ERROR(condition_encoder_states(states, SpeakerEmbedding{Eigen::VectorXd::Zero(10), "", {}}), BadDimension);
    CHECK_ERROR(condition_encoder_states(features::Matrix(0, 4), e), InvalidArgument);
  }

  TEST_CASE("cosine similarity") {
    std::mt19937_64 rng(6);
    const SpeakerEmbedding v{random_vector(rng), "", {}};
    const SpeakerEmbedding neg{-v.vector, "", {}};
    CHECK(cosine_similarity(v, v) == doctest::Approx(1.0));
    CHECK(cosine_similarity(v, neg) == doctest::Approx(-1.0));
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(512), e1 = Eigen::VectorXd::Zero(512);
    e0(0) = 1;
    e1(1) = 1;
    CHECK(cosine_similarity({e0, "", {}}, {e1, "", {}}) == 0.0);
    CHECK_ERROR(cosine_similarity({Eigen::VectorXd::Zero(512), "", {}}, v), ZeroVector);
  }

  TEST_CASE("toy embedding") {
    const Audio a = testing::speech_like(2.0, 120, 0.8, 1);
    const auto e1 = toy_embedding(a);
    CHECK(e1.vector.size() == 512);
    CHECK(toy_embedding(a).vector == e1.vector);

    Audio louder = a;
    for (double& s : louder.samples) s *= 2.0;  // +6 dB
    CHECK(cosine_similarity(e1, toy_embedding(louder)) > 0.99);

    // Same speaker, different utterance, vs a speaker with another tilt.
    const auto same = toy_embedding(testing::speech_like(2.0, 120, 0.8, 2));
    const auto other = toy_embedding(testing::speech_like(2.0, 120, 2.2, 3));
    CHECK(cosine_similarity(e1, other) < cosine_similarity(e1, same));

    CHECK_ERROR(toy_embedding(testing::silence(0.5)), TooShort);
  }
}
