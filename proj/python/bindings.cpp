#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "indictts/attention/gradcheck.hpp"
#include "indictts/common/error.hpp"
#include "indictts/corpus/manifest.hpp"
#include "indictts/eval/scenario.hpp"
#include "indictts/eval/stats.hpp"
#include "indictts/features/dtw.hpp"
#include "indictts/features/griffin_lim.hpp"
#include "indictts/features/line_noise.hpp"
#include "indictts/features/mel.hpp"
#include "indictts/frontend/cls.hpp"
#include "indictts/frontend/mlcm.hpp"
#include "indictts/speaker/embedding.hpp"

namespace py = pybind11;
using namespace indictts;

namespace {

Audio make_audio(std::vector<double> samples, int sampleRate) { return Audio{std::move(samples), sampleRate}; }

features::MelParams mel_params(int sampleRate, int fftSize, int hopSize, int winSize, int nMels, double fMin,
                               double fMax) {
  return {sampleRate, fftSize, hopSize, winSize, nMels, fMin, fMax};
}

features::McepTrack track(const features::Matrix& frames) {
  if (frames.cols() < 2) throw Error(ErrorCode::InvalidArgument, "tracks need c_0 and at least one more column");
  return {frames, static_cast<int>(frames.cols() - 1)};
}

speaker::SpeakerEmbedding embedding(const Eigen::VectorXd& v, const std::string& spk = {}) { return {v, spk, {}}; }

// Ratings as plain values; the session is synthesized around them.
std::vector<eval::RatingRecord> scale_ratings(const eval::TestSession& s, const std::vector<int>& values,
                                              eval::StimulusRole role) {
  std::vector<eval::RatingRecord> out;
  const eval::Stimulus* target = nullptr;
  for (const auto& st : s.stimuli) {
    if (st.role == role) target = &st;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({s.id, "l" + std::to_string(i), target->id, values[i], ""});
  }
  return out;
}

eval::TestSession fixture_session(eval::TestKind kind) {
  nlohmann::json cfg = {{"kind", std::string(eval::to_string(kind))}};
  if (kind == eval::TestKind::NativityPreference) {
    cfg["optionLabels"] = {"A", "B"};
    cfg["stimuli"] = {{{"utteranceId", "u1"}, {"audioPath", "u1.wav"}}};
  } else if (kind == eval::TestKind::DMOS) {
    cfg["stimuli"] = {{{"utteranceId", "u1"}, {"audioPath", "u1.wav"}, {"role", "synthesized"}},
                      {{"utteranceId", "u2"}, {"audioPath", "u2.wav"}, {"role", "natural"}}};
  } else {
    cfg["stimuli"] = {{{"utteranceId", "u1"}, {"audioPath", "u1.wav"}, {"role", "synthesized"}},
                      {{"utteranceId", "r1"}, {"audioPath", "r1.wav"}, {"role", "referenceSpeaker"}}};
  }
  return eval::session_from_config(cfg, "py", false);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Indic multilingual TTS workbench core";
  m.attr("__version__") = "0.1.0";

  // Messages start with the error code name, e.g. "UnmappableCodepoint: ...".
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  m.def("exit_code", [](const std::string& name) {
    for (int c = 1; c <= static_cast<int>(ErrorCode::UnknownSubcommand); ++c) {
      if (to_string(static_cast<ErrorCode>(c)) == name) return exit_code(static_cast<ErrorCode>(c));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown error code " + name);
  });

  // script-frontend
  m.def(
      "to_mlcm",
      [](const std::string& text, const std::string& lang) {
        const auto seq = frontend::to_mlcm(text, frontend::parse_language(lang));
        std::vector<std::string> names;
        for (const auto& t : seq.tokens) names.push_back(frontend::MlcmTable::builtin().label_name(t.labelId));
        return names;
      },
      py::arg("text"), py::arg("lang"));
  m.def(
      "transliterate",
      [](const std::string& text, const std::string& lang, const std::string& script) {
        return frontend::render_from_mlcm(frontend::to_mlcm(text, frontend::parse_language(lang)),
                                          frontend::parse_script(script));
      },
      py::arg("text"), py::arg("lang"), py::arg("script"));
  m.def("detect_script", [](const std::string& text) { return std::string(frontend::to_string(frontend::detect_script(text))); });
  m.def(
      "parse_to_cls",
      [](const std::string& text, const std::string& lang, std::optional<bool> schwa, std::optional<bool> voicing) {
        frontend::ParseOptions o{schwa, voicing};
        return frontend::parse_to_cls(text, frontend::parse_language(lang), o).phones;
      },
      py::arg("text"), py::arg("lang"), py::arg("schwa_deletion") = py::none(), py::arg("stop_voicing") = py::none());
  m.def("clean_text", [](const std::string& t) { return corpus::clean_text(t); });

  // corpus-pool
  m.def(
      "select_adaptation_subset",
      [](const std::vector<std::pair<std::string, double>>& utts, double minutes, std::uint64_t seed) {
        std::vector<corpus::UtteranceRecord> recs;
        for (const auto& [id, dur] : utts) {
          corpus::UtteranceRecord r;
          r.id = id;
          r.speaker = "spk";
          r.text = "x";
          r.audioPath = id + ".wav";
          r.durationSec = dur;
          r.sampleRate = 22050;
          recs.push_back(r);
        }
        std::vector<std::string> ids;
        for (const auto& r : corpus::select_adaptation_subset(corpus::make_manifest(recs, {}), minutes, seed).records) {
          ids.push_back(r.id);
        }
        return ids;
      },
      py::arg("utterances"), py::arg("target_minutes"), py::arg("seed") = kDefaultSeed);

  // feature-lab
  m.def(
      "mel_spectrogram",
      [](std::vector<double> samples, int sr, int fft, int hop, int win, int nMels, double fMin, double fMax) {
        return features::mel_spectrogram(make_audio(std::move(samples), sr), mel_params(sr, fft, hop, win, nMels, fMin, fMax))
            .frames;
      },
      py::arg("samples"), py::arg("sample_rate") = 22050, py::arg("fft_size") = 1024, py::arg("hop_size") = 256,
      py::arg("win_size") = 1024, py::arg("n_mels") = 80, py::arg("f_min") = 0.0, py::arg("f_max") = 8000.0);
  m.def(
      "mel_filterbank",
      [](int sr, int fft, int nMels, double fMin, double fMax) {
        return features::mel_filterbank(mel_params(sr, fft, 256, fft, nMels, fMin, fMax));
      },
      py::arg("sample_rate") = 22050, py::arg("fft_size") = 1024, py::arg("n_mels") = 80, py::arg("f_min") = 0.0,
      py::arg("f_max") = 8000.0);
  m.def(
      "mcep", [](const features::Matrix& logMel, int order) { return features::mcep(logMel, order).frames; },
      py::arg("log_mel"), py::arg("order") = features::kDefaultMcepOrder);
  m.def(
      "dtw_align",
      [](const features::Matrix& ref, const features::Matrix& syn) {
        const auto a = features::dtw_align(ref, syn, features::mcd_distance());
        return py::make_tuple(a.path.steps, a.cost);
      },
      py::arg("ref"), py::arg("syn"));
  m.def(
      "mcd", [](const features::Matrix& ref, const features::Matrix& syn) { return features::mcd(track(ref), track(syn)); },
      py::arg("ref"), py::arg("syn"));
  m.def(
      "notch_filter",
      [](std::vector<double> samples, int sr, double f0, double q) {
        return features::notch_filter(make_audio(std::move(samples), sr), f0, q).samples;
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("f0"), py::arg("q") = features::kDefaultNotchQ);
  m.def(
      "detect_line_noise",
      [](std::vector<double> samples, int sr) {
        std::vector<double> freqs;
        for (const auto& c : features::detect_line_noise(make_audio(std::move(samples), sr))) freqs.push_back(c.frequencyHz);
        return freqs;
      },
      py::arg("samples"), py::arg("sample_rate"));
  m.def(
      "griffin_lim",
      [](const features::Matrix& logMel, int sr, int iterations, std::uint64_t seed) {
        features::MelSpectrogram mel{logMel, {}};
        mel.params.sampleRate = sr;
        mel.params.nMels = static_cast<int>(logMel.cols());
        return features::griffin_lim(mel, iterations, seed).samples;
      },
      py::arg("log_mel"), py::arg("sample_rate") = 22050, py::arg("iterations") = features::kDefaultGriffinLimIterations,
      py::arg("seed") = kDefaultSeed);

  // speaker-space
  m.def(
      "mean_speaker_embedding",
      [](const std::map<std::string, Eigen::VectorXd>& vectors, const std::map<std::string, std::string>& membership,
         const std::string& spk) {
        speaker::EmbeddingMap embs;
        for (const auto& [k, v] : vectors) embs[k] = embedding(v);
        speaker::Membership mem(membership.begin(), membership.end());
        return speaker::mean_speaker_embedding(embs, spk, mem).vector;
      },
      py::arg("embeddings"), py::arg("membership"), py::arg("speaker"));
  m.def(
      "condition_encoder_states",
      [](const features::Matrix& states, const Eigen::VectorXd& emb) {
        return speaker::condition_encoder_states(states, embedding(emb));
      },
      py::arg("states"), py::arg("embedding"));
  m.def(
      "cosine_similarity",
      [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return speaker::cosine_similarity(embedding(a), embedding(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "toy_embedding",
      [](std::vector<double> samples, int sr) { return speaker::toy_embedding(make_audio(std::move(samples), sr)).vector; },
      py::arg("samples"), py::arg("sample_rate"));

  // attention-core
  m.def("guided_attention_weight", &attention::guided_attention_weight, py::arg("n"), py::arg("N"), py::arg("t"),
        py::arg("T"), py::arg("g") = attention::kDefaultGuidedG);
  m.def(
      "guided_attention_loss",
      [](const features::Matrix& a, double g) { return attention::guided_attention_loss(a, {g}); }, py::arg("alignment"),
      py::arg("g") = attention::kDefaultGuidedG);
  m.def(
      "location_sensitive_attention",
      [](const Eigen::VectorXd& query, const features::Matrix& memory, const Eigen::VectorXd& prev,
         const features::Matrix& wq, const features::Matrix& wm, const features::Matrix& wl, const features::Matrix& kernel,
         const Eigen::VectorXd& v, const Eigen::VectorXd& b) {
        attention::AttentionParams p{wq, wm, wl, kernel, v, b};
        const auto step = attention::location_sensitive_attention(query, memory, prev, p);
        return py::make_tuple(step.context, step.alignment);
      },
      py::arg("query"), py::arg("memory"), py::arg("prev_alignment"), py::arg("query_projection"),
      py::arg("memory_projection"), py::arg("location_projection"), py::arg("location_kernel"), py::arg("score_vector"),
      py::arg("bias"));
  m.def(
      "attention_grad_check",
      [](std::uint64_t seed, double eps, bool mutate) {
        const auto inst = attention::random_instance(seed);
        return (mutate ? attention::mutated_grad_check(inst, eps) : attention::attention_grad_check(inst, eps))
            .maxRelativeError;
      },
      py::arg("seed") = kDefaultSeed, py::arg("eps") = 1e-5, py::arg("mutate") = false);

  // eval-service statistics
  m.def("round_to_hundredths", &eval::round_to_hundredths);
  m.def(
      "preference_percentages",
      [](int a, int b) {
        const auto s = fixture_session(eval::TestKind::NativityPreference);
        std::vector<eval::RatingRecord> rs;
        for (int i = 0; i < a + b; ++i) rs.push_back({s.id, "l" + std::to_string(i), s.stimuli[0].id, i < a ? "A" : "B", ""});
        const auto r = eval::compute_preference(s, rs);
        return py::make_tuple(r.percentA, r.percentB);
      },
      py::arg("count_a"), py::arg("count_b"));
  m.def(
      "dmos",
      [](const std::vector<int>& synthesized) {
        const auto s = fixture_session(eval::TestKind::DMOS);
        return eval::compute_dmos(s, scale_ratings(s, synthesized, eval::StimulusRole::synthesized)).synthesized.rounded;
      },
      py::arg("synthesized_ratings"));
  m.def(
      "similarity",
      [](const std::vector<int>& ratings) {
        const auto s = fixture_session(eval::TestKind::SpeakerSimilarity);
        return eval::compute_similarity_score(s, scale_ratings(s, ratings, eval::StimulusRole::synthesized)).score.rounded;
      },
      py::arg("ratings"));
  m.def(
      "plan_scenarios",
      [](const std::vector<std::string>& seenLangs, const std::vector<std::string>& seenSpks,
         const std::vector<std::string>& langs, const std::vector<std::string>& spks) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& e : eval::plan_scenarios(seenLangs, seenSpks, langs, spks).entries) {
          out.emplace_back(e.textLanguage, e.speaker, std::string(1, e.label));
        }
        return out;
      },
      py::arg("seen_languages"), py::arg("seen_speakers"), py::arg("languages"), py::arg("speakers"));
}
