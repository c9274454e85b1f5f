#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "indictts/common/random.hpp"

namespace indictts::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "indictts-test-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Audio sine(double freqHz, double seconds, int sampleRate, double amplitude) {
  Audio a;
  a.sampleRate = sampleRate;
  a.samples.resize(static_cast<std::size_t>(std::llround(seconds * sampleRate)));
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    a.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freqHz * static_cast<double>(i) / sampleRate);
  }
  return a;
}

Audio white_noise(double seconds, std::uint64_t seed, int sampleRate, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, amplitude);
  Audio a;
  a.sampleRate = sampleRate;
  a.samples.resize(static_cast<std::size_t>(std::llround(seconds * sampleRate)));
  for (double& s : a.samples) s = dist(rng);
  return a;
}

Audio silence(double seconds, int sampleRate) {
  Audio a;
  a.sampleRate = sampleRate;
  a.samples.assign(static_cast<std::size_t>(std::llround(seconds * sampleRate)), 0.0);
  return a;
}

Audio speech_like(double seconds, double f0, double tilt, std::uint64_t seed, int sampleRate) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.003);
  Audio a;
  a.sampleRate = sampleRate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * sampleRate));
  a.samples.resize(n);
  const double pi = std::numbers::pi;
  const double syllableRate = 3.5 + unit_uniform(rng);
  const double vibratoPhase = 2 * pi * unit_uniform(rng);
  double phase = 0.0;
  const int harmonics = static_cast<int>(std::min(5000.0, 0.45 * sampleRate) / f0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sampleRate;
    const double inst = f0 * (1.0 + 0.03 * std::sin(2 * pi * 5.0 * t + vibratoPhase));
    phase += 2 * pi * inst / sampleRate;
    double v = 0.0;
    for (int k = 1; k <= harmonics; ++k) v += std::sin(k * phase) / std::pow(k, tilt);
    const double env = 0.55 + 0.45 * std::sin(2 * pi * syllableRate * t);
    a.samples[i] = 0.25 * env * v + noise(rng);
  }
  return a;
}

double rms(const std::vector<double>& x, std::size_t from) {
  double acc = 0.0;
  for (std::size_t i = from; i < x.size(); ++i) acc += x[i] * x[i];
  return x.size() > from ? std::sqrt(acc / static_cast<double>(x.size() - from)) : 0.0;
}

namespace {

struct VoiceSpec {
  frontend::Language language;
  const char* speaker;
  double f0;
  double tilt;
  std::vector<const char*> lines;
};

}  // namespace

std::vector<SyntheticCorpus> write_synthetic_corpus(const fs::path& root, int sampleRate) {
  using frontend::Language;
  const std::vector<VoiceSpec> voices = {
      {Language::Hindi, "hin_m1", 110.0, 1.0, {"कमल नयन", "राम घर जा रहा है", "आज मौसम अच्छा है", "वह पुस्तक पढ़ता है", "नदी का पानी"}},
      {Language::Bengali, "ben_f1", 210.0, 1.6, {"আমার সোনার বাংলা", "নদীর জল", "আজ বৃষ্টি হবে", "সে বই পড়ে", "কমল ফুল"}},
      {Language::Tamil, "tam_m1", 140.0, 1.3, {"வணக்கம் உலகம்", "அடி", "கடல் அலை", "அவன் படம் பார்த்தான்", "மழை பெய்கிறது"}},
  };
  const double durations[] = {6.0, 7.0, 8.0, 9.0, 10.0};

  std::vector<SyntheticCorpus> out;
  for (const auto& v : voices) {
    SyntheticCorpus c{root / v.speaker, v.language, v.speaker, {}};
    fs::create_directories(c.root / corpus::kAudioDir);
    std::ofstream tsv(c.root / corpus::kTranscriptFile);
    for (std::size_t i = 0; i < v.lines.size(); ++i) {
      const std::string id = std::string(v.speaker) + "_" + std::to_string(i + 1);
      tsv << id << '\t' << v.lines[i] << '\n';
      const Audio a = speech_like(durations[i], v.f0, v.tilt, fnv1a(id), sampleRate);
      write_wav(c.root / corpus::kAudioDir / (id + ".wav"), a);
      c.ids.push_back(id);
    }
    out.push_back(std::move(c));
  }
  return out;
}

corpus::Manifest metadata_manifest(frontend::Language lang, const std::string& speaker, int count, double seconds) {
  std::vector<corpus::UtteranceRecord> records;
  for (int i = 0; i < count; ++i) {
    corpus::UtteranceRecord r;
    r.id = speaker + "_" + std::to_string(i);
    r.language = lang;
    r.family = frontend::family_of(lang);
    r.script = frontend::script_of(lang);
    r.speaker = speaker;
    r.text = "-";
    r.audioPath = "wav/" + r.id + ".wav";
    r.durationSec = seconds;
    r.sampleRate = 22050;
    records.push_back(std::move(r));
  }
  return corpus::make_manifest(std::move(records), {"metadata fixture"});
}

std::vector<int> ratings_with_sum(int count, int sum, std::uint64_t seed) {
  if (sum < count || sum > 5 * count) throw std::invalid_argument("sum out of reach");
  // As even as possible, then shuffled.
  std::vector<int> v(static_cast<std::size_t>(count), sum / count);
  for (int i = 0; i < sum % count; ++i) ++v[static_cast<std::size_t>(i)];
  // Spread a little so the fixture is not flat: move one point between
  // pairs while staying inside the scale.
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
    if (v[i] < 5 && v[i + 1] > 1) {
      ++v[i];
      --v[i + 1];
    }
  }
  const auto perm = seeded_permutation(v.size(), seed);
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
  return out;
}

nlohmann::json scale_session_config(eval::TestKind kind, const std::string& id, int rated, int natural) {
  nlohmann::json stimuli = nlohmann::json::array();
  if (kind == eval::TestKind::SpeakerSimilarity) {
    stimuli.push_back({{"utteranceId", "ref"}, {"audioPath", "ref.wav"}, {"role", "referenceSpeaker"}});
  }
  for (int i = 0; i < rated; ++i) {
    const auto u = "syn" + std::to_string(i);
    stimuli.push_back({{"utteranceId", u}, {"audioPath", u + ".wav"}, {"role", "synthesized"}});
  }
  for (int i = 0; i < natural; ++i) {
    const auto u = "nat" + std::to_string(i);
    stimuli.push_back({{"utteranceId", u}, {"audioPath", u + ".wav"}, {"role", "natural"}});
  }
  return {{"id", id}, {"kind", std::string(eval::to_string(kind))}, {"stimuli", stimuli}};
}

std::vector<eval::RatingRecord> scale_ratings(const eval::TestSession& s, int listeners, int sum, std::uint64_t seed) {
  std::vector<std::size_t> synth;
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < s.stimuli.size(); ++i) {
    if (s.stimuli[i].role == eval::StimulusRole::synthesized) synth.push_back(i);
    if (s.stimuli[i].role == eval::StimulusRole::natural) anchors.push_back(i);
  }
  const auto values = ratings_with_sum(listeners * static_cast<int>(synth.size()), sum, seed);
  std::vector<eval::RatingRecord> out;
  std::size_t k = 0;
  for (int l = 0; l < listeners; ++l) {
    const auto listener = "L" + std::to_string(l + 1);
    for (std::size_t i : synth) {
      out.push_back({s.id, listener, s.stimuli[i].id, values[k++], "2020-01-01T00:00:00Z"});
    }
    for (std::size_t i : anchors) out.push_back({s.id, listener, s.stimuli[i].id, 5, "2020-01-01T00:00:00Z"});
  }
  return out;
}

}  // namespace indictts::testing
