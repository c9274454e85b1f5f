#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "indictts/attention/gradcheck.hpp"
#include "indictts/common/audio.hpp"
#include "indictts/common/error.hpp"
#include "indictts/common/random.hpp"
#include "indictts/corpus/manifest.hpp"
#include "indictts/eval/batch_mcd.hpp"
#include "indictts/eval/scenario.hpp"
#include "indictts/eval/server.hpp"
#include "indictts/features/dtw.hpp"
#include "indictts/features/griffin_lim.hpp"
#include "indictts/features/line_noise.hpp"
#include "indictts/features/matrix_io.hpp"
#include "indictts/features/mel.hpp"
#include "indictts/frontend/cls.hpp"
#include "indictts/frontend/mlcm.hpp"
#include "indictts/speaker/embedding.hpp"
#include "json.hpp"

namespace indictts::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kSubcommands = {"normalize", "parse", "pool",      "subset", "features", "mcd",
                                               "notch",     "embed", "gradcheck", "serve",  "scenarios"};

// Values shared by several subcommands; settable on the command line or in
// the --config file (same names, without the dashes).
struct Settings {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  features::MelParams mel;
  int mcepOrder = features::kDefaultMcepOrder;
  double notchQ = features::kDefaultNotchQ;
  double maxDuration = corpus::kMaxTrainingDurationSec;
  int griffinLimIterations = features::kDefaultGriffinLimIterations;
  double guidedG = attention::kDefaultGuidedG;
};

std::vector<fs::path> wav_inputs(const fs::path& in) {
  std::vector<fs::path> out;
  if (fs::is_directory(in)) {
    for (const auto& e : fs::directory_iterator(in)) {
      if (e.is_regular_file() && e.path().extension() == ".wav") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
  } else {
    out.push_back(in);
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// "dir:lang:speaker", split from the right so directories may contain ':'.
struct CorpusSpec {
  fs::path dir;
  frontend::Language language;
  std::string speaker;
};

CorpusSpec parse_corpus_spec(const std::string& s) {
  const auto second = s.rfind(':');
  const auto first = second == std::string::npos || second == 0 ? std::string::npos : s.rfind(':', second - 1);
  if (first == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "--corpus expects DIR:LANG:SPEAKER, got '" + s + "'");
  }
  return {s.substr(0, first), frontend::parse_language(s.substr(first + 1, second - first - 1)), s.substr(second + 1)};
}

std::optional<bool> parse_switch(const std::string& v, const char* what) {
  if (v == "auto" || v.empty()) return std::nullopt;
  if (v == "on") return true;
  if (v == "off") return false;
  throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be on, off or auto");
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indic multilingual TTS workbench: text frontend, corpus pooling, features, evaluation", "indictts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI file with defaults for the shared options");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Settings st;
  app.add_flag("--json", st.json, "Machine-readable JSON output");
  app.add_option("--seed", st.seed, "Seed for every seeded operation")->capture_default_str();
  app.add_option("--sample-rate", st.mel.sampleRate, "Sample rate (Hz)")->capture_default_str();
  app.add_option("--fft-size", st.mel.fftSize, "FFT size (samples)")->capture_default_str();
  app.add_option("--hop-size", st.mel.hopSize, "Hop size (samples)")->capture_default_str();
  app.add_option("--win-size", st.mel.winSize, "Window size (samples)")->capture_default_str();
  app.add_option("--n-mels", st.mel.nMels, "Mel bands")->capture_default_str();
  app.add_option("--f-min", st.mel.fMin, "Lowest mel frequency (Hz)")->capture_default_str();
  app.add_option("--f-max", st.mel.fMax, "Highest mel frequency (Hz)")->capture_default_str();
  app.add_option("--mcep-order", st.mcepOrder, "Mel-cepstrum order D (c_0 excluded from MCD)")->capture_default_str();
  app.add_option("--notch-q", st.notchQ, "Notch quality factor")->capture_default_str();
  app.add_option("--max-duration", st.maxDuration, "Longest training utterance kept (s)")->capture_default_str();
  app.add_option("--griffin-lim-iterations", st.griffinLimIterations, "Griffin-Lim iterations")->capture_default_str();
  app.add_option("--guided-g", st.guidedG, "Guided attention spread g")->capture_default_str();

  // normalize
  auto* normalize = app.add_subcommand("normalize", "Clean and NFC-normalize text; show MLCM tokens or transliterate");
  std::string normText, normLang, normTarget;
  normalize->add_option("text", normText, "Input text (UTF-8)")->required();
  normalize->add_option("--lang", normLang, "Language of the text")->required();
  normalize->add_option("--to", normTarget, "Render into this script via the MLCM");

  // parse
  auto* parse = app.add_subcommand("parse", "Parse text into the common phone label set");
  std::string parseText, parseLang, schwa = "auto", voicing = "auto";
  parse->add_option("text", parseText, "Input text (UTF-8)")->required();
  parse->add_option("--lang", parseLang, "Language of the text")->required();
  parse->add_option("--schwa-deletion", schwa, "on | off | auto (on for Indo-Aryan)")->capture_default_str();
  parse->add_option("--voicing", voicing, "on | off | auto (on for Tamil)")->capture_default_str();

  // pool
  auto* poolCmd = app.add_subcommand("pool", "Build, filter and pool per-speaker corpora of one family");
  std::vector<std::string> corpora, manifests;
  std::string poolFamily, poolOut;
  bool allowCross = false, verify = false;
  poolCmd->add_option("--corpus", corpora, "Corpus directory as DIR:LANG:SPEAKER (repeatable)");
  poolCmd->add_option("--manifest", manifests, "Existing manifest (repeatable)");
  poolCmd->add_option("--family", poolFamily, "IndoAryan or Dravidian")->required();
  poolCmd->add_flag("--allow-cross-family", allowCross, "Permit languages of another family");
  poolCmd->add_flag("--verify-durations", verify, "Decode audio and check header durations");
  poolCmd->add_option("--out", poolOut, "Write the pooled manifest here");

  // subset
  auto* subset = app.add_subcommand("subset", "Select a seeded adaptation subset of a target duration");
  std::string subsetIn, subsetOut;
  double targetMin = 0.0;
  subset->add_option("--manifest", subsetIn, "Input manifest")->required();
  subset->add_option("--target-min", targetMin, "Target duration (minutes)")->required();
  subset->add_option("--out", subsetOut, "Write the subset manifest here");

  // features
  auto* feats = app.add_subcommand("features", "Extract log-mel and mel-cepstrum matrices");
  std::string featIn, featOut, featGl;
  feats->add_option("--in", featIn, "WAV file or directory of WAVs")->required();
  feats->add_option("--out", featOut, "Output directory for <name>.mel / <name>.mcep")->required();
  feats->add_option("--griffin-lim", featGl, "Also resynthesize each input into this directory");

  // mcd
  auto* mcdCmd = app.add_subcommand("mcd", "DTW mel-cepstral distortion between files or paired directories");
  std::string mcdRef, mcdSyn, mcdReport;
  mcdCmd->add_option("--ref", mcdRef, "Reference WAV or directory")->required();
  mcdCmd->add_option("--syn", mcdSyn, "Synthesized WAV or directory")->required();
  mcdCmd->add_option("--report", mcdReport, "Write the JSON report here");

  // notch
  auto* notch = app.add_subcommand("notch", "Remove tonal line noise with notch filters");
  std::string notchIn, notchOut;
  std::vector<double> notchFreqs;
  notch->add_option("--in", notchIn, "Input WAV")->required();
  notch->add_option("--out", notchOut, "Output WAV")->required();
  notch->add_option("--freq", notchFreqs, "Notch frequency in Hz (repeatable); detected automatically if absent");

  // embed
  auto* embed = app.add_subcommand("embed", "Toy speaker embeddings, per-speaker means and similarity");
  std::string embIn, embOut, embArchive, embMembership, embSpeaker;
  bool lengthNorm = false;
  embed->add_option("--in", embIn, "WAV file or directory: write toy embeddings");
  embed->add_option("--out", embOut, "Embedding archive to write");
  embed->add_option("--archive", embArchive, "Embedding archive to read");
  embed->add_option("--membership", embMembership, "utterance<TAB>speaker file");
  embed->add_option("--speaker", embSpeaker, "Speaker whose mean embedding to compute");
  embed->add_flag("--length-normalize", lengthNorm, "Unit-normalize vectors before averaging");

  // gradcheck
  auto* grad = app.add_subcommand("gradcheck", "Finite-difference check of the attention gradients");
  int instances = 20;
  double eps = 1e-5;
  std::string dumpAlignment;
  grad->add_option("--instances", instances, "Number of seeded random instances")->capture_default_str();
  grad->add_option("--eps", eps, "Central-difference step")->capture_default_str();
  grad->add_option("--dump-alignment", dumpAlignment, "Write the first instance's alignment matrix here");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the listening-test and evaluation HTTP service");
  eval::ServerOptions srv;
  std::string dataDir = "eval-data", staticDir;
  serve->add_option("--host", srv.host, "Bind address")->capture_default_str();
  serve->add_option("--port", srv.port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--data-dir", dataDir, "Directory for the session and rating logs")->capture_default_str();
  serve->add_option("--static", staticDir, "Directory served at / (listening client)");

  // scenarios
  auto* scen = app.add_subcommand("scenarios", "Label language/speaker combinations as scenarios a-e");
  std::vector<std::string> seenLangs, seenSpks, langs, spks, natives;
  scen->add_option("--seen-languages", seenLangs, "Languages in training (comma-separated)")->required();
  scen->add_option("--seen-speakers", seenSpks, "Speakers in training (comma-separated)")->required();
  scen->add_option("--languages", langs, "Text languages to plan")->required();
  scen->add_option("--speakers", spks, "Speakers to plan")->required();
  scen->add_option("--native", natives, "SPEAKER=LANGUAGE when a speaker is not named after their language");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty()) {
      for (const auto& a : args) {
        if (a.empty() || a[0] == '-') continue;
        if (std::find(kSubcommands.begin(), kSubcommands.end(), a) == kSubcommands.end()) {
          err << "error: unknown subcommand '" << a << "'\n";
          return exit_code(ErrorCode::UnknownSubcommand);
        }
        break;
      }
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    features::validate(st.mel);
    json result;
    std::string text;

    if (normalize->parsed()) {
      const auto lang = frontend::parse_language(normLang);
      const std::string cleaned = corpus::clean_text(normText);
      const auto seq = frontend::to_mlcm(cleaned, lang);
      result = {{"text", cleaned}, {"tokens", frontend::format_tokens(seq)}};
      text = cleaned + "\n" + frontend::format_tokens(seq);
      if (!normTarget.empty()) {
        const auto target = frontend::parse_script(normTarget);
        const std::string rendered = frontend::render_from_mlcm(seq, target);
        result["rendered"] = rendered;
        result["script"] = frontend::to_string(target);
        text = rendered;
      }
    } else if (parse->parsed()) {
      frontend::ParseOptions opts;
      opts.schwaDeletion = parse_switch(schwa, "--schwa-deletion");
      opts.stopVoicing = parse_switch(voicing, "--voicing");
      const auto phones = frontend::parse_to_cls(parseText, frontend::parse_language(parseLang), opts);
      result = {{"phones", phones.phones}, {"wordBoundaries", phones.wordBoundaries}};
      text = phones.to_string();
    } else if (poolCmd->parsed()) {
      if (corpora.empty() && manifests.empty()) throw Error(ErrorCode::InvalidArgument, "give --corpus or --manifest");
      std::vector<corpus::Manifest> parts;
      for (const auto& spec : corpora) {
        const CorpusSpec c = parse_corpus_spec(spec);
        parts.push_back(corpus::filter_manifest(
            corpus::build_manifest(c.dir, c.language, c.speaker, {verify}), st.maxDuration));
      }
      for (const auto& m : manifests) parts.push_back(corpus::filter_manifest(corpus::read_manifest(m), st.maxDuration));
      const auto pooled = corpus::pool(parts, frontend::parse_family(poolFamily), allowCross);
      if (!poolOut.empty()) corpus::write_manifest(poolOut, pooled);
      result = {{"records", pooled.records.size()},
                {"totalDurationSec", pooled.totalDurationSec},
                {"totalHours", pooled.totalDurationSec / 3600.0},
                {"provenance", pooled.provenance}};
      text = std::to_string(pooled.records.size()) + " utterances, " + fixed(pooled.totalDurationSec / 3600.0, 3) +
             " h";
    } else if (subset->parsed()) {
      const auto chosen = corpus::select_adaptation_subset(corpus::read_manifest(subsetIn), targetMin, st.seed);
      if (!subsetOut.empty()) corpus::write_manifest(subsetOut, chosen);
      std::vector<std::string> ids;
      for (const auto& r : chosen.records) ids.push_back(r.id);
      result = {{"records", ids.size()}, {"totalDurationSec", chosen.totalDurationSec}, {"ids", ids}};
      text = std::to_string(ids.size()) + " utterances, " + fixed(chosen.totalDurationSec / 60.0, 2) + " min";
    } else if (feats->parsed()) {
      fs::create_directories(featOut);
      if (!featGl.empty()) fs::create_directories(featGl);
      json files = json::array();
      for (const auto& wav : wav_inputs(featIn)) {
        const auto mel = features::mel_spectrogram(read_wav(wav), st.mel);
        const auto cep = features::mcep(mel, st.mcepOrder);
        const std::string stem = wav.stem().string();
        json meta = features::to_json(st.mel);
        meta["source"] = wav.filename().string();
        meta["kind"] = "log-mel";
        features::write_matrix(fs::path(featOut) / (stem + ".mel"), mel.frames, meta);
        meta["kind"] = "mcep";
        meta["order"] = st.mcepOrder;
        features::write_matrix(fs::path(featOut) / (stem + ".mcep"), cep.frames, meta);
        if (!featGl.empty()) {
          write_wav(fs::path(featGl) / (stem + ".wav"), features::griffin_lim(mel, st.griffinLimIterations, st.seed));
        }
        files.push_back({{"name", stem}, {"frames", mel.frames.rows()}});
        text += stem + "\t" + std::to_string(mel.frames.rows()) + " frames\n";
      }
      result = {{"files", files}};
      if (!text.empty()) text.pop_back();
    } else if (mcdCmd->parsed()) {
      if (fs::is_directory(mcdRef) || fs::is_directory(mcdSyn)) {
        eval::BatchMcdOptions opts;
        opts.params = st.mel;
        opts.order = st.mcepOrder;
        const auto report = eval::batch_mcd(mcdRef, mcdSyn, opts);
        if (!mcdReport.empty()) eval::write_report(mcdReport, report);
        result = eval::to_json(report);
        for (const auto& row : report.rows) {
          text += row.utteranceId + "\t" + (row.mcd ? fixed(*row.mcd, 4) : "error " + row.error) + "\n";
        }
        text += "mean\t" + (report.mean ? fixed(*report.mean, 4) : std::string("n/a"));
      } else {
        const double v = eval::mcd_between_files(mcdRef, mcdSyn, st.mel, st.mcepOrder);
        result = {{"mcd", v}};
        text = fixed(v, 4);
      }
    } else if (notch->parsed()) {
      Audio audio = read_wav(notchIn);
      json applied = json::array();
      if (notchFreqs.empty()) {
        auto removal = features::remove_line_noise(audio, st.notchQ);
        audio = std::move(removal.audio);
        for (const auto& c : removal.removed) notchFreqs.push_back(c.frequencyHz);
      } else {
        for (double f : notchFreqs) audio = features::notch_filter(audio, f, st.notchQ);
      }
      write_wav(notchOut, audio);
      for (double f : notchFreqs) {
        applied.push_back(f);
        text += fixed(f, 1) + " Hz\n";
      }
      result = {{"notches", applied}, {"q", st.notchQ}};
      text += std::to_string(notchFreqs.size()) + " notch(es) applied";
    } else if (embed->parsed()) {
      if (!embIn.empty()) {
        speaker::EmbeddingMap embs;
        for (const auto& wav : wav_inputs(embIn)) embs[wav.stem().string()] = speaker::toy_embedding(read_wav(wav));
        if (!embOut.empty()) speaker::write_embeddings(embOut, embs);
        result = {{"embeddings", embs.size()}};
        text = std::to_string(embs.size()) + " embeddings";
      } else if (!embArchive.empty() && !embMembership.empty() && !embSpeaker.empty()) {
        const auto mean = speaker::mean_speaker_embedding(speaker::load_embeddings(embArchive), embSpeaker,
                                                          speaker::load_membership(embMembership), lengthNorm);
        if (!embOut.empty()) speaker::write_embeddings(embOut, {{embSpeaker, mean}});
        std::vector<double> v(mean.vector.data(), mean.vector.data() + mean.vector.size());
        result = {{"speaker", embSpeaker}, {"sourceUtterances", mean.sourceUtterances}, {"vector", v}};
        text = embSpeaker + ": mean of " + std::to_string(mean.sourceUtterances.size()) + " utterances";
      } else {
        throw Error(ErrorCode::InvalidArgument, "embed needs --in, or --archive with --membership and --speaker");
      }
    } else if (grad->parsed()) {
      if (instances < 1) throw Error(ErrorCode::InvalidArgument, "--instances must be at least 1");
      double worst = 0.0, weakestMutation = std::numeric_limits<double>::infinity();
      json rows = json::array();
      for (int i = 0; i < instances; ++i) {
        auto inst = attention::random_instance(st.seed + static_cast<std::uint64_t>(i));
        inst.guided.g = st.guidedG;
        const auto r = attention::attention_grad_check(inst, eps);
        const auto m = attention::mutated_grad_check(inst, eps);
        worst = std::max(worst, r.maxRelativeError);
        weakestMutation = std::min(weakestMutation, m.maxRelativeError);
        rows.push_back({{"seed", st.seed + static_cast<std::uint64_t>(i)},
                        {"maxRelativeError", r.maxRelativeError},
                        {"mutatedError", m.maxRelativeError}});
        if (i == 0 && !dumpAlignment.empty()) {
          features::write_matrix(dumpAlignment, attention::rollout(inst).alignment,
                                 {{"kind", "alignment"}, {"seed", st.seed}});
        }
      }
      const bool pass = worst < 1e-4 && weakestMutation > 1e-2;
      result = {{"instances", rows}, {"maxRelativeError", worst}, {"minMutatedError", weakestMutation}, {"pass", pass}};
      std::ostringstream s;
      s << "max relative error " << std::scientific << std::setprecision(3) << worst << ", mutation detected at "
        << weakestMutation << (pass ? " (pass)" : " (FAIL)");
      text = s.str();
      if (!pass) {
        out << (st.json ? result.dump() : text) << "\n";
        return 1;
      }
    } else if (serve->parsed()) {
      eval::EvalStore store(dataDir);
      srv.staticDir = staticDir;
      eval::EvalServer server(store, srv);
      err << "serving on http://" << srv.host << ":" << srv.port << " (data in " << dataDir << ")\n";
      server.run();
      return 0;
    } else if (scen->parsed()) {
      std::map<std::string, std::string> native;
      for (const auto& n : split_list(natives)) {
        const auto eq = n.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--native expects SPEAKER=LANGUAGE");
        native[n.substr(0, eq)] = n.substr(eq + 1);
      }
      const auto plan = eval::plan_scenarios(split_list(seenLangs), split_list(seenSpks), split_list(langs),
                                             split_list(spks), native);
      result = eval::to_json(plan);
      for (const auto& e : plan.entries) {
        text += e.textLanguage + "\t" + e.speaker + "\t(" + e.label + ") " +
                std::string(eval::describe_label(e.label)) + "\n";
      }
      if (!text.empty()) text.pop_back();
    }

    out << (st.json ? result.dump() : text) << "\n";
    return 0;
  } catch (const Error& e) {
    if (st.json) {
      out << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    }
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace indictts::cli
