#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "../support/fixtures.hpp"
#include "helpers.hpp"
#include "indictts/common/random.hpp"
#include "indictts/corpus/manifest.hpp"

using namespace indictts;
using namespace indictts::corpus;
using indictts::testing::TempDir;
using indictts::testing::metadata_manifest;
using frontend::Language;

namespace {

void write_corpus(const std::filesystem::path& root, const std::vector<std::pair<std::string, std::string>>& lines,
                  std::size_t samples = 22050) {
  std::filesystem::create_directories(root / "wav");
  std::ofstream tsv(root / "transcript.tsv");
  for (const auto& [id, text] : lines) {
    tsv << id << '\t' << text << '\n';
    Audio a = testing::sine(220.0, 1.0);
    a.samples.resize(samples);
    write_wav(root / "wav" / (id + ".wav"), a);
  }
}

Manifest random_pool(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<UtteranceRecord> records;
  for (std::size_t i = 0; i < count; ++i) {
    UtteranceRecord r;
    r.id = "u" + std::to_string(seed) + "_" + std::to_string(i);
    r.language = Language::Gujarati;
    r.family = frontend::Family::IndoAryan;
    r.script = frontend::Script::Gujarati;
    r.speaker = "guj";
    r.text = "-";
    r.audioPath = r.id + ".wav";
    r.durationSec = 2.0 + 13.0 * unit_uniform(rng);
    r.sampleRate = 22050;
    records.push_back(std::move(r));
  }
  return make_manifest(std::move(records), {});
}

std::string serialize(const Manifest& m) {
  std::string out;
  for (const auto& r : m.records) out += to_json_line(r) + "\n";
  return out;
}

bool is_prefix(const Manifest& a, const Manifest& b) {
  if (a.records.size() > b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].id != b.records[i].id) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("corpus-pool") {
  TEST_CASE("build manifest") {
    TempDir tmp;
    write_corpus(tmp.path(), {{"a1", "कमल"}, {"a2", "नयन"}, {"a3", "घर"}});
    const Manifest m = build_manifest(tmp.path(), Language::Hindi, "spk");
    REQUIRE(m.records.size() == 3);
    CHECK(m.records[0].durationSec == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.records[0].sampleRate == 22050);
    CHECK(m.records[0].script == frontend::Script::Devanagari);
    CHECK(m.totalDurationSec == doctest::Approx(3.0));

    const Manifest verified = build_manifest(tmp.path(), Language::Hindi, "spk", {.verifyDurations = true});
    CHECK(verified.records.size() == 3);

    write_manifest(tmp / "m.jsonl", m);
    CHECK(std::filesystem::exists(tmp / "m.jsonl.meta.json"));
    const Manifest back = read_manifest(tmp / "m.jsonl");
    CHECK(serialize(back) == serialize(m));
    CHECK(back.totalDurationSec == m.totalDurationSec);
    CHECK(back.provenance == m.provenance);
  }

  TEST_CASE("build manifest errors") {
    TempDir tmp;
    write_corpus(tmp.path(), {{"a1", "कमल"}});
    {
      std::ofstream tsv(tmp / "transcript.tsv", std::ios::app);
      tsv << "a2\tनयन\n";
    }
    CHECK_ERROR(build_manifest(tmp.path(), Language::Hindi, "spk"), MissingAudio);

    TempDir tmp2;
    write_corpus(tmp2.path(), {{"b1", "কমল"}});
    CHECK_ERROR(build_manifest(tmp2.path(), Language::Hindi, "spk"), ScriptMismatch);

    TempDir tmp3;
    write_corpus(tmp3.path(), {{"c1", "कमल"}, {"c1", "नयन"}});
    CHECK_ERROR(build_manifest(tmp3.path(), Language::Hindi, "spk"), DuplicateId);

    TempDir tmp4;
    write_corpus(tmp4.path(), {{"d1", "   "}});
    CHECK_ERROR(build_manifest(tmp4.path(), Language::Hindi, "spk"), EmptyAfterCleaning);

    TempDir tmp5;
    write_corpus(tmp5.path(), {{"e1", "कमल"}});
    write_wav(tmp5 / "wav" / "stray.wav", testing::sine(100, 0.5));
    CHECK_ERROR(build_manifest(tmp5.path(), Language::Hindi, "spk"), TranscriptMismatch);

    TempDir tmp6;
    write_corpus(tmp6.path(), {{"f1", "कमल"}});
    { std::ofstream(tmp6 / "wav" / "f1.wav") << "not a wav file"; }
    CHECK_ERROR(build_manifest(tmp6.path(), Language::Hindi, "spk"), UnreadableHeader);

    TempDir tmp7;
    CHECK_ERROR(build_manifest(tmp7.path(), Language::Hindi, "spk"), TranscriptMismatch);
  }

  TEST_CASE("clean_text") {
    CHECK(clean_text(std::string_view("कमल\0  कमल", 21)) == "कमल कमल");
    CHECK_ERROR(clean_text("   "), EmptyAfterCleaning);
    // Precomposed QA vs KA + nukta.
    CHECK(clean_text("\u0958") == clean_text("\u0915\u093C"));
    CHECK(clean_text("  राम\t\tघर  ") == "राम घर");
  }

  TEST_CASE("filter bound is inclusive") {
    std::vector<UtteranceRecord> rs;
    for (double d : {14.9, 15.0, 16.0}) {
      UtteranceRecord r = metadata_manifest(Language::Hindi, "h", 1, d).records[0];
      r.id = "d" + std::to_string(d);
      rs.push_back(r);
    }
    const Manifest m = make_manifest(rs, {});
    const Manifest f = filter_manifest(m);
    REQUIRE(f.records.size() == 2);
    CHECK(f.records[0].durationSec == 14.9);
    CHECK(f.records[1].durationSec == 15.0);
    CHECK(serialize(filter_manifest(f)) == serialize(f));
    CHECK(f.totalDurationSec == doctest::Approx(29.9));
  }

  TEST_CASE("pool totals") {
    std::vector<Manifest> aryan;
    for (auto [lang, spk] : {std::pair{Language::Bengali, "ben"}, std::pair{Language::Hindi, "hin"},
                             std::pair{Language::Odia, "odi"}, std::pair{Language::Rajasthani, "raj"}}) {
      aryan.push_back(metadata_manifest(lang, spk, 1800, 10.0));
    }
    const Manifest p = pool(aryan, frontend::Family::IndoAryan);
    CHECK(p.totalDurationSec == doctest::Approx(20 * 3600.0));
    CHECK(p.records.size() == 7200);

    std::vector<Manifest> drav;
    for (auto [lang, spk] : {std::pair{Language::Kannada, "kan"}, std::pair{Language::Malayalam, "mal"},
                             std::pair{Language::Telugu, "tel"}}) {
      drav.push_back(metadata_manifest(lang, spk, 1800, 10.0));
    }
    CHECK(pool(drav, frontend::Family::Dravidian).totalDurationSec == doctest::Approx(15 * 3600.0));

    // Order-insensitive totals and ids.
    std::reverse(aryan.begin(), aryan.end());
    const Manifest q = pool(aryan, frontend::Family::IndoAryan);
    CHECK(q.totalDurationSec == p.totalDurationSec);
    std::set<std::string> a, b;
    for (const auto& r : p.records) a.insert(r.id);
    for (const auto& r : q.records) b.insert(r.id);
    CHECK(a == b);
  }

  TEST_CASE("pool errors") {
    const std::vector<Manifest> mixed = {metadata_manifest(Language::Hindi, "hin", 2, 5.0),
                                         metadata_manifest(Language::Tamil, "tam", 2, 5.0)};
    CHECK_ERROR(pool(mixed, frontend::Family::IndoAryan), CrossFamilyPooling);
    CHECK(pool(mixed, frontend::Family::IndoAryan, true).records.size() == 4);
    const std::vector<Manifest> dup = {metadata_manifest(Language::Hindi, "hin", 2, 5.0),
                                       metadata_manifest(Language::Hindi, "hin", 2, 5.0)};
    CHECK_ERROR(pool(dup, frontend::Family::IndoAryan), DuplicateId);
  }

  TEST_CASE("subset of uniform minutes") {
    const Manifest m = metadata_manifest(Language::Gujarati, "guj", 60, 60.0);
    const Manifest s = select_adaptation_subset(m, 7);
    CHECK(s.records.size() == 7);
    CHECK(s.totalDurationSec == 420.0);
    CHECK_ERROR(select_adaptation_subset(metadata_manifest(Language::Gujarati, "guj", 20, 60.0), 30), InsufficientData);
    CHECK_ERROR(select_adaptation_subset(m, 0), InvalidArgument);
  }

  TEST_CASE("subset properties over seeded pools") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Manifest pool = random_pool(seed, 300);
      double longest = 0.0;
      for (const auto& r : pool.records) longest = std::max(longest, r.durationSec);
      std::vector<Manifest> subsets;
      for (double target : {7.0, 15.0, 30.0}) {
        const Manifest s = select_adaptation_subset(pool, target, seed);
        CHECK(std::abs(s.totalDurationSec - target * 60.0) <= longest);
        CHECK(serialize(select_adaptation_subset(pool, target, seed)) == serialize(s));
        subsets.push_back(s);
      }
      CHECK(is_prefix(subsets[0], subsets[1]));
      CHECK(is_prefix(subsets[1], subsets[2]));
    }
  }

  TEST_CASE("subset ignores input order") {
    Manifest m = random_pool(7, 100);
    const auto a = serialize(select_adaptation_subset(m, 7, 3));
    std::reverse(m.records.begin(), m.records.end());
    CHECK(serialize(select_adaptation_subset(m, 7, 3)) == a);
    CHECK(serialize(select_adaptation_subset(m, 7, 4)) != a);
  }

  TEST_CASE("record validation") {
    UtteranceRecord r = metadata_manifest(Language::Hindi, "h", 1, 1.0).records[0];
    r.family = frontend::Family::Dravidian;
    CHECK_ERROR(validate(r), InvalidArgument);
    r = metadata_manifest(Language::Hindi, "h", 1, 1.0).records[0];
    r.durationSec = 0;
    CHECK_ERROR(validate(r), InvalidArgument);
    const auto line = to_json_line(metadata_manifest(Language::Tamil, "t", 1, 2.5).records[0]);
    CHECK(to_json_line(from_json_line(line)) == line);
  }
}
