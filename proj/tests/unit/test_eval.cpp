#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "../support/fixtures.hpp"
#include "helpers.hpp"
#include "indictts/common/random.hpp"
#include "indictts/common/tsv.hpp"
#include "indictts/eval/batch_mcd.hpp"
#include "indictts/eval/scenario.hpp"
#include "indictts/eval/session.hpp"
#include "indictts/eval/stats.hpp"
#include "indictts/eval/store.hpp"

using namespace indictts;
using namespace indictts::eval;
using indictts::testing::TempDir;
using nlohmann::json;

namespace {

TestSession make_session(TestKind kind, const std::string& id, int rated, int natural) {
  return session_from_config(testing::scale_session_config(kind, id, rated, natural), id, false);
}

json preference_config(const std::string& id, int stimuli) {
  json list = json::array();
  for (int i = 0; i < stimuli; ++i) {
    list.push_back({{"utteranceId", "u" + std::to_string(i)},
                    {"audioPath", "u.wav"},
                    {"optionLabels", {"Bengali", "Telugu"}}});
  }
  return {{"id", id}, {"kind", "NativityPreference"}, {"stimuli", list}, {"optionLabels", {"Bengali", "Telugu"}}};
}

std::vector<RatingRecord> preference_votes(const TestSession& s, int forA, int total) {
  std::vector<RatingRecord> out;
  const auto rated = s.rated_indices();
  for (int k = 0; k < total; ++k) {
    const auto& st = s.stimuli[rated[static_cast<std::size_t>(k) % rated.size()]];
    const auto listener = "L" + std::to_string(k / static_cast<int>(rated.size()));
    out.push_back({s.id, listener, st.id, k < forA ? "Bengali" : "Telugu", ""});
  }
  return out;
}

}  // namespace

TEST_SUITE("eval-service") {
  TEST_CASE("rounding") {
    CHECK(round_to_hundredths(3.975) == 3.98);
    CHECK(round_to_hundredths(4.4125) == 4.41);
    CHECK(round_to_hundredths(81.818181) == 81.82);
    CHECK(round_to_hundredths(26.363636) == 26.36);
    CHECK(round_to_hundredths(3.2) == 3.2);
    CHECK(round_to_hundredths(-1.005) == -1.0);
  }

  TEST_CASE("session config") {
    const auto s = make_session(TestKind::DMOS, "guj", 10, 5);
    CHECK(s.stimuli.size() == 15);
    CHECK(s.stimuli[0].id == "guj-01");
    CHECK(s.stimuli[14].id == "guj-15");
    CHECK_ERROR(make_session(TestKind::DMOS, "x", 10, 0), InvalidConfig);
    json onePref = preference_config("p", 2);
    onePref["optionLabels"] = {"Bengali"};
    for (auto& st : onePref["stimuli"]) st["optionLabels"] = {"Bengali"};
    CHECK_ERROR(session_from_config(onePref, "p", false), InvalidConfig);
    CHECK_ERROR(session_from_config(json{{"kind", "MUSHRA"}, {"stimuli", json::array()}}, "m", false), InvalidConfig);
    CHECK_ERROR(session_from_config(testing::scale_session_config(TestKind::DMOS, "f", 1, 1), "f", true),
                MissingStimulus);
    const auto back = session_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));
  }

  TEST_CASE("listener order is a seeded permutation") {
    const auto s = make_session(TestKind::DMOS, "ord", 10, 5);
    const auto a = listener_order(s, "alice");
    CHECK(a == listener_order(s, "alice"));
    CHECK(a != listener_order(s, "bob"));
    std::set<std::size_t> seen(a.begin(), a.end());
    CHECK(seen.size() == 15);
  }

  TEST_CASE("dmos fixtures") {
    const auto guj = make_session(TestKind::DMOS, "guj", 10, 5);
    const auto gujRatings = testing::scale_ratings(guj, 8, 353, 1);
    const auto g = compute_dmos(guj, gujRatings);
    CHECK(g.synthesized.count == 80);
    CHECK(g.synthesized.rounded == 4.41);
    CHECK(std::abs(g.synthesized.mean - 4.41) <= 0.005);
    CHECK(g.natural.count == 40);
    CHECK(g.natural.mean == 5.0);

    const auto tam = make_session(TestKind::DMOS, "tam", 10, 5);
    const auto t = compute_dmos(tam, testing::scale_ratings(tam, 19, 673, 2));
    CHECK(t.synthesized.count == 190);
    CHECK(t.synthesized.rounded == 3.54);

    const DmosResult both[] = {g, t};
    const auto agg = aggregate_dmos(both);
    CHECK(agg.meanOfSessionMeans == doctest::Approx(3.975).epsilon(1e-12));
    CHECK(agg.meanOfSessionMeansRounded == 3.98);
    CHECK(agg.pooledMean == doctest::Approx((353.0 + 673.0) / 270.0));
    CHECK(agg.ratings == 270);
    CHECK_ERROR(aggregate_dmos(std::span<const DmosResult>{}), NoRatings);
  }

  TEST_CASE("dmos trivial cases") {
    const auto s = make_session(TestKind::DMOS, "five", 3, 1);
    std::vector<RatingRecord> rs;
    for (const auto& st : s.stimuli) rs.push_back({s.id, "L", st.id, 5, ""});
    CHECK(compute_dmos(s, rs).synthesized.mean == 5.0);
    CHECK_ERROR(compute_dmos(s, {}), NoRatings);
    CHECK_ERROR(compute_similarity_score(s, rs), WrongKind);
  }

  TEST_CASE("similarity fixtures") {
    const auto guj = make_session(TestKind::SpeakerSimilarity, "gs", 10, 0);
    CHECK(guj.reference_indices().size() == 1);
    CHECK(compute_similarity_score(guj, testing::scale_ratings(guj, 8, 316, 3)).score.rounded == 3.95);
    const auto tam = make_session(TestKind::SpeakerSimilarity, "ts", 10, 0);
    const auto r = compute_similarity_score(tam, testing::scale_ratings(tam, 19, 608, 4));
    CHECK(r.score.rounded == 3.2);
    CHECK(r.score.count == 190);

    const auto one = make_session(TestKind::SpeakerSimilarity, "one", 1, 0);
    const std::vector<RatingRecord> single = {{"one", "L", one.stimuli[1].id, 4, ""}};
    CHECK(compute_similarity_score(one, single).score.mean == 4.0);
  }

  TEST_CASE("statistics ignore rating order") {
    const auto s = make_session(TestKind::DMOS, "perm", 10, 5);
    auto rs = testing::scale_ratings(s, 8, 300, 5);
    const auto base = to_json(compute_dmos(s, rs));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
      std::shuffle(rs.begin(), rs.end(), rng);
      CHECK(to_json(compute_dmos(s, rs)) == base);
    }
    const auto sim = make_session(TestKind::SpeakerSimilarity, "psim", 10, 2);
    auto srs = testing::scale_ratings(sim, 5, 150, 6);
    const auto sbase = to_json(compute_similarity_score(sim, srs));
    std::shuffle(srs.begin(), srs.end(), rng);
    CHECK(to_json(compute_similarity_score(sim, srs)) == sbase);
  }

  TEST_CASE("preference fixtures") {
    const auto s = session_from_config(preference_config("bt", 10), "bt", false);
    const auto a = compute_preference(s, preference_votes(s, 90, 110));
    CHECK(a.percentA == 81.82);
    CHECK(std::abs(a.percentA + a.percentB - 100.0) <= 0.01);
    const auto b = compute_preference(s, preference_votes(s, 29, 110));
    CHECK(b.percentA == 26.36);
    CHECK(b.total == 110);
    const auto zero = compute_preference(s, preference_votes(s, 0, 4));
    CHECK(zero.percentA == 0.0);
    CHECK(zero.percentB == 100.0);
    for (int k = 0; k <= 37; ++k) {
      const auto r = compute_preference(s, preference_votes(s, k, 37));
      CHECK(std::abs(r.percentA + r.percentB - 100.0) <= 0.01 + 1e-9);
    }
  }

  TEST_CASE("trimmed mean") {
    CHECK(trimmed_mean({1, 2, 3, 4, 5, 6, 7, 8, 9, 100}) == doctest::Approx(5.5));
    CHECK(trimmed_mean({3}) == 3.0);
  }

  TEST_CASE("store submissions and restart") {
    TempDir tmp;
    json results;
    {
      EvalStore store(tmp.path(), false);
      const auto s = store.create_session(testing::scale_session_config(TestKind::DMOS, "guj", 10, 5));
      CHECK(s.id == "guj");
      for (const auto& r : testing::scale_ratings(s, 8, 353, 1)) store.submit_rating(r);
      const auto first = s.stimuli[0].id;
      CHECK_ERROR(store.submit_rating({"guj", "L1", first, 3, ""}), DuplicateRating);
      CHECK_ERROR(store.submit_rating({"guj", "new", first, 6, ""}), OutOfScale);
      CHECK_ERROR(store.submit_rating({"guj", "new", first, "Bengali", ""}), OutOfScale);
      CHECK_ERROR(store.submit_rating({"nope", "new", first, 3, ""}), UnknownSession);
      CHECK_ERROR(store.submit_rating({"guj", "new", "guj-99", 3, ""}), UnknownStimulus);
      const auto ok = store.submit_rating({"guj", "new", first, 3, ""});
      CHECK(!ok.timestamp.empty());
      CHECK_ERROR(store.create_session(testing::scale_session_config(TestKind::DMOS, "guj", 2, 1)), InvalidConfig);
      results = store.results("guj");
    }
    EvalStore reopened(tmp.path(), false);
    CHECK(reopened.results("guj") == results);
    CHECK(reopened.snapshot()->ratings_for("guj").size() == 121);
    CHECK_ERROR(reopened.submit_rating({"guj", "new", "guj-01", 4, ""}), DuplicateRating);

    // Torn final line from a crash is skipped.
    { std::ofstream(tmp / std::string(kRatingsLog), std::ios::app) << "{\"sessionId\":\"guj\""; }
    EvalStore torn(tmp.path(), false);
    CHECK(torn.results("guj") == results);
  }

  TEST_CASE("log is append-only") {
    TempDir tmp;
    EvalStore store(tmp.path(), false);
    const auto s = store.create_session(testing::scale_session_config(TestKind::DMOS, "a", 2, 1));
    store.submit_rating({"a", "L", s.stimuli[0].id, 4, ""});
    const std::string before = read_file(tmp / std::string(kRatingsLog));
    store.submit_rating({"a", "L", s.stimuli[1].id, 2, ""});
    const std::string after = read_file(tmp / std::string(kRatingsLog));
    CHECK(after.substr(0, before.size()) == before);
    CHECK(std::count(after.begin(), after.end(), '\n') == 2);
  }

  TEST_CASE("next stimulus walks the listener order") {
    TempDir tmp;
    EvalStore store(tmp.path(), false);
    const auto s = store.create_session(testing::scale_session_config(TestKind::SpeakerSimilarity, "sim", 4, 0));
    const auto order = listener_order(s, "ann");
    std::size_t done = 0;
    for (;;) {
      const auto next = store.next_stimulus("sim", "ann");
      CHECK(next.completed == done);
      CHECK(next.total == 4);
      CHECK(next.references.size() == 1);
      if (!next.stimulus) break;
      CHECK(next.stimulus->role != StimulusRole::referenceSpeaker);
      store.submit_rating({"sim", "ann", next.stimulus->id, 3, ""});
      ++done;
    }
    CHECK(done == 4);
    CHECK_ERROR(store.submit_rating({"sim", "bob", s.stimuli[s.reference_indices().at(0)].id, 3, ""}), InvalidArgument);
  }

  TEST_CASE("concurrent submissions") {
    TempDir tmp;
    EvalStore store(tmp.path(), false);
    const auto s = store.create_session(testing::scale_session_config(TestKind::DMOS, "c", 10, 5));
    std::vector<std::thread> pool;
    for (int l = 0; l < 8; ++l) {
      pool.emplace_back([&, l] {
        for (const auto& st : s.stimuli) store.submit_rating({"c", "L" + std::to_string(l), st.id, 1 + l % 5, ""});
      });
    }
    std::thread reader([&] {
      for (int i = 0; i < 50; ++i) (void)store.snapshot()->ratings_for("c").size();
    });
    for (auto& t : pool) t.join();
    reader.join();
    CHECK(store.snapshot()->ratings_for("c").size() == 120);
    EvalStore reopened(tmp.path(), false);
    CHECK(reopened.snapshot()->ratings_for("c").size() == 120);
  }

  TEST_CASE("scenario labels") {
    const auto plan = plan_scenarios({"Hindi", "Bengali"}, {"Hindi", "Bengali"}, {"Hindi", "Gujarati"},
                                     {"Bengali", "Hindi", "Gujarati"});
    auto label = [&](const std::string& lang, const std::string& spk) {
      for (const auto& e : plan.entries)
        if (e.textLanguage == lang && e.speaker == spk) return e.label;
      return '?';
    };
    CHECK(plan.entries.size() == 6);
    CHECK(label("Hindi", "Bengali") == 'b');
    CHECK(label("Hindi", "Hindi") == 'a');
    CHECK(label("Hindi", "Gujarati") == 'c');
    CHECK(label("Gujarati", "Hindi") == 'e');
    CHECK(label("Gujarati", "Gujarati") == 'd');
    CHECK_ERROR(plan_scenarios({}, {"a"}, {"a"}, {"a"}), InvalidArgument);
  }

  TEST_CASE("scenario labels are exhaustive and exclusive") {
    std::set<char> labels;
    for (bool lang : {false, true})
      for (bool spk : {false, true})
        for (bool sw : {false, true}) {
          const char c = scenario_label(lang, spk, sw);
          CHECK(std::string("abcde").find(c) != std::string::npos);
          CHECK(!describe_label(c).empty());
          labels.insert(c);
        }
    CHECK(labels.size() == 5);
  }

  TEST_CASE("batch mcd") {
    TempDir tmp;
    std::filesystem::create_directories(tmp / "ref");
    std::filesystem::create_directories(tmp / "syn");
    for (int i = 0; i < 20; ++i) {
      char name[16];
      std::snprintf(name, sizeof name, "utt%02d.wav", i);
      write_wav(tmp / "ref" / name, testing::speech_like(0.6, 100.0 + 5 * i, 1.0, static_cast<std::uint64_t>(i)));
      write_wav(tmp / "syn" / name, testing::speech_like(0.6, 100.0 + 5 * i, 1.4, static_cast<std::uint64_t>(i + 50)));
    }
    const auto self = batch_mcd(tmp / "ref", tmp / "ref");
    CHECK(self.rows.size() == 20);
    CHECK(self.scored == 20);
    REQUIRE(self.mean);
    CHECK(*self.mean == 0.0);
    for (const auto& r : self.rows) CHECK(r.mcd == 0.0);

    const auto pairs = batch_mcd(tmp / "ref", tmp / "syn", {.threads = 3});
    CHECK(pairs.rows.size() == 20);
    CHECK(*pairs.mean > 0.0);
    CHECK(std::is_sorted(pairs.rows.begin(), pairs.rows.end(),
                         [](const auto& a, const auto& b) { return a.utteranceId < b.utteranceId; }));
    CHECK(to_json(batch_mcd(tmp / "ref", tmp / "syn", {.threads = 1})) == to_json(pairs));

    std::filesystem::remove(tmp / "syn" / "utt07.wav");
    const auto missing = batch_mcd(tmp / "ref", tmp / "syn");
    CHECK(missing.rows.size() == 20);
    CHECK(missing.scored == 19);
    double sum = 0.0;
    for (const auto& r : missing.rows) {
      if (r.utteranceId == "utt07") {
        CHECK(!r.mcd);
        CHECK(r.error.rfind("MissingAudio", 0) == 0);
      } else {
        sum += *r.mcd;
      }
    }
    CHECK(*missing.mean == doctest::Approx(sum / 19));

    std::filesystem::create_directories(tmp / "empty");
    CHECK_ERROR(batch_mcd(tmp / "ref", tmp / "empty"), NoPairs);
  }
}
