// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include <algorithm>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sil/pipeline.hpp"

using namespace sil;

namespace {

double report_value(const EvalReport& report, const std::string& metric,
                    const std::string& slice_axis = "", const std::string& slice_value = "overall") {
  for (const auto& row : report.rows) {
    if (row.metric == metric && row.slice_axis == slice_axis && row.slice_value == slice_value) {
      return row.value;
    }
  }
  FAIL("row not found: " + metric + "/" + slice_axis + "/" + slice_value);
  return -1.0;
}

}  // namespace

TEST_CASE("oracle smp run produces one ranking per gold-positive sentence") {
  const auto corpus = sil::test::small_corpus();
  const auto kb = sil::test::small_kb();
  SmpConfig cfg;
  cfg.k = 5;

  const auto result = run_smp(corpus, kb, cfg);
  REQUIRE(result.rankings.size() == 2);  // two gold-positive sentences
  CHECK(result.spurious_queries == 0);
  CHECK(result.md_report.pooled.recall == 1.0);
  CHECK(result.md_report.pooled.precision == 1.0);
  CHECK(result.qrels.relevant.size() == 2);
  CHECK(result.qrels.relevant.at("doc1#1") == std::set<std::string>{"ZA0001_Varq1"});

  // The en query overlaps its gold item's verbalization; it must rank it.
  const auto& ranking = result.rankings[0];
  CHECK(ranking.query_id == "doc1#1");
  REQUIRE_FALSE(ranking.ranked.empty());
  CHECK(ranking.ranked[0].first == "ZA0001_Varq1");

  // Citation filtering keeps candidates inside the cited surveys.
  for (const auto& [item, score] : ranking.ranked) {
    CHECK(survey_of_item(item) == "ZA0001");
  }
}

TEST_CASE("smp is deterministic across thread counts") {
  Rng rng(555);
  const auto world = sil::test::random_world(rng, 4, 3, 8);
  SmpConfig cfg;
  cfg.k = 10;

  cfg.threads = 1;
  const auto serial = run_smp(world.corpus, world.kb, cfg);
  cfg.threads = 4;
  const auto parallel = run_smp(world.corpus, world.kb, cfg);

  REQUIRE(serial.rankings.size() == parallel.rankings.size());
  for (std::size_t i = 0; i < serial.rankings.size(); ++i) {
    CHECK(serial.rankings[i] == parallel.rankings[i]);
  }
  CHECK(serial.ed_report == parallel.ed_report);
}

TEST_CASE("imperfect md never beats oracle md on ed recall") {
  Rng rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    const auto world = sil::test::random_world(rng, 3, 2, 8);
    SmpConfig cfg;
    cfg.k = 10;

    const auto oracle_result = run_smp(world.corpus, world.kb, cfg);

    // Degrade MD: drop a random subset of the gold positives.
    PredictionMap predictions;
    for (const auto& doc : world.corpus.docs) {
      for (const auto& sent : doc.sentences) {
        int label = sent.label;
        if (label == 1 && rng.below(2) == 0) label = 0;
        predictions[{doc.doc_id, sent.idx}] = {label, label ? 1.0 : 0.0};
      }
    }
    cfg.md_source = MdSource::File;
    const auto degraded = run_smp(world.corpus, world.kb, cfg, &predictions);

    const double oracle_recall = report_value(oracle_result.ed_report, "recall");
    const double degraded_recall = report_value(degraded.ed_report, "recall");
    CHECK(degraded_recall <= oracle_recall + 1e-12);
  }
}

TEST_CASE("md false positives become spurious queries, not metric rows") {
  const auto corpus = sil::test::small_corpus();
  const auto kb = sil::test::small_kb();
  PredictionMap predictions;
  for (const auto& doc : corpus.docs) {
    for (const auto& sent : doc.sentences) {
      predictions[{doc.doc_id, sent.idx}] = {1, 1.0};  // everything positive
    }
  }
  SmpConfig cfg;
  const auto oracle_result = run_smp(corpus, kb, cfg);
  cfg.md_source = MdSource::File;
  const auto result = run_smp(corpus, kb, cfg, &predictions);
  CHECK(result.spurious_queries == 3);  // the three gold-negative sentences
  CHECK(result.qrels.relevant.count("doc1#0") == 1);  // present with empty gold
  CHECK(result.qrels.relevant.at("doc1#0").empty());
  // Gold recall is unaffected by the spurious queries.
  CHECK(report_value(result.ed_report, "recall") ==
        Catch::Approx(report_value(oracle_result.ed_report, "recall")));
}

TEST_CASE("document aggregation fuses sentence scores") {
  Document doc;
  doc.doc_id = "d";
  doc.sentences.push_back(sil::test::make_sentence(
      0, "s0", {{"i1", MentionType::Explicit, MentionSubtype::Quotation, 4}}));
  doc.sentences.push_back(sil::test::make_sentence(
      1, "s1", {{"i2", MentionType::Explicit, MentionSubtype::Quotation, 4}}));

  std::vector<Ranking> rankings(2);
  rankings[0].query_id = "d#0";
  rankings[0].ranked = {{"i1", 0.4}, {"i3", 0.3}};
  rankings[1].query_id = "d#1";
  rankings[1].ranked = {{"i1", 0.9}, {"i2", 0.5}};

  SECTION("max fusion keeps the best score per item") {
    const auto agg = aggregate_document(rankings, doc, 10);
    REQUIRE(agg.ranked.size() == 3);
    CHECK(agg.ranked[0] == std::pair<std::string, double>{"i1", 0.9});
    CHECK(agg.ranked[1] == std::pair<std::string, double>{"i2", 0.5});
    CHECK(agg.ranked[2] == std::pair<std::string, double>{"i3", 0.3});
    CHECK(agg.recall == 1.0);  // both unique gold items retrieved
  }
  SECTION("sum fusion accumulates") {
    const auto agg = aggregate_document(rankings, doc, 10, FusionMode::Sum);
    CHECK(agg.ranked[0] == std::pair<std::string, double>{"i1", 1.3});
  }
  SECTION("cutoff truncates and reduces recall") {
    const auto agg = aggregate_document(rankings, doc, 1);
    REQUIRE(agg.ranked.size() == 1);
    CHECK(agg.recall == 0.5);
  }
  SECTION("foreign rankings are rejected") {
    rankings[1].query_id = "other#0";
    CHECK_THROWS(aggregate_document(rankings, doc, 10));
  }
}

TEST_CASE("aggregation curve is monotone in the cutoff") {
  Rng rng(313);
  const auto world = sil::test::random_world(rng, 4, 2, 10);
  SmpConfig cfg;
  cfg.k = 10;
  const auto result = run_smp(world.corpus, world.kb, cfg);

  const auto curve = aggregation_curve(result.rankings, world.corpus, 15);
  REQUIRE(curve.size() == 15);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].first == i + 1);
    CHECK(curve[i].second >= 0.0);
    CHECK(curve[i].second <= 1.0);
    if (i > 0) CHECK(curve[i].second >= curve[i - 1].second - 1e-12);
  }
}

TEST_CASE("sliced ed report recomposes the overall recall") {
  Rng rng(1234);
  const auto world = sil::test::random_world(rng, 5, 2, 10);
  SmpConfig cfg;
  cfg.k = 10;
  const auto result = run_smp(world.corpus, world.kb, cfg);

  MetricConfig mcfg;
  mcfg.k = 10;
  const auto report = evaluate_sliced_ed(result.rankings, world.corpus,
                                         {SliceAxis::Language, SliceAxis::ItemCount}, mcfg);

  // Overall mean recall over queries with a non-empty gold set, computed
  // directly from the rankings.
  double overall_sum = 0.0;
  std::size_t overall_n = 0;
  for (const auto& ranking : result.rankings) {
    const auto& gold = result.qrels.relevant.at(ranking.query_id);
    if (gold.empty()) continue;
    overall_sum += recall_at_k(ranking, gold, mcfg.k);
    ++overall_n;
  }
  REQUIRE(overall_n > 0);
  const double overall = overall_sum / static_cast<double>(overall_n);

  // Each axis partitions those queries: the weighted slice means must
  // recompose the overall value.
  for (const std::string axis : {"language", "item_count"}) {
    double weighted = 0.0;
    std::size_t total = 0;
    for (const auto& row : report.rows) {
      if (row.metric != "recall" || row.slice_axis != axis) continue;
      weighted += row.value * static_cast<double>(row.n);
      total += row.n;
    }
    REQUIRE(total == overall_n);
    CHECK(weighted / static_cast<double>(total) == Catch::Approx(overall).margin(1e-9));
  }
}

TEST_CASE("sliced md recall partitions gold-positive sentences") {
  const auto corpus = sil::test::small_corpus();
  PredictionMap predictions;
  predictions[{"doc1", 0}] = {0, 0.0};
  predictions[{"doc1", 1}] = {1, 1.0};  // en positive found
  predictions[{"doc1", 2}] = {0, 0.0};
  predictions[{"doc2", 0}] = {0, 0.0};  // de positive missed
  predictions[{"doc2", 1}] = {0, 0.0};

  const auto report = evaluate_sliced_md(predictions, corpus, {SliceAxis::Language});
  bool saw_en = false, saw_de = false;
  for (const auto& row : report.rows) {
    if (row.slice_axis != "language") continue;
    if (row.slice_value == "en") {
      CHECK(row.value == 1.0);
      saw_en = true;
    }
    if (row.slice_value == "de") {
      CHECK(row.value == 0.0);
      saw_de = true;
    }
  }
  CHECK(saw_en);
  CHECK(saw_de);
}

TEST_CASE("reports render to all formats and json round-trips") {
  EvalReport report;
  report.rows.push_back({"recall", 10, "", "", "", 0.751, 237, 0});
  report.rows.push_back({"map", 10, "standard", "language", "en", 0.5, 100, 2});

  const auto table = render_report(report, ReportFormat::Table);
  CHECK(table.find("recall") != std::string::npos);
  const auto tsv = render_report(report, ReportFormat::Tsv);
  CHECK(tsv.find("\t") != std::string::npos);

  const auto parsed = parse_report_json(render_report(report, ReportFormat::Json));
  CHECK(parsed == report);
}
