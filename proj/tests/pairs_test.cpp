// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sil/pairs.hpp"

using namespace sil;
using sil::test::make_item;

TEST_CASE("pair filters") {
  PairGenConfig cfg;
  cfg.dedup_corpus = {"this exact evaluation sentence must not leak"};
  cfg.min_levenshtein = 10;

  PairRecord good{"trust in national government", "how much do you trust it", "i", PairSource::MP};
  CHECK(pair_passes_filters(good, cfg));

  PairRecord short_side{"trust gov", "how much do you trust it", "i", PairSource::MP};
  CHECK_FALSE(pair_passes_filters(short_side, cfg));

  PairRecord identical{"one two three", "one two three", "i", PairSource::MP};
  CHECK_FALSE(pair_passes_filters(identical, cfg));

  PairRecord leaking{"This exact evaluation sentence must not leak",
                     "how much do you trust it", "i", PairSource::MP};
  CHECK_FALSE(pair_passes_filters(leaking, cfg));  // case-folded distance 0

  PairRecord near_leak{"this exact evaluation sentence must not leakXY",
                       "how much do you trust it", "i", PairSource::MP};
  CHECK_FALSE(pair_passes_filters(near_leak, cfg));  // distance 2 < 10

  SECTION("distance filter off when no corpus") {
    cfg.dedup_corpus.clear();
    CHECK(pair_passes_filters(leaking, cfg));
  }
}

namespace {

KnowledgeBase pair_kb() {
  KnowledgeBase kb;
  kb.add(make_item("ZA1", "q1", "trust in national government",
                   "how much do you trust the national government"));
  kb.add(make_item("ZA1", "q2", "satisfaction with public transport",
                   "how satisfied are you with public transport", "transport and mobility"));
  kb.add(make_item("ZA1", "q3", "household income bracket",
                   "which bracket does your household income fall into"));
  kb.add(make_item("ZA2", "q1", "frequency of newspaper reading",
                   "how often do you read a daily newspaper", "media consumption habits"));
  return kb;
}

}  // namespace

TEST_CASE("generate_mp yields filtered, deterministic pairs") {
  const auto kb = pair_kb();
  PairGenConfig cfg;
  cfg.seed = 7;

  const auto pairs = generate_mp(kb, cfg);
  CHECK_FALSE(pairs.empty());
  for (const auto& pair : pairs) {
    CHECK(pair.source == PairSource::MP);
    CHECK(pair_passes_filters(pair, cfg));
    REQUIRE(kb.contains(pair.item_id));
    const auto& item = kb.at(pair.item_id);
    CHECK(pair.left == item.label);
    const bool right_is_question = item.question && pair.right == *item.question;
    const bool right_is_category = item.item_category && pair.right == *item.item_category;
    CHECK((right_is_question || right_is_category));
  }

  SECTION("same seed reproduces the pairs") {
    CHECK(generate_mp(kb, cfg) == pairs);
  }
  SECTION("different seed permutes them") {
    PairGenConfig other = cfg;
    other.seed = 8;
    const auto reshuffled = generate_mp(kb, other);
    // Same multiset of surviving pairs either way.
    auto sorted_a = pairs;
    auto sorted_b = reshuffled;
    auto by_item = [](const PairRecord& x, const PairRecord& y) {
      return std::tie(x.item_id, x.left, x.right) < std::tie(y.item_id, y.left, y.right);
    };
    std::sort(sorted_a.begin(), sorted_a.end(), by_item);
    std::sort(sorted_b.begin(), sorted_b.end(), by_item);
    // The label side is fixed per item, so only the right side may vary
    // between seeds; item coverage is identical.
    REQUIRE(sorted_a.size() == sorted_b.size());
    for (std::size_t i = 0; i < sorted_a.size(); ++i) {
      CHECK(sorted_a[i].item_id == sorted_b[i].item_id);
      CHECK(sorted_a[i].left == sorted_b[i].left);
    }
  }
  SECTION("mp_size caps the output") {
    cfg.mp_size = 2;
    CHECK(generate_mp(kb, cfg).size() <= 2);
  }
}

TEST_CASE("generate_sp pairs generated sentences with item metadata") {
  const auto kb = pair_kb();
  std::map<std::string, std::vector<std::string>> generated;
  generated["ZA1_Varq1"] = {"people often say they trust their national institutions deeply"};
  generated["ZA1_Varq2"] = {"riders rate the quality of buses and trains in their city"};
  generated["ghost_item"] = {"this sentence has no knowledge base entry at all"};

  PairGenConfig cfg;
  cfg.seed = 3;
  const auto pairs = generate_sp(generated, kb, cfg);
  CHECK(pairs.size() == 2);  // the ghost item is skipped
  for (const auto& pair : pairs) {
    CHECK(pair.source == PairSource::SP);
    CHECK(generated.count(pair.item_id) == 1);
    CHECK(pair.left == generated.at(pair.item_id)[0]);
    const auto& item = kb.at(pair.item_id);
    const bool ok = pair.right == item.label ||
                    (item.question && pair.right == *item.question) ||
                    (item.item_category && pair.right == *item.item_category);
    CHECK(ok);
  }
  CHECK(generate_sp(generated, kb, cfg) == pairs);  // deterministic
}

TEST_CASE("split_pairs respects the ratio and preserves the multiset") {
  std::vector<PairRecord> pairs;
  for (int i = 0; i < 10; ++i) {
    pairs.push_back({"left sentence number " + std::to_string(i),
                     "right sentence number " + std::to_string(i), "i", PairSource::MP});
  }
  const auto [train, validation] = split_pairs(pairs, {80, 20}, 42);
  CHECK(train.size() == 8);
  CHECK(validation.size() == 2);

  auto merged = train;
  merged.insert(merged.end(), validation.begin(), validation.end());
  auto key = [](const PairRecord& p) { return p.left; };
  std::sort(merged.begin(), merged.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::sort(pairs.begin(), pairs.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  CHECK(merged == pairs);

  SECTION("same seed gives the same split") {
    const auto again = split_pairs(pairs, {80, 20}, 42);
    // pairs was re-sorted above; re-split the sorted list both times.
    const auto twice = split_pairs(pairs, {80, 20}, 42);
    CHECK(again == twice);
  }
  SECTION("invalid ratios are rejected") {
    CHECK_THROWS(split_pairs(pairs, {0, 100}, 1));
    CHECK_THROWS(split_pairs(pairs, {100, 0}, 1));
  }
}

TEST_CASE("pair jsonl round-trips") {
  std::vector<PairRecord> pairs = {
      {"left one two three", "right one two three", "ZA1_Varq1", PairSource::MP},
      {"anderes linkes beispiel hier", "anderes rechtes beispiel hier", "ZA1_Varq2",
       PairSource::SP},
  };
  CHECK(parse_pairs(serialize_pairs(pairs)) == pairs);
}

TEST_CASE("generated sentences jsonl parses grouped by item") {
  const std::string content =
      R"({"item_id":"ZA1_Varq1","text":"first generated sentence"})" "\n"
      R"({"item_id":"ZA1_Varq1","text":"second generated sentence"})" "\n"
      R"({"item_id":"ZA1_Varq2","text":"other item sentence"})" "\n";
  const auto generated = parse_generated_sentences(content);
  REQUIRE(generated.size() == 2);
  CHECK(generated.at("ZA1_Varq1").size() == 2);
  CHECK(generated.at("ZA1_Varq2") ==
        std::vector<std::string>{"other item sentence"});
}
