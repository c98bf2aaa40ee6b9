// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

// Shared fixture builders and random-instance generators for the test
// suites. Generators take an explicit Rng so every test is seeded and
// reproducible.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "sil/corpus.hpp"
#include "sil/kb.hpp"
#include "sil/retrieval.hpp"
#include "sil/rng.hpp"

namespace sil::test {

inline SurveyItem make_item(const std::string& survey_id, const std::string& suffix,
                            const std::string& label, const std::string& question = "",
                            const std::string& category = "",
                            std::vector<std::string> answers = {}) {
  SurveyItem item;
  item.survey_id = survey_id;
  item.item_id = survey_id + "_Var" + suffix;
  item.label = label;
  if (!question.empty()) item.question = question;
  if (!category.empty()) item.item_category = category;
  item.answers = std::move(answers);
  return item;
}

inline KnowledgeBase small_kb() {
  KnowledgeBase kb;
  kb.add(make_item("ZA0001", "q1", "trust in government",
                   "How much do you trust the national government?", "politics",
                   {"fully", "partly", "not at all"}));
  kb.add(make_item("ZA0001", "q2", "trust in parliament",
                   "How much do you trust the parliament?", "politics"));
  kb.add(make_item("ZA0001", "q3", "life satisfaction",
                   "How satisfied are you with your life?", "wellbeing"));
  kb.add(make_item("ZA0002", "h1", "dental checkups",
                   "How often do you attend dental check-ups?", "health"));
  kb.add(make_item("ZA0002", "h2", "smoking frequency",
                   "How often do you smoke cigarettes?", "health"));
  return kb;
}

inline Sentence make_sentence(int idx, const std::string& text,
                              std::vector<Mention> mentions = {}) {
  Sentence sent;
  sent.idx = idx;
  sent.text = text;
  sent.mentions = std::move(mentions);
  sent.label = sent.mentions.empty() ? 0 : 1;
  return sent;
}

inline Corpus small_corpus() {
  Corpus corpus;
  Document doc;
  doc.doc_id = "doc1";
  doc.language = Language::EN;
  doc.survey_ids = {"ZA0001"};
  doc.sentences.push_back(make_sentence(0, "This study uses survey data."));
  doc.sentences.push_back(make_sentence(
      1, "We measure how much people trust the national government.",
      {{"ZA0001_Varq1", MentionType::Explicit, MentionSubtype::Paraphrase, 4}}));
  doc.sentences.push_back(make_sentence(2, "Results are reported below."));
  corpus.docs.push_back(std::move(doc));

  Document de;
  de.doc_id = "doc2";
  de.language = Language::DE;
  de.survey_ids = {"ZA0002"};
  de.sentences.push_back(make_sentence(
      0, "Wie oft gehen Sie zur zahnmedizinischen Kontrolle?",
      {{"ZA0002_Varh1", MentionType::Explicit, MentionSubtype::Quotation, 4}}));
  de.sentences.push_back(make_sentence(1, "Weitere Ergebnisse folgen."));
  corpus.docs.push_back(std::move(de));
  return corpus;
}

// Random ranking over items "i0".."i{n-1}" with strictly decreasing scores.
inline Ranking random_ranking(Rng& rng, std::size_t n_items, std::size_t depth,
                              const std::string& query_id = "q") {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < n_items; ++i) items.push_back("i" + std::to_string(i));
  rng.shuffle(items);
  depth = std::min(depth, n_items);
  Ranking ranking;
  ranking.query_id = query_id;
  double score = 1.0;
  for (std::size_t i = 0; i < depth; ++i) {
    score -= 0.001 + rng.unit() * 0.01;
    ranking.ranked.emplace_back(items[i], score);
  }
  return ranking;
}

inline std::set<std::string> random_relevant(Rng& rng, std::size_t n_items,
                                             std::size_t max_relevant) {
  const std::size_t count = 1 + rng.below(max_relevant);
  std::set<std::string> relevant;
  while (relevant.size() < std::min(count, n_items)) {
    relevant.insert("i" + std::to_string(rng.below(n_items)));
  }
  return relevant;
}

inline std::string random_word(Rng& rng) {
  static const std::vector<std::string> words = {
      "trust", "government", "health", "survey", "item", "people", "often", "scale",
      "question", "answer", "satisfaction", "income", "education", "vote", "media"};
  return words[rng.below(words.size())];
}

inline std::string random_text(Rng& rng, std::size_t min_words = 3, std::size_t max_words = 12) {
  const std::size_t n = min_words + rng.below(max_words - min_words + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += " ";
    out += random_word(rng);
  }
  return out;
}

// Random corpus + matching KB whose cited surveys cover all gold items.
struct RandomWorld {
  Corpus corpus;
  KnowledgeBase kb;
};

inline RandomWorld random_world(Rng& rng, std::size_t n_docs = 3, std::size_t n_surveys = 2,
                                std::size_t items_per_survey = 6) {
  RandomWorld world;
  std::vector<std::string> surveys;
  for (std::size_t s = 0; s < n_surveys; ++s) {
    const std::string survey_id = "ZA" + std::to_string(9000 + s);
    surveys.push_back(survey_id);
    for (std::size_t i = 0; i < items_per_survey; ++i) {
      world.kb.add(make_item(survey_id, "q" + std::to_string(i), random_text(rng, 2, 5),
                             random_text(rng, 3, 8), random_word(rng)));
    }
  }
  for (std::size_t d = 0; d < n_docs; ++d) {
    Document doc;
    doc.doc_id = "doc" + std::to_string(d);
    doc.language = rng.below(2) ? Language::DE : Language::EN;
    doc.survey_ids = surveys;
    const std::size_t n_sents = 2 + rng.below(5);
    for (std::size_t i = 0; i < n_sents; ++i) {
      std::vector<Mention> mentions;
      if (rng.below(2)) {
        const std::size_t n_mentions = 1 + rng.below(2);
        for (std::size_t m = 0; m < n_mentions; ++m) {
          const auto& survey = surveys[rng.below(surveys.size())];
          mentions.push_back({survey + "_Varq" + std::to_string(rng.below(items_per_survey)),
                              rng.below(2) ? MentionType::Implicit : MentionType::Explicit,
                              rng.below(2) ? MentionSubtype::Paraphrase : MentionSubtype::Quotation,
                              static_cast<int>(rng.below(5))});
        }
      }
      doc.sentences.push_back(
          make_sentence(static_cast<int>(i), random_text(rng), std::move(mentions)));
    }
    world.corpus.docs.push_back(std::move(doc));
  }
  return world;
}

}  // namespace sil::test
