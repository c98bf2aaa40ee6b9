// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <set>
#include <string>
#include <vector>

namespace sil {

/// Reserved item identifier for mentions that could not be resolved
/// against the knowledge base. Never part of any retrieval gold set.
inline constexpr const char* kUnknownItem = "Unk";

enum class Language { EN, DE };

enum class MentionType { Explicit, Implicit, Other };

enum class MentionSubtype {
  Quotation,
  Paraphrase,
  Citation,
  LexicalInference,
  Unspecified,
  Other,
};

enum class RelationKind { ContextualDependence, Operationalization };

std::string to_string(Language lang);
std::string to_string(MentionType type);
std::string to_string(MentionSubtype subtype);
std::string to_string(RelationKind kind);

struct Mention {
  std::string item_id;
  MentionType type = MentionType::Explicit;
  MentionSubtype subtype = MentionSubtype::Unspecified;
  int confidence = 0;

  bool operator==(const Mention&) const = default;
};

struct Relation {
  RelationKind kind = RelationKind::ContextualDependence;
  int target_idx = 0;

  bool operator==(const Relation&) const = default;
};

struct Sentence {
  int idx = 0;
  std::string text;
  int label = 0;  // 1 iff mentions is non-empty
  std::vector<Mention> mentions;
  std::vector<Relation> relations;
  std::vector<std::string> concepts;

  bool operator==(const Sentence&) const = default;

  /// Gold item ids excluding the reserved "Unk" token.
  std::set<std::string> gold_items() const;
};

struct Document {
  std::string doc_id;
  Language language = Language::EN;
  std::vector<std::string> survey_ids;  // surveys cited by the publication
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> docs;

  const Document* find(const std::string& doc_id) const;
  std::set<std::string> doc_ids() const;
  std::size_t sentence_count() const;
};

/// Document-level train/dev/test split. The four sets are pairwise
/// disjoint and together cover the corpus.
struct SplitSpec {
  std::string name;  // e.g. "diff" or "rand"
  std::set<std::string> train;
  std::set<std::string> dev;
  std::set<std::string> test_en;
  std::set<std::string> test_de;
};

/// Per-split corpus statistics, including the type/subtype breakdown
/// at sentence level (a sentence whose mentions disagree on the
/// category counts as "Mixed") and at mention level.
struct SplitStats {
  std::size_t sents_pos = 0;
  std::size_t sents_neg = 0;
  std::size_t items_total = 0;   // mentions, excluding "Unk"
  std::size_t items_unique = 0;  // unique item ids, excluding "Unk"
  std::size_t surveys = 0;       // unique survey prefixes of mentioned items
  std::size_t papers = 0;
  std::map<std::string, std::size_t> sentences_by_type;
  std::map<std::string, std::size_t> sentences_by_subtype;
  std::map<std::string, std::size_t> mentions_by_type;
  std::map<std::string, std::size_t> mentions_by_subtype;
};

struct StatsTable {
  std::map<std::string, SplitStats> per_split;  // train/dev/test_en/test_de
  SplitStats total;
};

/// Parses a line-delimited JSON corpus file. Throws CorpusError with the
/// offending line number on malformed records, duplicate doc ids, or
/// label/mention inconsistencies.
Corpus load_corpus(const std::string& path);

/// Parses corpus records from an already-read string (one JSON object
/// per line). Used by load_corpus and directly by tests.
Corpus parse_corpus(const std::string& content);

/// Serializes back to the line-delimited JSON format; load(serialize(c))
/// equals c field by field.
std::string serialize_corpus(const Corpus& corpus);

SplitSpec load_split(const std::string& path, const std::string& name = "");
SplitSpec parse_split(const std::string& content, const std::string& name = "");

/// Validates that the split covers the corpus and computes per-split
/// statistics. Throws if a split references an unknown document.
StatsTable corpus_stats(const Corpus& corpus, const SplitSpec& split);

/// Renders the statistics as an aligned text table.
std::string render_stats(const StatsTable& stats);

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Survey component of an item id ("ZA5876_Varqe11_2" -> "ZA5876").
/// Ids without a "_Var" separator return the whole id.
std::string survey_of_item(const std::string& item_id);

}  // namespace sil
