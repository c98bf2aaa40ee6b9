// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sil/kb.hpp"

namespace sil {

enum class PairSource { MP, SP };

struct PairRecord {
  std::string left;
  std::string right;
  std::string item_id;
  PairSource source = PairSource::MP;

  bool operator==(const PairRecord&) const = default;
};

struct PairGenConfig {
  std::uint64_t seed = 0;
  std::size_t mp_size = 0;  // 0 = no limit
  std::size_t sp_size = 0;
  std::vector<std::string> dedup_corpus;  // evaluation sentences
  std::size_t min_levenshtein = 10;
  std::pair<int, int> split_ratio = {80, 20};
};

/// True when the pair survives all filters: both sides >= 3 words,
/// left != right, and both sides at Levenshtein distance >= min from
/// every dedup-corpus sentence (case-folded comparison).
bool pair_passes_filters(const PairRecord& record, const PairGenConfig& cfg);

/// Metadata pairs: item label paired with either the question or the
/// item category, chosen uniformly at random. Items are visited in a
/// seeded shuffle; filtered-out pairs do not count toward mp_size.
/// Deterministic for a fixed seed.
std::vector<PairRecord> generate_mp(const KnowledgeBase& kb, const PairGenConfig& cfg);

/// Synthetic pairs: each externally generated sentence paired with one
/// uniformly chosen present metadata field (label, question, or item
/// category) of its source item. Sentences with an unknown item id are
/// skipped. Same filters and determinism as generate_mp.
std::vector<PairRecord> generate_sp(const std::map<std::string, std::vector<std::string>>& generated,
                                    const KnowledgeBase& kb, const PairGenConfig& cfg);

/// Seeded shuffle followed by a contiguous split; the train share is
/// floor(n * train / (train + validation)), remainder to validation.
std::pair<std::vector<PairRecord>, std::vector<PairRecord>> split_pairs(
    std::vector<PairRecord> pairs, std::pair<int, int> ratio, std::uint64_t seed);

/// Pair JSONL: {"left", "right", "item_id", "source"}.
std::string serialize_pairs(const std::vector<PairRecord>& pairs);
std::vector<PairRecord> parse_pairs(const std::string& content);

/// Generated-sentence JSONL: {"item_id", "text"}.
std::map<std::string, std::vector<std::string>> load_generated_sentences(const std::string& path);
std::map<std::string, std::vector<std::string>> parse_generated_sentences(const std::string& content);

}  // namespace sil
