// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/pairs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sil/features.hpp"
#include "sil/rng.hpp"

namespace sil {

using nlohmann::json;

namespace {

std::size_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  std::size_t n = 0;
  while (in >> word) ++n;
  return n;
}

std::string fold_ascii(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  }
  return out;
}

// Distance is at least the length difference, so most corpus sentences
// are pruned without running the DP.
bool near_duplicate(const std::string& folded, const std::vector<std::string>& corpus,
                    std::size_t min_distance) {
  for (const auto& sentence : corpus) {
    const std::size_t a = folded.size(), b = sentence.size();
    if ((a > b ? a - b : b - a) >= min_distance) continue;
    if (levenshtein(folded, sentence) < min_distance) return true;
  }
  return false;
}

}  // namespace

bool pair_passes_filters(const PairRecord& record, const PairGenConfig& cfg) {
  if (record.left == record.right) return false;
  if (word_count(record.left) < 3 || word_count(record.right) < 3) return false;
  if (cfg.min_levenshtein == 0 || cfg.dedup_corpus.empty()) return true;
  std::vector<std::string> folded_corpus;
  folded_corpus.reserve(cfg.dedup_corpus.size());
  for (const auto& s : cfg.dedup_corpus) folded_corpus.push_back(fold_ascii(s));
  return !near_duplicate(fold_ascii(record.left), folded_corpus, cfg.min_levenshtein) &&
         !near_duplicate(fold_ascii(record.right), folded_corpus, cfg.min_levenshtein);
}

namespace {

struct FilterContext {
  std::vector<std::string> folded_corpus;
  const PairGenConfig* cfg = nullptr;

  explicit FilterContext(const PairGenConfig& config) : cfg(&config) {
    folded_corpus.reserve(config.dedup_corpus.size());
    for (const auto& s : config.dedup_corpus) folded_corpus.push_back(fold_ascii(s));
  }

  bool passes(const PairRecord& record) const {
    if (record.left == record.right) return false;
    if (word_count(record.left) < 3 || word_count(record.right) < 3) return false;
    if (cfg->min_levenshtein == 0 || folded_corpus.empty()) return true;
    return !near_duplicate(fold_ascii(record.left), folded_corpus, cfg->min_levenshtein) &&
           !near_duplicate(fold_ascii(record.right), folded_corpus, cfg->min_levenshtein);
  }
};

}  // namespace

std::vector<PairRecord> generate_mp(const KnowledgeBase& kb, const PairGenConfig& cfg) {
  FilterContext filter(cfg);
  Rng rng(cfg.seed);
  std::vector<const SurveyItem*> items;
  items.reserve(kb.size());
  for (const auto& [id, item] : kb.items()) items.push_back(&item);
  rng.shuffle(items);

  std::vector<PairRecord> out;
  for (const SurveyItem* item : items) {
    if (cfg.mp_size && out.size() >= cfg.mp_size) break;
    std::vector<const std::string*> rights;
    if (item->question) rights.push_back(&*item->question);
    if (item->item_category) rights.push_back(&*item->item_category);
    if (rights.empty()) continue;
    const std::size_t pick = static_cast<std::size_t>(rng.below(rights.size()));
    PairRecord record{item->label, *rights[pick], item->item_id, PairSource::MP};
    if (filter.passes(record)) out.push_back(std::move(record));
  }
  return out;
}

std::vector<PairRecord> generate_sp(const std::map<std::string, std::vector<std::string>>& generated,
                                    const KnowledgeBase& kb, const PairGenConfig& cfg) {
  FilterContext filter(cfg);
  Rng rng(cfg.seed);
  std::vector<PairRecord> out;
  for (const auto& [item_id, sentences] : generated) {
    const SurveyItem* item = kb.find(item_id);
    if (!item) continue;  // unknown source item, skipped
    std::vector<const std::string*> fields;
    fields.push_back(&item->label);
    if (item->question) fields.push_back(&*item->question);
    if (item->item_category) fields.push_back(&*item->item_category);
    for (const auto& sentence : sentences) {
      if (cfg.sp_size && out.size() >= cfg.sp_size) return out;
      const std::size_t pick = static_cast<std::size_t>(rng.below(fields.size()));
      PairRecord record{sentence, *fields[pick], item_id, PairSource::SP};
      if (filter.passes(record)) out.push_back(std::move(record));
    }
  }
  return out;
}

std::pair<std::vector<PairRecord>, std::vector<PairRecord>> split_pairs(
    std::vector<PairRecord> pairs, std::pair<int, int> ratio, std::uint64_t seed) {
  if (ratio.first <= 0 || ratio.second <= 0) {
    throw std::invalid_argument("split_pairs: ratio components must be positive");
  }
  Rng rng(seed);
  rng.shuffle(pairs);
  const std::size_t train_n =
      pairs.size() * static_cast<std::size_t>(ratio.first) /
      static_cast<std::size_t>(ratio.first + ratio.second);
  std::vector<PairRecord> train(pairs.begin(), pairs.begin() + train_n);
  std::vector<PairRecord> validation(pairs.begin() + train_n, pairs.end());
  return {std::move(train), std::move(validation)};
}

std::string serialize_pairs(const std::vector<PairRecord>& pairs) {
  std::ostringstream out;
  for (const auto& record : pairs) {
    json rec{{"left", record.left},
             {"right", record.right},
             {"item_id", record.item_id},
             {"source", record.source == PairSource::MP ? "mp" : "sp"}};
    out << rec.dump() << "\n";
  }
  return out.str();
}

std::vector<PairRecord> parse_pairs(const std::string& content) {
  std::vector<PairRecord> out;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    out.push_back({rec.at("left").get<std::string>(), rec.at("right").get<std::string>(),
                   rec.at("item_id").get<std::string>(),
                   rec.value("source", "mp") == "sp" ? PairSource::SP : PairSource::MP});
  }
  return out;
}

std::map<std::string, std::vector<std::string>> parse_generated_sentences(
    const std::string& content) {
  std::map<std::string, std::vector<std::string>> out;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("generated-sentence file line " + std::to_string(line_no) +
                               ": invalid JSON: " + e.what());
    }
    out[rec.at("item_id").get<std::string>()].push_back(rec.at("text").get<std::string>());
  }
  return out;
}

std::map<std::string, std::vector<std::string>> load_generated_sentences(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open generated-sentence file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generated_sentences(buf.str());
}

}  // namespace sil
