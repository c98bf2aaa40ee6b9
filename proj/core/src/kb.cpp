// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/kb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sil {

using nlohmann::json;

void KnowledgeBase::add(SurveyItem item) {
  if (item.item_id.empty()) throw KbError("item with empty item_id");
  if (item.survey_id.empty()) throw KbError("item '" + item.item_id + "' with empty survey_id");
  if (item.label.empty()) throw KbError("item '" + item.item_id + "' with empty label");
  if (items_.count(item.item_id)) {
    throw KbError("duplicate item_id '" + item.item_id + "'");
  }
  by_survey_[item.survey_id].insert(item.item_id);
  items_.emplace(item.item_id, std::move(item));
}

const SurveyItem* KnowledgeBase::find(const std::string& item_id) const {
  auto it = items_.find(item_id);
  return it == items_.end() ? nullptr : &it->second;
}

const SurveyItem& KnowledgeBase::at(const std::string& item_id) const {
  const SurveyItem* item = find(item_id);
  if (!item) throw KbError("unknown item_id '" + item_id + "'");
  return *item;
}

const std::set<std::string>& KnowledgeBase::survey_items(const std::string& survey_id) const {
  static const std::set<std::string> empty;
  auto it = by_survey_.find(survey_id);
  return it == by_survey_.end() ? empty : it->second;
}

std::set<std::string> KnowledgeBase::all_item_ids() const {
  std::set<std::string> out;
  for (const auto& [id, _] : items_) out.insert(id);
  return out;
}

namespace {

ItemLanguage parse_item_language(const json& v) {
  if (v.is_null()) return ItemLanguage::Unknown;
  const auto s = v.get<std::string>();
  if (s == "en") return ItemLanguage::EN;
  if (s == "de") return ItemLanguage::DE;
  return ItemLanguage::Unknown;
}

std::optional<std::string> opt_string(const json& rec, const char* key) {
  if (!rec.contains(key) || rec[key].is_null()) return std::nullopt;
  auto s = rec[key].get<std::string>();
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

KnowledgeBase parse_kb(const std::string& content) {
  KnowledgeBase kb;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw KbError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    SurveyItem item;
    if (!rec.contains("item_id") || !rec["item_id"].is_string()) {
      throw KbError("line " + std::to_string(line_no) + ": missing field 'item_id'");
    }
    if (!rec.contains("survey_id") || !rec["survey_id"].is_string()) {
      throw KbError("line " + std::to_string(line_no) + ": missing field 'survey_id'");
    }
    item.item_id = rec["item_id"].get<std::string>();
    item.survey_id = rec["survey_id"].get<std::string>();
    item.label = rec.value("label", "");
    item.question = opt_string(rec, "question");
    item.sub_question = opt_string(rec, "sub_question");
    item.item_category = opt_string(rec, "item_category");
    for (const auto& a : rec.value("answers", json::array())) {
      item.answers.push_back(a.get<std::string>());
    }
    for (const auto& t : rec.value("topics", json::array())) {
      item.topics.push_back(t.get<std::string>());
    }
    item.language = parse_item_language(rec.value("language", json()));
    try {
      kb.add(std::move(item));
    } catch (const KbError& e) {
      throw KbError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KbError("cannot open KB file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str());
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const auto& [id, item] : kb.items()) {
    json rec;
    rec["item_id"] = item.item_id;
    rec["survey_id"] = item.survey_id;
    rec["label"] = item.label;
    rec["question"] = item.question ? json(*item.question) : json();
    rec["sub_question"] = item.sub_question ? json(*item.sub_question) : json();
    rec["item_category"] = item.item_category ? json(*item.item_category) : json();
    rec["answers"] = item.answers;
    rec["topics"] = item.topics;
    switch (item.language) {
      case ItemLanguage::EN: rec["language"] = "en"; break;
      case ItemLanguage::DE: rec["language"] = "de"; break;
      case ItemLanguage::Unknown: rec["language"] = json(); break;
    }
    out << rec.dump() << "\n";
  }
  return out.str();
}

std::string verbalize(const SurveyItem& item, const VerbalizationSpec& spec) {
  if (spec.fields.empty()) throw KbError("empty verbalization field list");
  std::vector<std::string> parts;
  for (ItemField field : spec.fields) {
    switch (field) {
      case ItemField::Label:
        if (!item.label.empty()) parts.push_back(item.label);
        break;
      case ItemField::Question:
        if (item.question) parts.push_back(*item.question);
        break;
      case ItemField::SubQuestion:
        if (item.sub_question) parts.push_back(*item.sub_question);
        break;
      case ItemField::ItemCategory:
        if (item.item_category) parts.push_back(*item.item_category);
        break;
      case ItemField::Answers:
        for (const auto& a : item.answers) {
          if (!a.empty()) parts.push_back(a);
        }
        break;
    }
  }
  if (parts.empty()) {
    throw KbError("item '" + item.item_id + "' has no text for the selected fields");
  }
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out += spec.separator;
    out += parts[i];
  }
  return out;
}

namespace {

// Case-folded, whitespace-collapsed key for duplicate detection.
std::string dedup_key(const SurveyItem& item) {
  VerbalizationSpec all;
  all.fields = {ItemField::Label, ItemField::Question, ItemField::SubQuestion,
                ItemField::ItemCategory, ItemField::Answers};
  std::string text;
  try {
    text = verbalize(item, all);
  } catch (const KbError&) {
    return {};
  }
  std::string key;
  bool in_space = true;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!in_space) key.push_back(' ');
      in_space = true;
    } else {
      key.push_back(static_cast<char>(std::tolower(c)));
      in_space = false;
    }
  }
  while (!key.empty() && key.back() == ' ') key.pop_back();
  return key;
}

}  // namespace

KnowledgeBase dedup_items(const KnowledgeBase& kb) {
  // items() iterates in item_id order, so the first id seen per
  // (survey, key) is the lexicographically smallest.
  std::map<std::pair<std::string, std::string>, std::string> survivors;
  for (const auto& [id, item] : kb.items()) {
    survivors.try_emplace({item.survey_id, dedup_key(item)}, id);
  }
  KnowledgeBase out;
  for (const auto& [id, item] : kb.items()) {
    auto it = survivors.find({item.survey_id, dedup_key(item)});
    if (it != survivors.end() && it->second == id) out.add(item);
  }
  return out;
}

std::set<std::string> filter_by_citations(const KnowledgeBase& kb, const Document& doc,
                                          std::vector<std::string>* missing) {
  std::set<std::string> out;
  for (const auto& survey_id : doc.survey_ids) {
    const auto& items = kb.survey_items(survey_id);
    if (items.empty()) {
      if (missing) missing->push_back(survey_id);
      continue;
    }
    out.insert(items.begin(), items.end());
  }
  return out;
}

std::optional<std::pair<std::string, long>> split_trailing_integer(const std::string& item_id) {
  std::size_t end = item_id.size();
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(item_id[begin - 1]))) {
    --begin;
  }
  if (begin == end) return std::nullopt;
  return std::make_pair(item_id.substr(0, begin), std::stol(item_id.substr(begin)));
}

std::set<std::string> expand_group_neighbors(const std::string& item_id, int radius,
                                             const KnowledgeBase& kb) {
  kb.at(item_id);  // existence check
  std::set<std::string> out = {item_id};
  auto split = split_trailing_integer(item_id);
  if (!split || radius <= 0) return out;
  const auto& [stem, number] = *split;
  for (long delta = -radius; delta <= radius; ++delta) {
    if (delta == 0) continue;
    const long neighbor = number + delta;
    if (neighbor < 0) continue;
    std::string candidate = stem + std::to_string(neighbor);
    if (kb.contains(candidate)) out.insert(std::move(candidate));
  }
  return out;
}

}  // namespace sil
