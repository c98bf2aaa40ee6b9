// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sil/corpus.hpp"

namespace sil {

enum class ItemLanguage { EN, DE, Unknown };

struct SurveyItem {
  std::string item_id;    // "<survey_id>_Var<suffix>", globally unique
  std::string survey_id;
  std::string label;
  std::optional<std::string> question;
  std::optional<std::string> sub_question;
  std::optional<std::string> item_category;
  std::vector<std::string> answers;
  std::vector<std::string> topics;
  ItemLanguage language = ItemLanguage::Unknown;
};

enum class ItemField { Label, Question, SubQuestion, ItemCategory, Answers };

/// Which metadata fields to concatenate, and with what separator, when
/// turning an item into retrievable text. The default matches the
/// best-performing combination: label + question + category + answers.
struct VerbalizationSpec {
  std::vector<ItemField> fields = {ItemField::Label, ItemField::Question,
                                   ItemField::ItemCategory, ItemField::Answers};
  std::string separator = " ";
};

struct KbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class KnowledgeBase {
 public:
  void add(SurveyItem item);  // throws KbError on duplicate item_id

  const SurveyItem* find(const std::string& item_id) const;
  const SurveyItem& at(const std::string& item_id) const;  // throws if absent
  bool contains(const std::string& item_id) const { return items_.count(item_id) > 0; }

  std::size_t size() const { return items_.size(); }
  std::size_t survey_count() const { return by_survey_.size(); }

  const std::map<std::string, SurveyItem>& items() const { return items_; }
  const std::set<std::string>& survey_items(const std::string& survey_id) const;
  std::set<std::string> all_item_ids() const;

 private:
  std::map<std::string, SurveyItem> items_;
  std::map<std::string, std::set<std::string>> by_survey_;
};

KnowledgeBase load_kb(const std::string& path);
KnowledgeBase parse_kb(const std::string& content);
std::string serialize_kb(const KnowledgeBase& kb);

/// Collapses items within the same survey whose full verbalized text
/// (case-folded, whitespace-normalized) is identical, keeping the
/// lexicographically smallest item_id. Idempotent. Cross-survey
/// duplicates are kept: surveys legitimately reuse wording.
KnowledgeBase dedup_items(const KnowledgeBase& kb);

/// Joins the present fields of the spec in order; absent or empty
/// fields are skipped; answers are joined internally by the same
/// separator. Throws KbError if every selected field is empty.
std::string verbalize(const SurveyItem& item, const VerbalizationSpec& spec);

/// Candidate item ids for a document: the union of the items of its
/// cited surveys. Surveys absent from the KB are skipped and reported
/// through `missing` when given. With filtering disabled the caller
/// should use KnowledgeBase::all_item_ids instead.
std::set<std::string> filter_by_citations(const KnowledgeBase& kb, const Document& doc,
                                          std::vector<std::string>* missing = nullptr);

/// Items sharing the non-numeric stem of `item_id` whose trailing
/// integer differs by at most `radius` (per side), the item included.
/// Ids without a trailing integer yield a singleton.
std::set<std::string> expand_group_neighbors(const std::string& item_id, int radius,
                                             const KnowledgeBase& kb);

/// Splits an item id at its maximal trailing digit run:
/// "ZA5876_Varqe11_2" -> {"ZA5876_Varqe11_", 2}. No digits -> nullopt.
std::optional<std::pair<std::string, long>> split_trailing_integer(const std::string& item_id);

}  // namespace sil
