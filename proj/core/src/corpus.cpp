// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sil {

using nlohmann::json;

std::string to_string(Language lang) {
  return lang == Language::EN ? "en" : "de";
}

std::string to_string(MentionType type) {
  switch (type) {
    case MentionType::Explicit: return "explicit";
    case MentionType::Implicit: return "implicit";
    case MentionType::Other: return "other";
  }
  return "other";
}

std::string to_string(MentionSubtype subtype) {
  switch (subtype) {
    case MentionSubtype::Quotation: return "quotation";
    case MentionSubtype::Paraphrase: return "paraphrase";
    case MentionSubtype::Citation: return "citation";
    case MentionSubtype::LexicalInference: return "lexical_inference";
    case MentionSubtype::Unspecified: return "unspecified";
    case MentionSubtype::Other: return "other";
  }
  return "other";
}

std::string to_string(RelationKind kind) {
  return kind == RelationKind::ContextualDependence ? "contextual_dependence"
                                                    : "operationalization";
}

namespace {

Language parse_language(const std::string& s, std::size_t line) {
  if (s == "en") return Language::EN;
  if (s == "de") return Language::DE;
  throw CorpusError("line " + std::to_string(line) + ": unknown language '" + s + "'");
}

MentionType parse_mention_type(const std::string& s, std::size_t line) {
  if (s == "explicit") return MentionType::Explicit;
  if (s == "implicit") return MentionType::Implicit;
  if (s == "other") return MentionType::Other;
  throw CorpusError("line " + std::to_string(line) + ": unknown mention type '" + s + "'");
}

MentionSubtype parse_subtype(const std::string& s, std::size_t line) {
  if (s == "quotation") return MentionSubtype::Quotation;
  if (s == "paraphrase") return MentionSubtype::Paraphrase;
  if (s == "citation") return MentionSubtype::Citation;
  if (s == "lexical_inference") return MentionSubtype::LexicalInference;
  if (s == "unspecified") return MentionSubtype::Unspecified;
  if (s == "other") return MentionSubtype::Other;
  throw CorpusError("line " + std::to_string(line) + ": unknown subtype '" + s + "'");
}

RelationKind parse_relation_kind(const std::string& s, std::size_t line) {
  if (s == "contextual_dependence") return RelationKind::ContextualDependence;
  if (s == "operationalization") return RelationKind::Operationalization;
  throw CorpusError("line " + std::to_string(line) + ": unknown relation kind '" + s + "'");
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

Document parse_document(const json& rec, std::size_t line) {
  Document doc;
  if (!rec.contains("doc_id") || !rec["doc_id"].is_string() ||
      rec["doc_id"].get<std::string>().empty()) {
    throw CorpusError("line " + std::to_string(line) + ": missing or empty field 'doc_id'");
  }
  doc.doc_id = rec["doc_id"].get<std::string>();
  if (!rec.contains("language") || !rec["language"].is_string()) {
    throw CorpusError("line " + std::to_string(line) + ": missing field 'language'");
  }
  doc.language = parse_language(rec["language"].get<std::string>(), line);
  for (const auto& sid : rec.value("survey_ids", json::array())) {
    doc.survey_ids.push_back(sid.get<std::string>());
  }
  std::sort(doc.survey_ids.begin(), doc.survey_ids.end());
  doc.survey_ids.erase(std::unique(doc.survey_ids.begin(), doc.survey_ids.end()),
                       doc.survey_ids.end());

  if (!rec.contains("sentences") || !rec["sentences"].is_array()) {
    throw CorpusError("line " + std::to_string(line) + ": missing field 'sentences'");
  }
  int expected_idx = 0;
  for (const auto& s : rec["sentences"]) {
    Sentence sent;
    sent.idx = s.value("idx", -1);
    if (sent.idx != expected_idx) {
      throw CorpusError("line " + std::to_string(line) + ": field 'idx' not contiguous, got " +
                        std::to_string(sent.idx) + " expected " + std::to_string(expected_idx));
    }
    ++expected_idx;
    sent.text = s.value("text", "");
    if (is_blank(sent.text)) {
      throw CorpusError("line " + std::to_string(line) + ": field 'text' empty at idx " +
                        std::to_string(sent.idx));
    }
    sent.label = s.value("is_variable", 0);
    if (sent.label != 0 && sent.label != 1) {
      throw CorpusError("line " + std::to_string(line) + ": field 'is_variable' must be 0 or 1");
    }
    for (const auto& m : s.value("mentions", json::array())) {
      Mention mention;
      if (!m.contains("item_id") || !m["item_id"].is_string()) {
        throw CorpusError("line " + std::to_string(line) + ": mention missing field 'item_id'");
      }
      mention.item_id = m["item_id"].get<std::string>();
      mention.type = parse_mention_type(m.value("type", "explicit"), line);
      mention.subtype = parse_subtype(m.value("subtype", "unspecified"), line);
      mention.confidence = m.value("confidence", 0);
      if (mention.confidence < 0 || mention.confidence > 4) {
        throw CorpusError("line " + std::to_string(line) + ": field 'confidence' out of range");
      }
      sent.mentions.push_back(std::move(mention));
    }
    if ((sent.label == 1) != !sent.mentions.empty()) {
      throw CorpusError("line " + std::to_string(line) + ": field 'is_variable' inconsistent with mentions at idx " +
                        std::to_string(sent.idx));
    }
    for (const auto& r : s.value("relations", json::array())) {
      Relation rel;
      rel.kind = parse_relation_kind(r.value("kind", ""), line);
      rel.target_idx = r.value("target_idx", -1);
      sent.relations.push_back(rel);
    }
    for (const auto& c : s.value("concepts", json::array())) {
      sent.concepts.push_back(c.get<std::string>());
    }
    doc.sentences.push_back(std::move(sent));
  }
  // Relation targets must stay inside the document.
  for (const auto& sent : doc.sentences) {
    for (const auto& rel : sent.relations) {
      if (rel.target_idx < 0 ||
          rel.target_idx >= static_cast<int>(doc.sentences.size())) {
        throw CorpusError("line " + std::to_string(line) + ": relation target_idx " +
                          std::to_string(rel.target_idx) + " out of range");
      }
    }
  }
  return doc;
}

}  // namespace

std::set<std::string> Sentence::gold_items() const {
  std::set<std::string> out;
  for (const auto& m : mentions) {
    if (m.item_id != kUnknownItem) out.insert(m.item_id);
  }
  return out;
}

const Document* Corpus::find(const std::string& doc_id) const {
  for (const auto& d : docs) {
    if (d.doc_id == doc_id) return &d;
  }
  return nullptr;
}

std::set<std::string> Corpus::doc_ids() const {
  std::set<std::string> out;
  for (const auto& d : docs) out.insert(d.doc_id);
  return out;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.sentences.size();
  return n;
}

Corpus parse_corpus(const std::string& content) {
  Corpus corpus;
  std::set<std::string> seen;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    Document doc = parse_document(rec, line_no);
    if (!seen.insert(doc.doc_id).second) {
      throw CorpusError("line " + std::to_string(line_no) + ": duplicate doc_id '" +
                        doc.doc_id + "'");
    }
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str());
}

std::string serialize_corpus(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& doc : corpus.docs) {
    json rec;
    rec["doc_id"] = doc.doc_id;
    rec["language"] = to_string(doc.language);
    rec["survey_ids"] = doc.survey_ids;
    json sents = json::array();
    for (const auto& s : doc.sentences) {
      json js;
      js["idx"] = s.idx;
      js["text"] = s.text;
      js["is_variable"] = s.label;
      json mentions = json::array();
      for (const auto& m : s.mentions) {
        mentions.push_back({{"item_id", m.item_id},
                            {"type", to_string(m.type)},
                            {"subtype", to_string(m.subtype)},
                            {"confidence", m.confidence}});
      }
      js["mentions"] = std::move(mentions);
      json relations = json::array();
      for (const auto& r : s.relations) {
        relations.push_back({{"kind", to_string(r.kind)}, {"target_idx", r.target_idx}});
      }
      js["relations"] = std::move(relations);
      js["concepts"] = s.concepts;
      sents.push_back(std::move(js));
    }
    rec["sentences"] = std::move(sents);
    out << rec.dump() << "\n";
  }
  return out.str();
}

SplitSpec parse_split(const std::string& content, const std::string& name) {
  json rec;
  try {
    rec = json::parse(content);
  } catch (const json::parse_error& e) {
    throw CorpusError(std::string("invalid split JSON: ") + e.what());
  }
  SplitSpec spec;
  spec.name = name;
  auto read_set = [&](const char* key) {
    std::set<std::string> out;
    for (const auto& id : rec.value(key, json::array())) {
      out.insert(id.get<std::string>());
    }
    return out;
  };
  spec.train = read_set("train");
  spec.dev = read_set("dev");
  spec.test_en = read_set("test_en");
  spec.test_de = read_set("test_de");
  return spec;
}

SplitSpec load_split(const std::string& path, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open split file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_split(buf.str(), name);
}

std::string survey_of_item(const std::string& item_id) {
  auto pos = item_id.find("_Var");
  if (pos == std::string::npos) return item_id;
  return item_id.substr(0, pos);
}

namespace {

void accumulate(SplitStats& stats, const Document& doc,
                std::set<std::string>& unique_items,
                std::set<std::string>& unique_surveys) {
  ++stats.papers;
  for (const auto& sent : doc.sentences) {
    if (sent.label == 1) {
      ++stats.sents_pos;
    } else {
      ++stats.sents_neg;
    }
    if (sent.mentions.empty()) continue;

    std::set<std::string> types;
    std::set<std::string> subtypes;
    for (const auto& m : sent.mentions) {
      types.insert(to_string(m.type));
      subtypes.insert(to_string(m.subtype));
      ++stats.mentions_by_type[to_string(m.type)];
      ++stats.mentions_by_subtype[to_string(m.subtype)];
      if (m.item_id != kUnknownItem) {
        ++stats.items_total;
        unique_items.insert(m.item_id);
        unique_surveys.insert(survey_of_item(m.item_id));
      }
    }
    ++stats.sentences_by_type[types.size() == 1 ? *types.begin() : "mixed"];
    ++stats.sentences_by_subtype[subtypes.size() == 1 ? *subtypes.begin() : "mixed"];
  }
}

}  // namespace

StatsTable corpus_stats(const Corpus& corpus, const SplitSpec& split) {
  const std::vector<std::pair<std::string, const std::set<std::string>*>> parts = {
      {"train", &split.train},
      {"dev", &split.dev},
      {"test_en", &split.test_en},
      {"test_de", &split.test_de},
  };
  StatsTable table;
  std::set<std::string> total_items;
  std::set<std::string> total_surveys;
  for (const auto& [name, ids] : parts) {
    SplitStats stats;
    std::set<std::string> items;
    std::set<std::string> surveys;
    for (const auto& id : *ids) {
      const Document* doc = corpus.find(id);
      if (!doc) {
        throw CorpusError("split '" + name + "' references unknown doc_id '" + id + "'");
      }
      accumulate(stats, *doc, items, surveys);
    }
    stats.items_unique = items.size();
    stats.surveys = surveys.size();
    table.per_split[name] = stats;

    table.total.sents_pos += stats.sents_pos;
    table.total.sents_neg += stats.sents_neg;
    table.total.items_total += stats.items_total;
    table.total.papers += stats.papers;
    for (const auto& [k, v] : stats.sentences_by_type) table.total.sentences_by_type[k] += v;
    for (const auto& [k, v] : stats.sentences_by_subtype) table.total.sentences_by_subtype[k] += v;
    for (const auto& [k, v] : stats.mentions_by_type) table.total.mentions_by_type[k] += v;
    for (const auto& [k, v] : stats.mentions_by_subtype) table.total.mentions_by_subtype[k] += v;
    total_items.insert(items.begin(), items.end());
    total_surveys.insert(surveys.begin(), surveys.end());
  }
  table.total.items_unique = total_items.size();
  table.total.surveys = total_surveys.size();
  return table;
}

std::string render_stats(const StatsTable& stats) {
  std::ostringstream out;
  const std::vector<std::string> order = {"train", "dev", "test_en", "test_de"};
  auto row = [&](const std::string& name, const SplitStats& s) {
    out << name << "\t" << s.sents_pos << "\t" << s.sents_neg << "\t" << s.items_total
        << "\t" << s.items_unique << "\t" << s.surveys << "\t" << s.papers << "\n";
  };
  out << "split\tsents_pos\tsents_neg\titems\titems_unique\tsurveys\tpapers\n";
  for (const auto& name : order) {
    auto it = stats.per_split.find(name);
    if (it != stats.per_split.end()) row(name, it->second);
  }
  row("total", stats.total);
  return out.str();
}

}  // namespace sil
