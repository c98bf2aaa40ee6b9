// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include "sil/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace sil {

namespace {

std::string query_id_of(const std::string& doc_id, int idx) {
  return doc_id + "#" + std::to_string(idx);
}

std::pair<std::string, int> split_query_id(const std::string& query_id) {
  const auto pos = query_id.rfind('#');
  if (pos == std::string::npos) {
    throw std::invalid_argument("malformed query id '" + query_id + "'");
  }
  return {query_id.substr(0, pos), std::stoi(query_id.substr(pos + 1))};
}

const Sentence& sentence_for_query(const Corpus& corpus, const std::string& query_id,
                                   const Document** doc_out = nullptr) {
  const auto [doc_id, idx] = split_query_id(query_id);
  const Document* doc = corpus.find(doc_id);
  if (!doc || idx < 0 || idx >= static_cast<int>(doc->sentences.size())) {
    throw std::invalid_argument("query '" + query_id + "' not found in corpus");
  }
  if (doc_out) *doc_out = doc;
  return doc->sentences[idx];
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SmpResult run_smp(const Corpus& corpus, const KnowledgeBase& kb, const SmpConfig& cfg,
                  const PredictionMap* md_predictions, const ExternalEmbeddings* embeddings) {
  if (cfg.md_source != MdSource::Oracle && !md_predictions) {
    throw std::invalid_argument("run_smp: MD predictions required for non-oracle source");
  }

  // Stage-two indexes over the verbalized KB.
  std::optional<Bm25Index> bm25;
  std::optional<DenseIndex> dense;
  const bool external_dense = embeddings && !embeddings->items.empty();
  if (cfg.ed_backend == EdBackend::Bm25) {
    std::map<std::string, std::string> texts;
    for (const auto& [id, item] : kb.items()) {
      texts.emplace(id, verbalize(item, cfg.verbalization));
    }
    bm25.emplace(texts, cfg.tokenizer, cfg.bm25_k1, cfg.bm25_b);
  } else {
    dense.emplace();
    if (external_dense) {
      for (const auto& [id, vec] : embeddings->items) dense->add(id, vec);
    } else {
      for (const auto& [id, item] : kb.items()) {
        dense->add(id, hash_embed(verbalize(item, cfg.verbalization), cfg.hash_dim, cfg.tokenizer));
      }
    }
  }

  SmpResult result;
  PredictionMap md_out;

  struct Query {
    const Document* doc = nullptr;
    int idx = 0;
    bool gold_positive = false;
  };
  std::vector<Query> queries;

  const std::set<std::string> all_items = cfg.filter_citations ? std::set<std::string>{}
                                                               : kb.all_item_ids();
  for (const auto& doc : corpus.docs) {
    for (const auto& sent : doc.sentences) {
      int md_label;
      double md_score;
      if (cfg.md_source == MdSource::Oracle) {
        md_label = sent.label;
        md_score = static_cast<double>(sent.label);
      } else {
        auto it = md_predictions->find({doc.doc_id, sent.idx});
        if (it == md_predictions->end()) {
          throw std::invalid_argument("run_smp: missing MD prediction for " +
                                      query_id_of(doc.doc_id, sent.idx));
        }
        md_label = it->second.first;
        md_score = it->second.second;
      }
      md_out[{doc.doc_id, sent.idx}] = {md_label, md_score};

      std::set<std::string> gold = sent.gold_items();
      if (cfg.relaxed_radius > 0 && !gold.empty()) {
        std::set<std::string> known;
        for (const auto& id : gold) {
          if (kb.contains(id)) known.insert(id);
        }
        gold = relax_gold(known, cfg.relaxed_radius, kb);
      }
      const bool gold_positive = sent.label == 1;
      if (gold_positive) {
        result.qrels.relevant[query_id_of(doc.doc_id, sent.idx)] = gold;
      }
      if (md_label == 1) {
        queries.push_back({&doc, sent.idx, gold_positive});
        if (!gold_positive || gold.empty()) ++result.spurious_queries;
        if (!gold_positive) {
          // Spurious query: evaluated against an empty gold set.
          result.qrels.relevant.try_emplace(query_id_of(doc.doc_id, sent.idx));
        }
      } else if (gold_positive) {
        // MD miss: empty ranking, its items count as misses.
        result.rankings.push_back({query_id_of(doc.doc_id, sent.idx), {}});
      }
    }
  }

  std::vector<Ranking> ranked(queries.size());
  parallel_for(queries.size(), cfg.threads, [&](std::size_t i) {
    const Query& q = queries[i];
    const std::set<std::string> candidates =
        cfg.filter_citations ? filter_by_citations(kb, *q.doc) : all_items;
    Ranking ranking;
    if (cfg.ed_backend == EdBackend::Bm25) {
      ranking = bm25->query(expand_context(*q.doc, q.idx, cfg.context_mode), candidates, cfg.k);
    } else {
      DenseVector qvec;
      if (external_dense) {
        auto it = embeddings->sentences.find(query_id_of(q.doc->doc_id, q.idx));
        if (it == embeddings->sentences.end()) {
          throw std::invalid_argument("run_smp: missing sentence embedding for " +
                                      query_id_of(q.doc->doc_id, q.idx));
        }
        qvec = it->second;
      } else {
        qvec = hash_embed(expand_context(*q.doc, q.idx, cfg.context_mode), cfg.hash_dim,
                          cfg.tokenizer);
      }
      ranking = dense->query(qvec, candidates, cfg.k);
    }
    ranking.query_id = query_id_of(q.doc->doc_id, q.idx);
    ranked[i] = std::move(ranking);
  });
  for (auto& r : ranked) result.rankings.push_back(std::move(r));
  std::sort(result.rankings.begin(), result.rankings.end(),
            [](const Ranking& a, const Ranking& b) { return a.query_id < b.query_id; });

  result.md_report = evaluate_md(md_out, corpus);

  MetricConfig mcfg{cfg.k, cfg.ap_variant, cfg.relaxed_radius};
  auto add_rows = [&](const std::vector<Ranking>& rankings, const Qrels& qrels,
                      const std::string& axis, const std::string& value) {
    for (RankMetric metric : {RankMetric::Recall, RankMetric::Map, RankMetric::Ndcg}) {
      MetricResult r = evaluate_rankings(metric, rankings, qrels, mcfg);
      result.ed_report.rows.push_back(
          {r.metric, r.k, r.variant, axis, value, r.value, r.n_queries, r.skipped});
    }
  };
  add_rows(result.rankings, result.qrels, "", "overall");
  for (Language lang : {Language::EN, Language::DE}) {
    std::vector<Ranking> subset;
    for (const auto& ranking : result.rankings) {
      const Document* doc = nullptr;
      sentence_for_query(corpus, ranking.query_id, &doc);
      if (doc->language == lang) subset.push_back(ranking);
    }
    if (!subset.empty()) add_rows(subset, result.qrels, "language", to_string(lang));
  }
  return result;
}

namespace {

double doc_recall(const std::vector<std::pair<std::string, double>>& ranked,
                  const std::set<std::string>& gold) {
  if (gold.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& [id, score] : ranked) {
    if (gold.count(id)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

std::set<std::string> doc_gold(const Document& doc) {
  std::set<std::string> gold;
  for (const auto& sent : doc.sentences) {
    auto items = sent.gold_items();
    gold.insert(items.begin(), items.end());
  }
  return gold;
}

}  // namespace

DocAggregation aggregate_document(const std::vector<Ranking>& rankings, const Document& doc,
                                  std::size_t cutoff, FusionMode fusion) {
  std::map<std::string, double> fused;
  for (const auto& ranking : rankings) {
    const auto [doc_id, idx] = split_query_id(ranking.query_id);
    if (doc_id != doc.doc_id) {
      throw std::invalid_argument("aggregate_document: ranking for foreign document '" +
                                  doc_id + "'");
    }
    for (const auto& [item_id, score] : ranking.ranked) {
      auto [it, inserted] = fused.emplace(item_id, score);
      if (!inserted) {
        it->second = fusion == FusionMode::Max ? std::max(it->second, score) : it->second + score;
      }
    }
  }
  DocAggregation out;
  out.doc_id = doc.doc_id;
  out.ranked.assign(fused.begin(), fused.end());
  std::sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.ranked.size() > cutoff) out.ranked.resize(cutoff);
  out.recall = doc_recall(out.ranked, doc_gold(doc));
  return out;
}

std::vector<std::pair<std::size_t, double>> aggregation_curve(
    const std::vector<Ranking>& rankings, const Corpus& corpus, std::size_t max_cutoff,
    FusionMode fusion) {
  std::map<std::string, std::vector<Ranking>> by_doc;
  for (const auto& ranking : rankings) {
    by_doc[split_query_id(ranking.query_id).first].push_back(ranking);
  }
  std::vector<std::pair<std::size_t, double>> curve;
  for (std::size_t cutoff = 1; cutoff <= max_cutoff; ++cutoff) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& doc : corpus.docs) {
      if (doc_gold(doc).empty()) continue;
      auto it = by_doc.find(doc.doc_id);
      static const std::vector<Ranking> none;
      sum += aggregate_document(it == by_doc.end() ? none : it->second, doc, cutoff, fusion).recall;
      ++n;
    }
    curve.emplace_back(cutoff, n ? sum / static_cast<double>(n) : 0.0);
  }
  return curve;
}

std::string to_string(SliceAxis axis) {
  switch (axis) {
    case SliceAxis::Language: return "language";
    case SliceAxis::Type: return "type";
    case SliceAxis::Subtype: return "subtype";
    case SliceAxis::ItemCount: return "item_count";
  }
  return "language";
}

EvalReport evaluate_sliced_ed(const std::vector<Ranking>& rankings, const Corpus& corpus,
                              const std::vector<SliceAxis>& axes, const MetricConfig& cfg,
                              const KnowledgeBase* kb) {
  EvalReport report;
  for (SliceAxis axis : axes) {
    if (axis == SliceAxis::Type || axis == SliceAxis::Subtype) {
      // Mention-level: each mention judged by whether its item made the
      // top-k of its sentence's ranking.
      std::map<std::string, std::pair<std::size_t, std::size_t>> slices;  // value -> (hits, n)
      for (const auto& ranking : rankings) {
        const Sentence& sent = sentence_for_query(corpus, ranking.query_id);
        std::set<std::string> top;
        for (std::size_t i = 0; i < std::min(cfg.k, ranking.ranked.size()); ++i) {
          top.insert(ranking.ranked[i].first);
        }
        for (const auto& mention : sent.mentions) {
          if (mention.item_id == kUnknownItem) continue;
          std::set<std::string> accepted = {mention.item_id};
          if (cfg.relaxed_radius > 0 && kb && kb->contains(mention.item_id)) {
            accepted = expand_group_neighbors(mention.item_id, cfg.relaxed_radius, *kb);
          }
          const std::string value = axis == SliceAxis::Type ? to_string(mention.type)
                                                            : to_string(mention.subtype);
          auto& [hits, n] = slices[value];
          ++n;
          if (std::any_of(accepted.begin(), accepted.end(),
                          [&](const std::string& id) { return top.count(id) > 0; })) {
            ++hits;
          }
        }
      }
      for (const auto& [value, counts] : slices) {
        report.rows.push_back({"recall", cfg.k, "", to_string(axis), value,
                               counts.second ? static_cast<double>(counts.first) / counts.second : 0.0,
                               counts.second, 0});
      }
      continue;
    }
    // Query-level slices.
    std::map<std::string, std::pair<double, std::size_t>> slices;  // value -> (sum, n)
    for (const auto& ranking : rankings) {
      const Document* doc = nullptr;
      const Sentence& sent = sentence_for_query(corpus, ranking.query_id, &doc);
      std::set<std::string> gold = sent.gold_items();
      if (gold.empty()) continue;
      if (cfg.relaxed_radius > 0 && kb) {
        std::set<std::string> known;
        for (const auto& id : gold) {
          if (kb->contains(id)) known.insert(id);
        }
        if (!known.empty()) gold = relax_gold(known, cfg.relaxed_radius, *kb);
      }
      const std::string value = axis == SliceAxis::Language
                                    ? to_string(doc->language)
                                    : (sent.gold_items().size() == 1 ? "single" : "multi");
      auto& [sum, n] = slices[value];
      sum += recall_at_k(ranking, gold, cfg.k);
      ++n;
    }
    for (const auto& [value, acc] : slices) {
      report.rows.push_back({"recall", cfg.k, "", to_string(axis), value,
                             acc.second ? acc.first / acc.second : 0.0, acc.second, 0});
    }
  }
  return report;
}

EvalReport evaluate_sliced_md(const PredictionMap& predictions, const Corpus& corpus,
                              const std::vector<SliceAxis>& axes) {
  EvalReport report;
  for (SliceAxis axis : axes) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> slices;  // value -> (hits, n)
    for (const auto& doc : corpus.docs) {
      for (const auto& sent : doc.sentences) {
        if (sent.label != 1) continue;
        std::string value;
        switch (axis) {
          case SliceAxis::Language:
            value = to_string(doc.language);
            break;
          case SliceAxis::Type: {
            std::set<std::string> types;
            for (const auto& m : sent.mentions) types.insert(to_string(m.type));
            value = types.size() == 1 ? *types.begin() : "mixed";
            break;
          }
          case SliceAxis::Subtype: {
            std::set<std::string> subtypes;
            for (const auto& m : sent.mentions) subtypes.insert(to_string(m.subtype));
            value = subtypes.size() == 1 ? *subtypes.begin() : "mixed";
            break;
          }
          case SliceAxis::ItemCount:
            value = sent.gold_items().size() <= 1 ? "single" : "multi";
            break;
        }
        auto it = predictions.find({doc.doc_id, sent.idx});
        if (it == predictions.end()) {
          throw std::invalid_argument("evaluate_sliced_md: missing prediction for " +
                                      query_id_of(doc.doc_id, sent.idx));
        }
        auto& [hits, n] = slices[value];
        ++n;
        if (it->second.first == 1) ++hits;
      }
    }
    for (const auto& [value, counts] : slices) {
      report.rows.push_back({"recall", 0, "", to_string(axis), value,
                             counts.second ? static_cast<double>(counts.first) / counts.second : 0.0,
                             counts.second, 0});
    }
  }
  return report;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : report.rows) {
      arr.push_back({{"metric", row.metric},
                     {"k", row.k},
                     {"variant", row.variant},
                     {"slice_axis", row.slice_axis},
                     {"slice_value", row.slice_value},
                     {"value", row.value},
                     {"n", row.n},
                     {"skipped", row.skipped}});
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ReportFormat::Tsv) {
    out << "metric\tk\tvariant\tslice_axis\tslice_value\tvalue\tn\tskipped\n";
    out.precision(17);
    for (const auto& row : report.rows) {
      out << row.metric << "\t" << row.k << "\t" << row.variant << "\t" << row.slice_axis << "\t"
          << row.slice_value << "\t" << row.value << "\t" << row.n << "\t" << row.skipped << "\n";
    }
    return out.str();
  }
  out << std::left << std::setw(10) << "metric" << std::setw(5) << "k" << std::setw(20)
      << "variant" << std::setw(12) << "axis" << std::setw(14) << "slice" << std::setw(10)
      << "value" << std::setw(8) << "n" << "skipped\n";
  for (const auto& row : report.rows) {
    out << std::left << std::setw(10) << row.metric << std::setw(5) << row.k << std::setw(20)
        << (row.variant.empty() ? "-" : row.variant) << std::setw(12)
        << (row.slice_axis.empty() ? "-" : row.slice_axis) << std::setw(14) << row.slice_value
        << std::setw(10) << std::fixed << std::setprecision(4) << row.value << std::setw(8)
        << row.n << row.skipped << "\n";
    out.unsetf(std::ios::fixed);
  }
  return out.str();
}

EvalReport parse_report_json(const std::string& content) {
  EvalReport report;
  const auto arr = nlohmann::json::parse(content);
  for (const auto& rec : arr) {
    report.rows.push_back({rec.value("metric", ""), rec.value("k", std::size_t{0}),
                           rec.value("variant", ""), rec.value("slice_axis", ""),
                           rec.value("slice_value", ""), rec.value("value", 0.0),
                           rec.value("n", std::size_t{0}), rec.value("skipped", std::size_t{0})});
  }
  return report;
}

}  // namespace sil
