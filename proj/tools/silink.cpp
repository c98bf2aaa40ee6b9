// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

// Batch command-line front end. Subcommands cover corpus statistics,
// agreement, KB management, mention detection, retrieval, the
// sequential pipeline, document aggregation, pair generation, and
// report rendering. Logs go to stderr; data goes to files or stdout.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sil/agreement.hpp"
#include "sil/corpus.hpp"
#include "sil/detection.hpp"
#include "sil/features.hpp"
#include "sil/kb.hpp"
#include "sil/manifest.hpp"
#include "sil/metrics.hpp"
#include "sil/pairs.hpp"
#include "sil/pipeline.hpp"
#include "sil/retrieval.hpp"

namespace {

using nlohmann::json;

// Relative paths resolve against SIL_DATA_DIR when the file is not
// found in the working directory.
std::string resolve_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* root = std::getenv("SIL_DATA_DIR")) {
    fs::path candidate = fs::path(root) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

void require_file(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("input file not found: " + path);
  }
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& content, const std::string& command,
          const std::string& config, const std::vector<std::string>& inputs, std::uint64_t seed) {
  write_file(out_path, content);
  if (out_path != "-") {
    sil::write_manifest(out_path, command, config, inputs, seed);
  }
}

sil::Tokenizer make_tokenizer(const std::string& mode, int ngram) {
  sil::Tokenizer tokenizer;
  if (mode == "char") {
    tokenizer.mode = sil::TokenizerMode::CharNgram;
    tokenizer.ngram = ngram;
  }
  return tokenizer;
}

// ---- detect model persistence ----

struct DetectModel {
  sil::TfIdfModel tfidf;
  sil::LogRegModel logreg;
  sil::Tokenizer tokenizer;
  sil::ContextMode context = sil::ContextMode::None;
};

std::string serialize_detect_model(const DetectModel& model) {
  json rec;
  json vocab = json::object();
  for (const auto& [term, idx] : model.tfidf.vocabulary) vocab[term] = idx;
  rec["vocabulary"] = std::move(vocab);
  rec["idf"] = model.tfidf.idf;
  rec["doc_count"] = model.tfidf.doc_count;
  rec["weights"] = model.logreg.weights;
  rec["bias"] = model.logreg.bias;
  rec["threshold"] = model.logreg.threshold;
  rec["tokenizer"] = model.tokenizer.mode == sil::TokenizerMode::CharNgram ? "char" : "word";
  rec["ngram"] = model.tokenizer.ngram;
  rec["context"] = model.context == sil::ContextMode::None
                       ? "none"
                       : (model.context == sil::ContextMode::Relation ? "relation" : "neighbor");
  return rec.dump() + "\n";
}

DetectModel parse_detect_model(const std::string& content) {
  const json rec = json::parse(content);
  DetectModel model;
  for (const auto& [term, idx] : rec.at("vocabulary").items()) {
    model.tfidf.vocabulary[term] = idx.get<std::uint32_t>();
  }
  model.tfidf.idf = rec.at("idf").get<std::vector<double>>();
  model.tfidf.doc_count = rec.value("doc_count", std::size_t{0});
  model.logreg.weights = rec.at("weights").get<std::vector<double>>();
  model.logreg.bias = rec.value("bias", 0.0);
  model.logreg.threshold = rec.value("threshold", 0.5);
  model.tokenizer = make_tokenizer(rec.value("tokenizer", "word"), rec.value("ngram", 3));
  const auto context = rec.value("context", "none");
  model.context = context == "relation" ? sil::ContextMode::Relation
                                        : (context == "neighbor" ? sil::ContextMode::Neighbor
                                                                 : sil::ContextMode::None);
  return model;
}

sil::ContextMode parse_context(const std::string& s) {
  if (s == "relation") return sil::ContextMode::Relation;
  if (s == "neighbor") return sil::ContextMode::Neighbor;
  return sil::ContextMode::None;
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += " ";
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"survey item linking toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");
  const std::string invocation = command_line(argc, argv);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for all randomized operations");

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics tables");
  std::string stats_corpus = "sild.jsonl", stats_split = "sild_splits.json", stats_out = "-";
  stats_cmd->add_option("--corpus", stats_corpus);
  stats_cmd->add_option("--split", stats_split);
  stats_cmd->add_option("--out", stats_out);

  // ---- agreement ----
  auto* agree_cmd = app.add_subcommand("agreement", "inter-annotator agreement");
  std::string agree_mode = "kappa", agree_a, agree_b, agree_annotations, agree_distance = "jaccard";
  agree_cmd->add_option("--mode", agree_mode)->check(CLI::IsMember({"kappa", "alpha"}));
  agree_cmd->add_option("--a", agree_a, "binary labels, one per line (kappa)");
  agree_cmd->add_option("--b", agree_b, "binary labels, one per line (kappa)");
  agree_cmd->add_option("--annotations", agree_annotations,
                        "JSON: array of annotators, each an array of units, each an array of item ids (alpha)");
  agree_cmd->add_option("--distance", agree_distance)->check(CLI::IsMember({"nominal", "jaccard"}));

  // ---- kb ----
  auto* kb_cmd = app.add_subcommand("kb", "knowledge-base management");
  kb_cmd->require_subcommand(1);
  auto* kb_index = kb_cmd->add_subcommand("index", "load, validate, and summarize a KB");
  auto* kb_dedup = kb_cmd->add_subcommand("dedup", "collapse within-survey duplicates");
  std::string kb_path = "gsim.jsonl", kb_out = "-";
  for (auto* sub : {kb_index, kb_dedup}) {
    sub->add_option("--kb", kb_path);
    sub->add_option("--out", kb_out);
  }

  // ---- detect ----
  auto* detect_cmd = app.add_subcommand("detect", "mention detection");
  detect_cmd->require_subcommand(1);
  auto* detect_train = detect_cmd->add_subcommand("train", "train the TF-IDF logistic model");
  auto* detect_predict = detect_cmd->add_subcommand("predict", "label corpus sentences");
  auto* detect_eval = detect_cmd->add_subcommand("eval", "score predictions against gold");
  std::string det_corpus = "sild.jsonl", det_split = "sild_splits.json", det_model, det_out = "-";
  std::string det_pred, det_tokenizer = "word", det_context = "none";
  std::size_t det_epochs = 200;
  double det_lr = 0.5, det_l2 = 1e-4;
  int det_ngram = 3;
  std::vector<std::string> det_slices;
  detect_train->add_option("--corpus", det_corpus);
  detect_train->add_option("--split", det_split);
  detect_train->add_option("--out", det_out, "model file");
  detect_train->add_option("--tokenizer", det_tokenizer)->check(CLI::IsMember({"word", "char"}));
  detect_train->add_option("--ngram", det_ngram);
  detect_train->add_option("--context", det_context)->check(CLI::IsMember({"none", "relation", "neighbor"}));
  detect_train->add_option("--epochs", det_epochs);
  detect_train->add_option("--lr", det_lr);
  detect_train->add_option("--l2", det_l2);
  detect_predict->add_option("--corpus", det_corpus);
  detect_predict->add_option("--model", det_model)->required();
  detect_predict->add_option("--out", det_out, "prediction TSV");
  detect_eval->add_option("--corpus", det_corpus);
  detect_eval->add_option("--pred", det_pred)->required();
  detect_eval->add_option("--slices", det_slices, "axes: language type subtype item_count");
  detect_eval->add_option("--out", det_out);

  // ---- retrieve ----
  auto* retrieve_cmd = app.add_subcommand("retrieve", "entity disambiguation");
  retrieve_cmd->require_subcommand(1);
  auto* retrieve_index = retrieve_cmd->add_subcommand("index", "verbalize KB items for retrieval");
  auto* retrieve_query = retrieve_cmd->add_subcommand("query", "rank items for gold-positive sentences");
  auto* retrieve_eval = retrieve_cmd->add_subcommand("eval", "ranking metrics for a run file");
  std::string ret_kb = "gsim.jsonl", ret_corpus = "sild.jsonl", ret_out = "-";
  std::string ret_backend = "bm25", ret_run, ret_qrels, ret_qrels_out, ret_metric = "recall";
  std::string ret_ap_variant = "standard", ret_tokenizer = "word", ret_context = "none";
  std::string ret_embeddings, ret_query_embeddings;
  std::size_t ret_k = 10, ret_threads = 0, ret_hash_dim = 1024;
  int ret_ngram = 3, ret_relax = 0;
  bool ret_no_filter = false;
  double ret_k1 = 1.2, ret_b = 0.75;
  retrieve_index->add_option("--kb", ret_kb);
  retrieve_index->add_option("--out", ret_out, "TSV of item_id<TAB>verbalized text");
  retrieve_query->add_option("--kb", ret_kb);
  retrieve_query->add_option("--corpus", ret_corpus);
  retrieve_query->add_option("--backend", ret_backend)->check(CLI::IsMember({"bm25", "dense"}));
  retrieve_query->add_option("--k", ret_k);
  retrieve_query->add_flag("--no-filter", ret_no_filter, "disable survey-citation filtering");
  retrieve_query->add_option("--context", ret_context)->check(CLI::IsMember({"none", "relation", "neighbor"}));
  retrieve_query->add_option("--tokenizer", ret_tokenizer)->check(CLI::IsMember({"word", "char"}));
  retrieve_query->add_option("--ngram", ret_ngram);
  retrieve_query->add_option("--k1", ret_k1);
  retrieve_query->add_option("--b", ret_b);
  retrieve_query->add_option("--hash-dim", ret_hash_dim);
  retrieve_query->add_option("--item-embeddings", ret_embeddings, "TSV of externally produced item vectors");
  retrieve_query->add_option("--sentence-embeddings", ret_query_embeddings, "TSV of sentence vectors keyed doc#idx");
  retrieve_query->add_option("--threads", ret_threads);
  retrieve_query->add_option("--out", ret_out, "run TSV");
  retrieve_query->add_option("--qrels-out", ret_qrels_out, "also write gold qrels");
  retrieve_eval->add_option("--run", ret_run)->required();
  retrieve_eval->add_option("--qrels", ret_qrels)->required();
  retrieve_eval->add_option("--k", ret_k);
  retrieve_eval->add_option("--metric", ret_metric)->check(CLI::IsMember({"recall", "map", "ndcg", "all"}));
  retrieve_eval->add_option("--ap-variant", ret_ap_variant)->check(CLI::IsMember({"standard", "literal"}));
  retrieve_eval->add_option("--relax", ret_relax, "gold neighbor radius (needs --kb)");
  retrieve_eval->add_option("--kb", ret_kb);
  retrieve_eval->add_option("--out", ret_out);

  // ---- smp ----
  auto* smp_cmd = app.add_subcommand("smp", "sequential model pipeline");
  smp_cmd->require_subcommand(1);
  auto* smp_run = smp_cmd->add_subcommand("run", "run MD then ED and evaluate");
  std::string smp_corpus = "sild.jsonl", smp_kb = "gsim.jsonl", smp_md = "oracle";
  std::string smp_pred, smp_ed = "bm25", smp_out = "-", smp_run_out, smp_context = "none";
  std::string smp_ap_variant = "standard", smp_tokenizer = "word", smp_format = "json";
  std::size_t smp_k = 10, smp_threads = 0, smp_hash_dim = 1024;
  int smp_relax = 0, smp_ngram = 3;
  bool smp_no_filter = false;
  smp_run->add_option("--corpus", smp_corpus);
  smp_run->add_option("--kb", smp_kb);
  smp_run->add_option("--md", smp_md)->check(CLI::IsMember({"oracle", "file"}));
  smp_run->add_option("--pred", smp_pred, "MD prediction TSV (with --md file)");
  smp_run->add_option("--ed", smp_ed)->check(CLI::IsMember({"bm25", "dense"}));
  smp_run->add_option("--k", smp_k);
  smp_run->add_flag("--no-filter", smp_no_filter);
  smp_run->add_option("--relax", smp_relax);
  smp_run->add_option("--context", smp_context)->check(CLI::IsMember({"none", "relation", "neighbor"}));
  smp_run->add_option("--ap-variant", smp_ap_variant)->check(CLI::IsMember({"standard", "literal"}));
  smp_run->add_option("--tokenizer", smp_tokenizer)->check(CLI::IsMember({"word", "char"}));
  smp_run->add_option("--ngram", smp_ngram);
  smp_run->add_option("--hash-dim", smp_hash_dim);
  smp_run->add_option("--threads", smp_threads);
  smp_run->add_option("--format", smp_format)->check(CLI::IsMember({"table", "json", "tsv"}));
  smp_run->add_option("--out", smp_out, "evaluation report");
  smp_run->add_option("--run-out", smp_run_out, "ED run TSV");

  // ---- aggregate ----
  auto* agg_cmd = app.add_subcommand("aggregate", "document-level recall curve");
  std::string agg_run, agg_corpus = "sild.jsonl", agg_out = "-", agg_fusion = "max";
  std::size_t agg_max_cutoff = 50;
  agg_cmd->add_option("--run", agg_run)->required();
  agg_cmd->add_option("--corpus", agg_corpus);
  agg_cmd->add_option("--max-cutoff", agg_max_cutoff);
  agg_cmd->add_option("--fusion", agg_fusion)->check(CLI::IsMember({"max", "sum"}));
  agg_cmd->add_option("--out", agg_out, "TSV of cutoff<TAB>recall");

  // ---- pairs ----
  auto* pairs_cmd = app.add_subcommand("pairs", "pseudo-labeled sentence pairs");
  pairs_cmd->require_subcommand(1);
  auto* pairs_mp = pairs_cmd->add_subcommand("mp", "metadata pairs from the KB");
  auto* pairs_sp = pairs_cmd->add_subcommand("sp", "pairs for externally generated sentences");
  std::string pr_kb = "gsim.jsonl", pr_out = "-", pr_generated, pr_dedup_corpus;
  std::size_t pr_size = 0, pr_min_lev = 10;
  std::vector<int> pr_ratio = {80, 20};
  bool pr_split = false;
  for (auto* sub : {pairs_mp, pairs_sp}) {
    sub->add_option("--kb", pr_kb);
    sub->add_option("--size", pr_size, "records to emit (0 = all eligible)");
    sub->add_option("--dedup-corpus", pr_dedup_corpus, "corpus whose sentences to exclude near-duplicates of");
    sub->add_option("--min-levenshtein", pr_min_lev);
    sub->add_option("--out", pr_out);
    sub->add_flag("--split", pr_split, "also write .train/.val files");
    sub->add_option("--ratio", pr_ratio)->expected(2);
  }
  pairs_sp->add_option("--generated", pr_generated, "JSONL of {item_id, text}")->required();

  // ---- report ----
  auto* report_cmd = app.add_subcommand("report", "re-render a JSON evaluation report");
  std::string rep_in, rep_out = "-", rep_format = "table";
  report_cmd->add_option("--in", rep_in)->required();
  report_cmd->add_option("--format", rep_format)->check(CLI::IsMember({"table", "json", "tsv"}));
  report_cmd->add_option("--out", rep_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*stats_cmd) {
      const std::string corpus_path = resolve_path(stats_corpus);
      const std::string split_path = resolve_path(stats_split);
      require_file(corpus_path);
      require_file(split_path);
      const auto corpus = sil::load_corpus(corpus_path);
      const auto split = sil::load_split(split_path);
      const auto table = sil::corpus_stats(corpus, split);
      emit(stats_out, sil::render_stats(table), invocation, "{}", {corpus_path, split_path}, seed);
    } else if (*agree_cmd) {
      if (agree_mode == "kappa") {
        const std::string a_path = resolve_path(agree_a), b_path = resolve_path(agree_b);
        require_file(a_path);
        require_file(b_path);
        auto read_labels = [](const std::string& path) {
          std::vector<int> labels;
          std::istringstream in(read_file(path));
          int v;
          while (in >> v) labels.push_back(v);
          return labels;
        };
        std::cout << sil::cohens_kappa(read_labels(a_path), read_labels(b_path)) << "\n";
      } else {
        const std::string path = resolve_path(agree_annotations);
        require_file(path);
        const json rec = json::parse(read_file(path));
        std::vector<std::vector<std::set<std::string>>> annotations;
        for (const auto& annotator : rec) {
          std::vector<std::set<std::string>> units;
          for (const auto& unit : annotator) {
            std::set<std::string> labels;
            for (const auto& id : unit) labels.insert(id.get<std::string>());
            units.push_back(std::move(labels));
          }
          annotations.push_back(std::move(units));
        }
        const auto distance = agree_distance == "nominal" ? sil::SetDistance::Nominal
                                                          : sil::SetDistance::Jaccard;
        std::cout << sil::krippendorff_alpha(annotations, distance) << "\n";
      }
    } else if (*kb_cmd) {
      const std::string path = resolve_path(kb_path);
      require_file(path);
      auto kb = sil::load_kb(path);
      if (*kb_dedup) {
        kb = sil::dedup_items(kb);
        emit(kb_out, sil::serialize_kb(kb), invocation, "{}", {path}, seed);
        std::cerr << "deduplicated KB: " << kb.size() << " items, " << kb.survey_count()
                  << " surveys\n";
      } else {
        std::ostringstream summary;
        summary << "items\t" << kb.size() << "\nsurveys\t" << kb.survey_count() << "\n";
        emit(kb_out, summary.str(), invocation, "{}", {path}, seed);
      }
    } else if (*detect_cmd) {
      const std::string corpus_path = resolve_path(det_corpus);
      require_file(corpus_path);
      const auto corpus = sil::load_corpus(corpus_path);
      if (*detect_train) {
        const std::string split_path = resolve_path(det_split);
        require_file(split_path);
        const auto split = sil::load_split(split_path);
        DetectModel model;
        model.tokenizer = make_tokenizer(det_tokenizer, det_ngram);
        model.context = parse_context(det_context);
        std::vector<std::vector<std::string>> token_docs;
        std::vector<int> labels;
        for (const auto& doc : corpus.docs) {
          if (!split.train.count(doc.doc_id)) continue;
          for (const auto& sent : doc.sentences) {
            token_docs.push_back(
                sil::tokenize(sil::expand_context(doc, sent.idx, model.context), model.tokenizer));
            labels.push_back(sent.label);
          }
        }
        model.tfidf = sil::fit_tfidf(token_docs);
        std::vector<sil::SparseVec> features;
        features.reserve(token_docs.size());
        for (const auto& tokens : token_docs) {
          features.push_back(sil::transform_tfidf(model.tfidf, tokens));
        }
        sil::LogRegOptions options;
        options.epochs = det_epochs;
        options.learning_rate = det_lr;
        options.l2 = det_l2;
        options.seed = seed;
        model.logreg = sil::train_logreg(features, labels, model.tfidf.dim(), options);
        json config{{"epochs", det_epochs}, {"lr", det_lr}, {"l2", det_l2},
                    {"tokenizer", det_tokenizer}, {"context", det_context}};
        emit(det_out, serialize_detect_model(model), invocation, config.dump(),
             {corpus_path, split_path}, seed);
      } else if (*detect_predict) {
        const std::string model_path = resolve_path(det_model);
        require_file(model_path);
        const auto model = parse_detect_model(read_file(model_path));
        sil::PredictionMap predictions;
        for (const auto& doc : corpus.docs) {
          for (const auto& sent : doc.sentences) {
            const auto tokens = sil::tokenize(
                sil::expand_context(doc, sent.idx, model.context), model.tokenizer);
            predictions[{doc.doc_id, sent.idx}] =
                sil::predict_logreg(model.logreg, sil::transform_tfidf(model.tfidf, tokens));
          }
        }
        emit(det_out, sil::serialize_predictions(predictions), invocation, "{}",
             {corpus_path, model_path}, seed);
      } else {
        const std::string pred_path = resolve_path(det_pred);
        require_file(pred_path);
        const auto predictions = sil::load_predictions(pred_path);
        const auto report = sil::evaluate_md(predictions, corpus);
        std::ostringstream out;
        out << "subset\tprecision\trecall\tf1\n";
        for (const auto& [lang, prf] : report.by_language) {
          out << lang << "\t" << prf.precision << "\t" << prf.recall << "\t" << prf.f1 << "\n";
        }
        out << "pooled\t" << report.pooled.precision << "\t" << report.pooled.recall << "\t"
            << report.pooled.f1 << "\n";
        out << "macro_f1\t\t\t" << report.macro_f1 << "\n";
        out << "total_f1_averaged\t\t\t" << report.total_f1_averaged << "\n";
        if (!det_slices.empty()) {
          std::vector<sil::SliceAxis> axes;
          for (const auto& name : det_slices) {
            if (name == "language") axes.push_back(sil::SliceAxis::Language);
            else if (name == "type") axes.push_back(sil::SliceAxis::Type);
            else if (name == "subtype") axes.push_back(sil::SliceAxis::Subtype);
            else if (name == "item_count") axes.push_back(sil::SliceAxis::ItemCount);
            else throw std::runtime_error("unknown slice axis: " + name);
          }
          out << sil::render_report(sil::evaluate_sliced_md(predictions, corpus, axes),
                                    sil::ReportFormat::Tsv);
        }
        emit(det_out, out.str(), invocation, "{}", {corpus_path, pred_path}, seed);
      }
    } else if (*retrieve_cmd) {
      if (*retrieve_index) {
        const std::string kb_file = resolve_path(ret_kb);
        require_file(kb_file);
        const auto kb = sil::load_kb(kb_file);
        std::ostringstream out;
        sil::VerbalizationSpec spec;
        for (const auto& [id, item] : kb.items()) {
          out << id << "\t" << sil::verbalize(item, spec) << "\n";
        }
        emit(ret_out, out.str(), invocation, "{}", {kb_file}, seed);
      } else if (*retrieve_query) {
        const std::string kb_file = resolve_path(ret_kb);
        const std::string corpus_path = resolve_path(ret_corpus);
        require_file(kb_file);
        require_file(corpus_path);
        const auto kb = sil::load_kb(kb_file);
        const auto corpus = sil::load_corpus(corpus_path);
        sil::SmpConfig cfg;
        cfg.md_source = sil::MdSource::Oracle;
        cfg.ed_backend = ret_backend == "dense" ? sil::EdBackend::Dense : sil::EdBackend::Bm25;
        cfg.k = ret_k;
        cfg.filter_citations = !ret_no_filter;
        cfg.context_mode = parse_context(ret_context);
        cfg.tokenizer = make_tokenizer(ret_tokenizer, ret_ngram);
        cfg.bm25_k1 = ret_k1;
        cfg.bm25_b = ret_b;
        cfg.hash_dim = ret_hash_dim;
        cfg.threads = ret_threads;
        sil::ExternalEmbeddings embeddings;
        std::vector<std::string> inputs = {kb_file, corpus_path};
        const sil::ExternalEmbeddings* embeddings_ptr = nullptr;
        if (!ret_embeddings.empty()) {
          const std::string items_path = resolve_path(ret_embeddings);
          const std::string sentences_path = resolve_path(ret_query_embeddings);
          require_file(items_path);
          require_file(sentences_path);
          embeddings.items = sil::load_embeddings(items_path);
          embeddings.sentences = sil::load_embeddings(sentences_path);
          embeddings_ptr = &embeddings;
          inputs.push_back(items_path);
          inputs.push_back(sentences_path);
        }
        const auto result = sil::run_smp(corpus, kb, cfg, nullptr, embeddings_ptr);
        json config{{"backend", ret_backend}, {"k", ret_k}, {"filter", !ret_no_filter},
                    {"context", ret_context}, {"tokenizer", ret_tokenizer}};
        emit(ret_out, sil::serialize_run(result.rankings), invocation, config.dump(), inputs, seed);
        if (!ret_qrels_out.empty()) {
          emit(ret_qrels_out, sil::serialize_qrels(result.qrels), invocation, config.dump(),
               inputs, seed);
        }
      } else {
        const std::string run_path = resolve_path(ret_run);
        const std::string qrels_path = resolve_path(ret_qrels);
        require_file(run_path);
        require_file(qrels_path);
        const auto rankings = sil::load_run(run_path);
        auto qrels = sil::load_qrels(qrels_path);
        if (ret_relax > 0) {
          const std::string kb_file = resolve_path(ret_kb);
          require_file(kb_file);
          const auto kb = sil::load_kb(kb_file);
          for (auto& [query_id, gold] : qrels.relevant) {
            std::set<std::string> known;
            for (const auto& id : gold) {
              if (kb.contains(id)) known.insert(id);
            }
            if (!known.empty()) gold = sil::relax_gold(known, ret_relax, kb);
          }
        }
        sil::MetricConfig cfg;
        cfg.k = ret_k;
        cfg.ap_variant = ret_ap_variant == "literal" ? sil::ApVariant::PaperLiteral
                                                     : sil::ApVariant::StandardTruncated;
        cfg.relaxed_radius = ret_relax;
        std::vector<sil::MetricResult> results;
        if (ret_metric == "all" || ret_metric == "recall") {
          results.push_back(sil::evaluate_rankings(sil::RankMetric::Recall, rankings, qrels, cfg));
        }
        if (ret_metric == "all" || ret_metric == "map") {
          results.push_back(sil::evaluate_rankings(sil::RankMetric::Map, rankings, qrels, cfg));
        }
        if (ret_metric == "all" || ret_metric == "ndcg") {
          results.push_back(sil::evaluate_rankings(sil::RankMetric::Ndcg, rankings, qrels, cfg));
        }
        std::string content;
        if (results.size() == 1 && ret_out == "-") {
          std::ostringstream one;
          one << results.front().value << "\n";
          content = one.str();
        } else {
          content = sil::metric_results_to_json(results) + "\n";
        }
        emit(ret_out, content, invocation, "{}", {run_path, qrels_path}, seed);
      }
    } else if (*smp_cmd) {
      const std::string corpus_path = resolve_path(smp_corpus);
      const std::string kb_file = resolve_path(smp_kb);
      require_file(corpus_path);
      require_file(kb_file);
      const auto corpus = sil::load_corpus(corpus_path);
      const auto kb = sil::load_kb(kb_file);
      sil::SmpConfig cfg;
      cfg.md_source = smp_md == "oracle" ? sil::MdSource::Oracle : sil::MdSource::File;
      cfg.ed_backend = smp_ed == "dense" ? sil::EdBackend::Dense : sil::EdBackend::Bm25;
      cfg.k = smp_k;
      cfg.filter_citations = !smp_no_filter;
      cfg.relaxed_radius = smp_relax;
      cfg.context_mode = parse_context(smp_context);
      cfg.ap_variant = smp_ap_variant == "literal" ? sil::ApVariant::PaperLiteral
                                                   : sil::ApVariant::StandardTruncated;
      cfg.tokenizer = make_tokenizer(smp_tokenizer, smp_ngram);
      cfg.hash_dim = smp_hash_dim;
      cfg.threads = smp_threads;
      sil::PredictionMap predictions;
      std::vector<std::string> inputs = {corpus_path, kb_file};
      const sil::PredictionMap* predictions_ptr = nullptr;
      if (cfg.md_source == sil::MdSource::File) {
        const std::string pred_path = resolve_path(smp_pred);
        require_file(pred_path);
        predictions = sil::load_predictions(pred_path);
        predictions_ptr = &predictions;
        inputs.push_back(pred_path);
      }
      const auto result = sil::run_smp(corpus, kb, cfg, predictions_ptr);
      json config{{"md", smp_md}, {"ed", smp_ed}, {"k", smp_k}, {"filter", !smp_no_filter},
                  {"relax", smp_relax}, {"context", smp_context}, {"ap_variant", smp_ap_variant},
                  {"spurious_queries", result.spurious_queries}};
      const auto format = smp_format == "table" ? sil::ReportFormat::Table
                          : smp_format == "tsv" ? sil::ReportFormat::Tsv
                                                : sil::ReportFormat::Json;
      emit(smp_out, sil::render_report(result.ed_report, format), invocation, config.dump(),
           inputs, seed);
      if (!smp_run_out.empty()) {
        emit(smp_run_out, sil::serialize_run(result.rankings), invocation, config.dump(), inputs,
             seed);
      }
      std::cerr << "spurious queries: " << result.spurious_queries << "\n";
    } else if (*agg_cmd) {
      const std::string run_path = resolve_path(agg_run);
      const std::string corpus_path = resolve_path(agg_corpus);
      require_file(run_path);
      require_file(corpus_path);
      const auto rankings = sil::load_run(run_path);
      const auto corpus = sil::load_corpus(corpus_path);
      const auto fusion = agg_fusion == "sum" ? sil::FusionMode::Sum : sil::FusionMode::Max;
      std::ostringstream out;
      out.precision(17);
      for (const auto& [cutoff, recall] :
           sil::aggregation_curve(rankings, corpus, agg_max_cutoff, fusion)) {
        out << cutoff << "\t" << recall << "\n";
      }
      emit(agg_out, out.str(), invocation, "{}", {run_path, corpus_path}, seed);
    } else if (*pairs_cmd) {
      const std::string kb_file = resolve_path(pr_kb);
      require_file(kb_file);
      const auto kb = sil::load_kb(kb_file);
      sil::PairGenConfig cfg;
      cfg.seed = seed;
      cfg.min_levenshtein = pr_min_lev;
      cfg.split_ratio = {pr_ratio[0], pr_ratio[1]};
      std::vector<std::string> inputs = {kb_file};
      if (!pr_dedup_corpus.empty()) {
        const std::string dedup_path = resolve_path(pr_dedup_corpus);
        require_file(dedup_path);
        for (const auto& doc : sil::load_corpus(dedup_path).docs) {
          for (const auto& sent : doc.sentences) cfg.dedup_corpus.push_back(sent.text);
        }
        inputs.push_back(dedup_path);
      }
      std::vector<sil::PairRecord> pairs;
      if (*pairs_mp) {
        cfg.mp_size = pr_size;
        pairs = sil::generate_mp(kb, cfg);
        if (cfg.mp_size && pairs.size() < cfg.mp_size) {
          std::cerr << "warning: only " << pairs.size() << " of " << cfg.mp_size
                    << " requested pairs were eligible\n";
        }
      } else {
        cfg.sp_size = pr_size;
        const std::string generated_path = resolve_path(pr_generated);
        require_file(generated_path);
        pairs = sil::generate_sp(sil::load_generated_sentences(generated_path), kb, cfg);
        inputs.push_back(generated_path);
      }
      json config{{"size", pr_size}, {"min_levenshtein", pr_min_lev},
                  {"ratio", pr_ratio}, {"seed", seed}};
      emit(pr_out, sil::serialize_pairs(pairs), invocation, config.dump(), inputs, seed);
      if (pr_split && pr_out != "-") {
        auto [train, validation] = sil::split_pairs(pairs, cfg.split_ratio, seed);
        emit(pr_out + ".train", sil::serialize_pairs(train), invocation, config.dump(), inputs, seed);
        emit(pr_out + ".val", sil::serialize_pairs(validation), invocation, config.dump(), inputs, seed);
      }
    } else if (*report_cmd) {
      const std::string in_path = resolve_path(rep_in);
      require_file(in_path);
      const auto report = sil::parse_report_json(read_file(in_path));
      const auto format = rep_format == "json" ? sil::ReportFormat::Json
                          : rep_format == "tsv" ? sil::ReportFormat::Tsv
                                                : sil::ReportFormat::Table;
      emit(rep_out, sil::render_report(report, format), invocation, "{}", {in_path}, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
