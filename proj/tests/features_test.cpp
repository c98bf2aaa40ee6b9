// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracle_metrics.hpp"
#include "sil/features.hpp"
#include "sil/rng.hpp"

using namespace sil;

TEST_CASE("word tokenizer folds case and strips punctuation") {
  const std::vector<std::string> expected = {"attendance", "for", "dental", "check", "ups"};
  CHECK(tokenize("Attendance for dental check-ups") == expected);
  CHECK(tokenize("  multiple   spaces\tand\nnewlines ") ==
        std::vector<std::string>{"multiple", "spaces", "and", "newlines"});
  CHECK(tokenize("") == std::vector<std::string>{});

  Tokenizer keep_punct;
  keep_punct.strip_punctuation = false;
  CHECK(tokenize("check-ups!", keep_punct) == std::vector<std::string>{"check-ups!"});
}

TEST_CASE("char ngram tokenizer pads one hash per side") {
  Tokenizer tok;
  tok.mode = TokenizerMode::CharNgram;
  tok.ngram = 3;
  CHECK(tokenize("ab", tok) == std::vector<std::string>{"#ab", "ab#"});
  CHECK(tokenize("AB", tok) == std::vector<std::string>{"#ab", "ab#"});
  CHECK(tokenize("abc", tok) == std::vector<std::string>{"#ab", "abc", "bc#"});
}

TEST_CASE("tfidf matches a brute-force reimplementation") {
  const std::vector<std::vector<std::string>> docs = {
      {"trust", "government", "trust"},
      {"government", "health"},
      {"health", "survey", "item"},
  };
  const auto model = fit_tfidf(docs);
  REQUIRE(model.doc_count == 3);

  // Independent recomputation of idf and the normalized weights.
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::set<std::string> seen(doc.begin(), doc.end());
    for (const auto& tok : seen) ++df[tok];
  }
  for (const auto& doc : docs) {
    const auto vec = transform_tfidf(model, doc);
    std::map<std::string, double> weights;
    for (const auto& tok : doc) weights[tok] += 1.0;
    double norm_sq = 0.0;
    for (auto& [tok, w] : weights) {
      w *= std::log((1.0 + 3.0) / (1.0 + static_cast<double>(df[tok]))) + 1.0;
      norm_sq += w * w;
    }
    const double norm = std::sqrt(norm_sq);
    REQUIRE(vec.size() == weights.size());
    double lib_norm_sq = 0.0;
    for (const auto& [col, w] : vec) lib_norm_sq += w * w;
    CHECK(lib_norm_sq == Catch::Approx(1.0).margin(1e-12));
    for (const auto& [tok, w] : weights) {
      const auto it = model.vocabulary.find(tok);
      REQUIRE(it != model.vocabulary.end());
      const auto found =
          std::find_if(vec.begin(), vec.end(),
                       [&](const auto& entry) { return entry.first == it->second; });
      REQUIRE(found != vec.end());
      CHECK(found->second == Catch::Approx(w / norm).margin(1e-12));
    }
  }

  SECTION("out-of-vocabulary only input gives the zero vector") {
    CHECK(transform_tfidf(model, {"unseen", "tokens"}).empty());
  }
  SECTION("empty corpus is rejected") { CHECK_THROWS(fit_tfidf({})); }
}

TEST_CASE("hash_embed is deterministic, normalized, and order-insensitive") {
  const auto a = hash_embed("trust in government", 64);
  const auto b = hash_embed("trust in government", 64);
  CHECK(a == b);
  CHECK(a.norm() == Catch::Approx(1.0).margin(1e-12));

  // Bag of tokens: permuting the words changes nothing.
  const auto permuted = hash_embed("government in trust", 64);
  CHECK(a == permuted);

  CHECK(hash_embed("different text entirely", 64).values != a.values);
  CHECK_THROWS(hash_embed("x", 4));  // dim below the minimum
}

TEST_CASE("cosine properties") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    DenseVector a, b;
    const std::size_t dim = 4 + rng.below(12);
    for (std::size_t i = 0; i < dim; ++i) {
      a.values.push_back(rng.unit() * 2.0 - 1.0);
      b.values.push_back(rng.unit() * 2.0 - 1.0);
    }
    const double ab = cosine(a, b);
    CHECK(ab == Catch::Approx(cosine(b, a)).margin(1e-12));  // symmetry
    CHECK(ab >= -1.0 - 1e-12);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(cosine(a, a) == Catch::Approx(1.0).margin(1e-9));

    // Positive scaling leaves cosine unchanged.
    DenseVector scaled = b;
    const double factor = 0.1 + rng.unit() * 5.0;
    for (auto& v : scaled.values) v *= factor;
    CHECK(cosine(a, scaled) == Catch::Approx(ab).margin(1e-9));
  }

  DenseVector zero{{0.0, 0.0}};
  DenseVector unit{{1.0, 0.0}};
  CHECK(cosine(zero, unit) == 0.0);
  CHECK(cosine(zero, zero) == 0.0);
  CHECK_THROWS(cosine(unit, DenseVector{{1.0, 0.0, 0.0}}));
}

TEST_CASE("sparse cosine agrees with the dense one") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 8;
    DenseVector da{std::vector<double>(dim, 0.0)}, db{std::vector<double>(dim, 0.0)};
    SparseVec sa, sb;
    for (std::uint32_t i = 0; i < dim; ++i) {
      if (rng.below(2)) {
        const double v = rng.unit() * 2.0 - 1.0;
        da.values[i] = v;
        sa.emplace_back(i, v);
      }
      if (rng.below(2)) {
        const double v = rng.unit() * 2.0 - 1.0;
        db.values[i] = v;
        sb.emplace_back(i, v);
      }
    }
    CHECK(cosine_sparse(sa, sb) == Catch::Approx(cosine(da, db)).margin(1e-12));
  }
}

TEST_CASE("euclidean and manhattan basics") {
  const DenseVector a{{0.0, 0.0}};
  const DenseVector b{{3.0, 4.0}};
  CHECK(euclidean(a, b) == Catch::Approx(5.0));
  CHECK(manhattan(a, b) == Catch::Approx(7.0));
  CHECK(euclidean(a, a) == 0.0);
}

TEST_CASE("levenshtein fixtures and metric axioms") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "") == 3);
  CHECK(levenshtein("same", "same") == 0);
  CHECK(levenshtein("flaw", "lawn") == 2);

  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = sil::test::random_text(rng, 1, 4);
    const auto b = sil::test::random_text(rng, 1, 4);
    const auto c = sil::test::random_text(rng, 1, 4);
    const auto dab = levenshtein(a, b);
    CHECK(dab == levenshtein(b, a));                    // symmetry
    CHECK((dab == 0) == (a == b));                      // identity
    CHECK(dab <= levenshtein(a, c) + levenshtein(c, b));  // triangle
    CHECK(dab == oracle::edit_distance(a, b));          // vs naive DP
  }
}

TEST_CASE("fnv1a64 matches known vectors") {
  // Reference values for the standard 64-bit FNV-1a parameters.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("embeddings TSV loads and validates dimensions") {
  const auto dir = std::filesystem::temp_directory_path() / "sil_feat_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "emb.tsv").string();
  {
    std::ofstream out(path);
    out << "item1\t0.1 0.2 0.3\nitem2\t1 0 0\n";
  }
  const auto embeddings = load_embeddings(path);
  REQUIRE(embeddings.size() == 2);
  CHECK(embeddings.at("item1").values == std::vector<double>{0.1, 0.2, 0.3});

  {
    std::ofstream out(path);
    out << "item1\t0.1 0.2\nitem2\t1 0 0\n";  // ragged dimensions
  }
  CHECK_THROWS(load_embeddings(path));
  std::filesystem::remove_all(dir);
}
