// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 silink Contributors

#include <string>

#include <benchmark/benchmark.h>

#include "sil/features.hpp"
#include "sil/rng.hpp"

namespace {

std::string synthetic_sentence(std::size_t words) {
  sil::Rng rng(5);
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += "word" + std::to_string(rng.below(5000));
  }
  return out;
}

void BM_Tokenize(benchmark::State& state) {
  const auto text = synthetic_sentence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sil::tokenize(text));
  }
}
BENCHMARK(BM_Tokenize)->Arg(20)->Arg(200);

void BM_HashEmbed(benchmark::State& state) {
  const auto text = synthetic_sentence(30);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sil::hash_embed(text, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_HashEmbed)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Levenshtein(benchmark::State& state) {
  const auto a = synthetic_sentence(static_cast<std::size_t>(state.range(0)));
  const auto b = synthetic_sentence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sil::levenshtein(a, b));
  }
}
BENCHMARK(BM_Levenshtein)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
