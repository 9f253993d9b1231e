#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "sema/builtins.hpp"
#include "sema/compose.hpp"
#include "sema/hol.hpp"
#include "sema/lexicon.hpp"
#include "sema/reduce.hpp"
#include "sema/sexpr.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const sema::lexicon::LoadResult& demo() {
  static const sema::lexicon::LoadResult ctx = sema::lexicon::load_sources(
      {slurp(std::string(SEMA_DATA_DIR) + "/demo-ontology.sexp"),
       slurp(std::string(SEMA_DATA_DIR) + "/demo-lexicon.sexp")});
  return ctx;
}

sema::compose::SyntaxTree tree(const char* name) {
  return sema::compose::parse_tree(
      slurp(std::string(SEMA_DATA_DIR) + "/trees/" + name + ".tree"));
}

void normalize_conjunction(benchmark::State& state) {
  const auto& ctx = demo();
  sema::sexpr::ReadContext rctx{&ctx.signature, &sema::builtin::definitions()};
  sema::kernel::Term term = sema::sexpr::parse_term(
      slurp(std::string(SEMA_DATA_DIR) + "/terms/and_book.term"), rctx);
  for (auto _ : state)
    benchmark::DoNotOptimize(sema::kernel::normalize(term).steps);
}

void readings_subject_chain(benchmark::State& state) {
  const auto& ctx = demo();
  auto t = tree("brits");
  for (auto _ : state) {
    auto rs = sema::compose::readings(t, ctx.lexicon, ctx.ontology,
                                      ctx.signature);
    benchmark::DoNotOptimize(rs.size());
  }
}

void readings_with_formula(benchmark::State& state) {
  const auto& ctx = demo();
  auto t = tree("carlotta");
  for (auto _ : state) {
    auto rs = sema::compose::readings(t, ctx.lexicon, ctx.ontology,
                                      ctx.signature);
    for (const auto& r : rs)
      benchmark::DoNotOptimize(sema::hol::to_formula(r, ctx.signature));
  }
}

void load_lexicon(benchmark::State& state) {
  std::string onto = slurp(std::string(SEMA_DATA_DIR) + "/demo-ontology.sexp");
  std::string lex = slurp(std::string(SEMA_DATA_DIR) + "/demo-lexicon.sexp");
  for (auto _ : state) {
    auto ctx = sema::lexicon::load_sources({onto, lex});
    benchmark::DoNotOptimize(ctx.lexicon.entries().size());
  }
}

}  // namespace

BENCHMARK(normalize_conjunction);
BENCHMARK(readings_subject_chain);
BENCHMARK(readings_with_formula);
BENCHMARK(load_lexicon);
BENCHMARK_MAIN();
