#include "frobrew/confluence.hpp"
#include "frobrew/functor.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace frobrew;

std::shared_ptr<const Signature> bench_signature() {
  Signature sig;
  ColourId c = sig.add_colour("c");
  ColourId d = sig.add_colour("d");
  sig.add_operation("f", Word{{c}}, Word{{c}});
  sig.add_operation("g", Word{{c, c}}, Word{{c}});
  sig.add_operation("h", Word{{c}}, Word{{c, d}});
  return std::make_shared<Signature>(std::move(sig));
}

// A chain of g-edges: (g + id^k) ; (g + id^(k-1)) ; ... ; g
Diagram wide_term(const std::shared_ptr<const Signature>& sig, int layers) {
  ColourId c = *sig->find_colour("c");
  Diagram acc = Diagram::gen(*sig, *sig->find_operation("g"));
  for (int i = 1; i < layers; ++i) {
    Word pad;
    for (int j = 0; j < i; ++j) pad.push_back(c);
    acc = Diagram::seq(Diagram::par(Diagram::gen(*sig, *sig->find_operation("g")),
                                    id_word(pad)),
                       acc);
  }
  return acc;
}

Hypergraph random_host(const std::shared_ptr<const Signature>& sig, int nodes,
                       int edges, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Hypergraph g(sig);
  ColourId c = *sig->find_colour("c");
  for (int i = 0; i < nodes; ++i) g.add_node(c);
  OpId gop = *sig->find_operation("g");
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(nodes - 1));
  for (int i = 0; i < edges; ++i)
    g.add_edge(gop, {pick(rng), pick(rng)}, {pick(rng)});
  return g;
}

void bm_translate(benchmark::State& state) {
  auto sig = bench_signature();
  Diagram t = wide_term(sig, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(translate(sig, t));
}
BENCHMARK(bm_translate)->Arg(4)->Arg(8)->Arg(12);

void bm_cospan_equal(benchmark::State& state) {
  auto sig = bench_signature();
  Diagram t = wide_term(sig, static_cast<int>(state.range(0)));
  Cospan a = translate(sig, t);
  Cospan b = translate(sig, t);
  for (auto _ : state) benchmark::DoNotOptimize(cospan_equal(a, b));
}
BENCHMARK(bm_cospan_equal)->Arg(4)->Arg(8);

void bm_find_homomorphisms(benchmark::State& state) {
  auto sig = bench_signature();
  Hypergraph pattern = random_host(sig, 3, 2, 7);
  Hypergraph host = random_host(sig, static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(find_homomorphisms(pattern, host));
}
BENCHMARK(bm_find_homomorphisms)->Arg(6)->Arg(10)->Arg(14);

void bm_critical_pairs(benchmark::State& state) {
  auto sig = bench_signature();
  Diagram f = Diagram::gen(*sig, *sig->find_operation("f"));
  Rule r{"ff", Diagram::seq(f, f), f};
  std::vector<DpoRule> rules{rule_from_diagrams(sig, r)};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_critical_pairs(rules));
}
BENCHMARK(bm_critical_pairs);

void bm_rewrite_step(benchmark::State& state) {
  auto sig = bench_signature();
  Diagram f = Diagram::gen(*sig, *sig->find_operation("f"));
  Rule r{"ff", Diagram::seq(f, f), f};
  std::vector<Rule> rules{r};
  Diagram input = Diagram::seq(Diagram::seq(f, f), f);
  for (auto _ : state)
    benchmark::DoNotOptimize(syntactic_step(sig, rules, input));
}
BENCHMARK(bm_rewrite_step);

}  // namespace

BENCHMARK_MAIN();
