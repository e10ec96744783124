#include <benchmark/benchmark.h>

#include <omd/chase.hpp>
#include <omd/homomorphism.hpp>
#include <omd/parser.hpp>

#include <sstream>
#include <string>

using namespace omd;

namespace {

// Transitive closure over a cycle of n nodes: a terminating, null-free chase
// dominated by trigger search and deduplication.
Program closure_program(int n) {
    std::ostringstream text;
    for (int i = 0; i < n; ++i)
        text << "E(c" << i << ", c" << (i + 1) % n << ").\n";
    text << "E(X, Y), E(Y, Z) -> P(X, Z).\n";
    text << "P(X, Y), E(Y, Z) -> P(X, Z).\n";
    return parse_program(text.str());
}

void BM_ChaseTransitiveClosure(benchmark::State& state) {
    Program program = closure_program(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ChaseResult r = run_chase(program, Instance{}, {});
        benchmark::DoNotOptimize(r.instance.size());
    }
}
BENCHMARK(BM_ChaseTransitiveClosure)->Arg(8)->Arg(16)->Arg(32);

// Unbounded invention cut off after n steps: stresses fresh-null creation and
// the level scheduler.
void BM_ChaseInventionChain(benchmark::State& state) {
    Program program = parse_program("R(a, b).\nR(X, Y) -> R(Y, Z).\n");
    ChaseOptions options;
    options.max_steps = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        ChaseResult r = run_chase(program, Instance{}, options);
        benchmark::DoNotOptimize(r.stats.nulls_created);
    }
}
BENCHMARK(BM_ChaseInventionChain)->Arg(32)->Arg(128)->Arg(512);

// n invented nulls collapsed into one by an equality rule: stresses merge and
// rename machinery.
void BM_ChaseEqualityMerges(benchmark::State& state) {
    std::ostringstream text;
    for (int i = 0; i < state.range(0); ++i) text << "U(c" << i << ").\n";
    text << "U(X) -> P(X, Y).\n";
    text << "P(X1, Y1), P(X2, Y2) -> Y1 = Y2.\n";
    Program program = parse_program(text.str());
    for (auto _ : state) {
        ChaseResult r = run_chase(program, Instance{}, {});
        benchmark::DoNotOptimize(r.stats.egd_merges);
    }
}
BENCHMARK(BM_ChaseEqualityMerges)->Arg(16)->Arg(64)->Arg(256);

// Path pattern over a cycle: homomorphism search with joins on shared
// variables.
void BM_FindHomomorphisms(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::ostringstream text;
    for (int i = 0; i < n; ++i)
        text << "E(c" << i << ", c" << (i + 1) % n << ").\n";
    Instance instance = parse_instance(text.str());
    const std::vector<Atom> pattern = {
        Atom{"E", {Term::variable("X"), Term::variable("Y")}},
        Atom{"E", {Term::variable("Y"), Term::variable("Z")}},
        Atom{"E", {Term::variable("Z"), Term::variable("W")}},
    };
    for (auto _ : state) {
        auto homs = find_homomorphisms(pattern, instance);
        benchmark::DoNotOptimize(homs.size());
    }
}
BENCHMARK(BM_FindHomomorphisms)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
