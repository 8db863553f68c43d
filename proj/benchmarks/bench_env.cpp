#include "isptb/isp/reg_layout.hpp"
#include "isptb/tb/env.hpp"

#include <benchmark/benchmark.h>

using namespace isptb;

// Whole-bench throughput: build, program and stream N frames through the
// timed stand-in with the scoreboard live.
static void BM_StagedEnvRun(benchmark::State& state) {
    const auto frames = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        cfg::TbConfig config;
        config.seed = 1;
        config.frame_width = 64;
        config.frame_height = 64;
        config.frame_count = frames;
        config.dut_kind = cfg::DutKind::StagedPipeline;

        tb::Testbench bench(config, isp::dut_address_map());
        const auto outcome = bench.run();
        if (outcome != tb::TestOutcome::Pass) state.SkipWithError("bench run failed");
        benchmark::DoNotOptimize(bench.scoreboard().frames_compared());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * frames);
}
BENCHMARK(BM_StagedEnvRun)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
