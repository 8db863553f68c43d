#include "isptb/sim/kernel.hpp"

#include <benchmark/benchmark.h>

using namespace isptb;

static void BM_ScheduleAndRun(benchmark::State& state) {
    const auto count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        sim::Kernel kernel;
        for (std::size_t i = 0; i < count; ++i) {
            kernel.schedule(i % 977, [] {});
        }
        kernel.run();
        benchmark::DoNotOptimize(kernel.now());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(count));
}
BENCHMARK(BM_ScheduleAndRun)->Range(1 << 10, 1 << 16);

static void BM_ProcessWaitSwitch(benchmark::State& state) {
    const auto waits = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        sim::Kernel kernel;
        kernel.spawn("p", [&kernel, waits]() -> sim::Job {
            for (std::size_t i = 0; i < waits; ++i) co_await kernel.wait(1);
        });
        kernel.run();
        benchmark::DoNotOptimize(kernel.now());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(waits));
}
BENCHMARK(BM_ProcessWaitSwitch)->Range(1 << 10, 1 << 15);

static void BM_NotifyFanout(benchmark::State& state) {
    const auto waiters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        sim::Kernel kernel;
        sim::Notification note(kernel);
        for (std::size_t i = 0; i < waiters; ++i) {
            kernel.spawn("w", [&]() -> sim::Job { co_await note.wait(); });
        }
        kernel.schedule(5, [&note] { note.notify(); });
        kernel.run();
        benchmark::DoNotOptimize(kernel.now());
    }
}
BENCHMARK(BM_NotifyFanout)->Range(8, 1 << 12);

BENCHMARK_MAIN();
