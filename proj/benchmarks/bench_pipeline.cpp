#include "isptb/isp/pipeline.hpp"
#include "isptb/uvc/stimulus.hpp"

#include <benchmark/benchmark.h>

using namespace isptb;

namespace {

isp::IspConfig full_config(unsigned dim) {
    isp::IspConfig cfg = isp::IspConfig::identity(dim, dim);
    cfg.bl_en = cfg.gain_en = cfg.gamma_en = cfg.conv_en = true;
    cfg.black_level = 16;
    cfg.gain = 0x0180;
    cfg.kernel = {1, 1, 1, 1, 1, 1, 1, 1, 1};
    cfg.shift = 3;
    return cfg;
}

} // namespace

static void BM_RefPipelineFull(benchmark::State& state) {
    const auto dim = static_cast<unsigned>(state.range(0));
    const isp::IspConfig cfg = full_config(dim);
    uvc::SplitMix64 rng(1);
    const Frame frame = uvc::random_frame(rng, dim, dim);
    for (auto _ : state) {
        auto out = isp::ref_process_frame(cfg, frame);
        benchmark::DoNotOptimize(out->pixels.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * dim * dim);
}
BENCHMARK(BM_RefPipelineFull)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

static void BM_Convolution3x3(benchmark::State& state) {
    const auto dim = static_cast<unsigned>(state.range(0));
    uvc::SplitMix64 rng(2);
    const Frame frame = uvc::random_frame(rng, dim, dim);
    const std::array<std::int8_t, 9> kernel = {1, 2, 1, 2, 4, 2, 1, 2, 1};
    for (auto _ : state) {
        Frame out = isp::stage_conv(frame, kernel, 4);
        benchmark::DoNotOptimize(out.pixels.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * dim * dim);
}
BENCHMARK(BM_Convolution3x3)->Arg(64)->Arg(256);

static void BM_RandomFrame(benchmark::State& state) {
    const auto dim = static_cast<unsigned>(state.range(0));
    uvc::SplitMix64 rng(3);
    for (auto _ : state) {
        Frame f = uvc::random_frame(rng, dim, dim);
        benchmark::DoNotOptimize(f.pixels.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * dim * dim);
}
BENCHMARK(BM_RandomFrame)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
