#include "isptb/isp/pipeline.hpp"

#include "isptb/isp/reg_layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace isptb::isp {

std::optional<Stage> stage_from_string(std::string_view s) {
    if (s == "BL") return Stage::BlackLevel;
    if (s == "GAIN") return Stage::Gain;
    if (s == "GAMMA") return Stage::Gamma;
    if (s == "CONV") return Stage::Conv;
    return std::nullopt;
}

std::string_view to_string(Stage s) {
    switch (s) {
    case Stage::BlackLevel: return "BL";
    case Stage::Gain: return "GAIN";
    case Stage::Gamma: return "GAMMA";
    case Stage::Conv: return "CONV";
    }
    return "?";
}

IspConfig IspConfig::identity(unsigned width, unsigned height) {
    IspConfig cfg;
    cfg.pipe_en = true;
    cfg.width = width;
    cfg.height = height;
    for (unsigned i = 0; i < 256; ++i) cfg.lut[i] = static_cast<std::uint8_t>(i);
    cfg.kernel = {0, 0, 0, 0, 1, 0, 0, 0, 0};
    return cfg;
}

std::uint8_t stage_black_level(std::uint8_t p, std::uint8_t bl) {
    return p > bl ? static_cast<std::uint8_t>(p - bl) : 0;
}

std::uint8_t stage_gain(std::uint8_t p, std::uint16_t gain_fx88) {
    const std::uint32_t scaled = (static_cast<std::uint32_t>(p) * gain_fx88) >> 8;
    return scaled > 255 ? 255 : static_cast<std::uint8_t>(scaled);
}

std::uint8_t stage_gamma(std::uint8_t p, const std::array<std::uint8_t, 256>& lut) {
    return lut[p];
}

Frame stage_conv(const Frame& frame, const std::array<std::int8_t, 9>& kernel, unsigned shift) {
    if (frame.width < 3 || frame.height < 3) {
        throw std::invalid_argument("stage_conv: frame must be at least 3x3");
    }
    const int w = static_cast<int>(frame.width);
    const int h = static_cast<int>(frame.height);
    Frame out;
    out.width = frame.width;
    out.height = frame.height;
    out.pixels.resize(frame.pixels.size());

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::int32_t acc = 0;
            for (int ky = -1; ky <= 1; ++ky) {
                for (int kx = -1; kx <= 1; ++kx) {
                    const int sx = std::clamp(x + kx, 0, w - 1);
                    const int sy = std::clamp(y + ky, 0, h - 1);
                    const std::int32_t coeff = kernel[static_cast<std::size_t>((ky + 1) * 3 + (kx + 1))];
                    acc += coeff * frame.pixels[static_cast<std::size_t>(sy) * frame.width +
                                                static_cast<std::size_t>(sx)];
                }
            }
            acc >>= shift; // arithmetic: truncates toward minus infinity
            acc = std::clamp<std::int32_t>(acc, 0, 255);
            out.pixels[static_cast<std::size_t>(y) * frame.width + static_cast<std::size_t>(x)] =
                static_cast<std::uint8_t>(acc);
        }
    }
    return out;
}

namespace {

std::optional<Frame> run_stages(const IspConfig& cfg, const Frame& frame,
                                const std::optional<FaultSpec>& fault) {
    if (cfg.width != frame.width || cfg.height != frame.height) {
        throw std::invalid_argument("pipeline: frame dimensions do not match the configuration");
    }
    if (!cfg.pipe_en) return std::nullopt;

    auto inject = [&](Stage stage, Frame& f) {
        if (!fault || fault->stage != stage) return;
        if (fault->pixel_index) {
            if (*fault->pixel_index < f.pixels.size()) {
                f.pixels[*fault->pixel_index] ^= fault->xor_mask;
            }
        } else {
            for (auto& p : f.pixels) p ^= fault->xor_mask;
        }
    };

    Frame cur = frame;
    if (cfg.bl_en) {
        for (auto& p : cur.pixels) p = stage_black_level(p, cfg.black_level);
        inject(Stage::BlackLevel, cur);
    }
    if (cfg.gain_en) {
        for (auto& p : cur.pixels) p = stage_gain(p, cfg.gain);
        inject(Stage::Gain, cur);
    }
    if (cfg.gamma_en) {
        for (auto& p : cur.pixels) p = stage_gamma(p, cfg.lut);
        inject(Stage::Gamma, cur);
    }
    if (cfg.conv_en) {
        cur = stage_conv(cur, cfg.kernel, cfg.shift);
        inject(Stage::Conv, cur);
    }
    return cur;
}

} // namespace

std::optional<Frame> ref_process_frame(const IspConfig& cfg, const Frame& frame) {
    return run_stages(cfg, frame, std::nullopt);
}

std::optional<Frame> staged_process(const IspConfig& cfg, const Frame& frame,
                                    const std::optional<FaultSpec>& fault) {
    return run_stages(cfg, frame, fault);
}

IspConfig decode_isp_config(const PeekFn& peek) {
    auto word = [&](std::uint64_t offset) -> std::uint32_t {
        const auto v = peek(offset);
        return v ? *v : 0;
    };

    IspConfig cfg;
    const std::uint32_t control = word(offsets::kCtrl);
    cfg.bl_en = control & ctrl::kBlEn;
    cfg.gain_en = control & ctrl::kGainEn;
    cfg.gamma_en = control & ctrl::kGammaEn;
    cfg.conv_en = control & ctrl::kConvEn;
    cfg.pipe_en = control & ctrl::kPipeEn;

    const std::uint32_t size = word(offsets::kFrameSize);
    cfg.width = size & 0xFFFF;
    cfg.height = (size >> 16) & 0xFFFF;
    cfg.black_level = static_cast<std::uint8_t>(word(offsets::kBlackLevel) & 0xFF);
    cfg.gain = static_cast<std::uint16_t>(word(offsets::kGain) & 0xFFFF);
    cfg.shift = word(offsets::kConvShift) & 0x7;
    for (unsigned i = 0; i < 9; ++i) {
        cfg.kernel[i] =
            static_cast<std::int8_t>(word(offsets::kKernel0 + 4ull * i) & 0xFF);
    }
    for (unsigned i = 0; i < 256; ++i) {
        cfg.lut[i] = static_cast<std::uint8_t>(word(offsets::kGammaLut + 4ull * i) & 0xFF);
    }
    return cfg;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> encode_isp_config(const IspConfig& cfg) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> writes;
    writes.reserve(14 + 256);
    writes.emplace_back(offsets::kFrameSize, (cfg.height << 16) | (cfg.width & 0xFFFF));
    writes.emplace_back(offsets::kBlackLevel, cfg.black_level);
    writes.emplace_back(offsets::kGain, cfg.gain);
    writes.emplace_back(offsets::kConvShift, cfg.shift);
    for (unsigned i = 0; i < 9; ++i) {
        writes.emplace_back(offsets::kKernel0 + 4ull * i,
                            static_cast<std::uint32_t>(static_cast<std::uint8_t>(cfg.kernel[i])));
    }
    for (unsigned i = 0; i < 256; ++i) {
        writes.emplace_back(offsets::kGammaLut + 4ull * i, cfg.lut[i]);
    }
    std::uint32_t control = 0;
    if (cfg.bl_en) control |= ctrl::kBlEn;
    if (cfg.gain_en) control |= ctrl::kGainEn;
    if (cfg.gamma_en) control |= ctrl::kGammaEn;
    if (cfg.conv_en) control |= ctrl::kConvEn;
    if (cfg.pipe_en) control |= ctrl::kPipeEn;
    // CTRL written last so a live pipeline only sees a complete configuration.
    writes.emplace_back(offsets::kCtrl, control);
    return writes;
}

} // namespace isptb::isp
