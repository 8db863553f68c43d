#pragma once

#include "isptb/frame.hpp"
#include "isptb/isp/fault.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace isptb::isp {

// Decoded configuration of the four-stage pipeline. Bijective with the
// register map content (modulo the read-only STATUS register).
struct IspConfig {
    bool pipe_en = false;
    bool bl_en = false;
    bool gain_en = false;
    bool gamma_en = false;
    bool conv_en = false;
    std::uint8_t black_level = 0;
    std::uint16_t gain = 0x0100; // unsigned fixed-point 8.8
    std::array<std::uint8_t, 256> lut{};
    std::array<std::int8_t, 9> kernel{}; // row-major 3x3, two's complement
    unsigned shift = 0;                  // arithmetic right shift, 0..7
    unsigned width = 0;
    unsigned height = 0;

    static IspConfig identity(unsigned width, unsigned height);

    bool operator==(const IspConfig&) const = default;
};

// Per-pixel stages.
std::uint8_t stage_black_level(std::uint8_t p, std::uint8_t bl);
std::uint8_t stage_gain(std::uint8_t p, std::uint16_t gain_fx88);
std::uint8_t stage_gamma(std::uint8_t p, const std::array<std::uint8_t, 256>& lut);

// 3x3 convolution with edge-replicated borders: signed neighborhood sum,
// arithmetic right shift (truncation toward minus infinity), clamp to
// [0, 255]. Frames must be at least 3x3.
Frame stage_conv(const Frame& frame, const std::array<std::int8_t, 9>& kernel, unsigned shift);

// Golden reference: enabled stages applied in fixed order BL->GAIN->GAMMA->
// CONV, disabled stages are identity. Returns nothing when pipe_en is false
// (the frame is dropped). Throws std::invalid_argument on a width/height
// mismatch between config and frame.
std::optional<Frame> ref_process_frame(const IspConfig& cfg, const Frame& frame);

// The stand-in's internal path: same stage order and arithmetic, with an
// optional fault XORed onto the configured stage's output.
std::optional<Frame> staged_process(const IspConfig& cfg, const Frame& frame,
                                    const std::optional<FaultSpec>& fault);

// Register-map codec. peek reads a map-local offset from DUT storage.
using PeekFn = std::function<std::optional<std::uint32_t>(std::uint64_t)>;
IspConfig decode_isp_config(const PeekFn& peek);

// Ordered (offset, value) writes that program `cfg` into the map,
// LUT included. decode(encode(cfg)) == cfg.
std::vector<std::pair<std::uint64_t, std::uint32_t>> encode_isp_config(const IspConfig& cfg);

} // namespace isptb::isp
