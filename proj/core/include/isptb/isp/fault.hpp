#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace isptb::isp {

enum class Stage { BlackLevel, Gain, Gamma, Conv };

std::optional<Stage> stage_from_string(std::string_view s);
std::string_view to_string(Stage s);

// Injected divergence for scoreboard-detection tests: XORs `xor_mask` onto
// the named stage's output, either at one pixel index or at every pixel.
// xor_mask != 0, so at least one bit flips whenever the stage is enabled.
struct FaultSpec {
    Stage stage = Stage::Gain;
    std::uint8_t xor_mask = 0x01;
    std::optional<std::uint32_t> pixel_index; // nullopt == ALL

    bool operator==(const FaultSpec&) const = default;
};

} // namespace isptb::isp
