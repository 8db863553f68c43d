#pragma once

#include "isptb/reg/address_map.hpp"

#include <cstdint>

namespace isptb::isp {

// DUT register layout. The shipped isp_regs.xml fixture encodes exactly this
// map; a unit test pins the two against each other.
namespace offsets {
inline constexpr std::uint64_t kCtrl = 0x000;
inline constexpr std::uint64_t kFrameSize = 0x004;
inline constexpr std::uint64_t kBlackLevel = 0x008;
inline constexpr std::uint64_t kGain = 0x00C;
inline constexpr std::uint64_t kConvShift = 0x010;
inline constexpr std::uint64_t kKernel0 = 0x014; // KERNEL0..KERNEL8 at 0x014..0x034
inline constexpr std::uint64_t kStatus = 0x040;
inline constexpr std::uint64_t kGammaLut = 0x400; // 256 words, one LUT entry each
} // namespace offsets

namespace ctrl {
inline constexpr std::uint32_t kBlEn = 1u << 0;
inline constexpr std::uint32_t kGainEn = 1u << 1;
inline constexpr std::uint32_t kGammaEn = 1u << 2;
inline constexpr std::uint32_t kConvEn = 1u << 3;
inline constexpr std::uint32_t kPipeEn = 1u << 4;
} // namespace ctrl

namespace status {
inline constexpr std::uint32_t kBusy = 1u << 0;
inline constexpr std::uint32_t kFrameDone = 1u << 1;
inline constexpr unsigned kDroppedLsb = 8; // dropped counter in bits [15:8]
inline constexpr std::uint32_t kDroppedMask = 0xFFu << kDroppedLsb;
} // namespace status

// Base 0x0: 15 registers plus the GAMMA_LUT memory at 0x400.
reg::AddressMap dut_address_map();

} // namespace isptb::isp
