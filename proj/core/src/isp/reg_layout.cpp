#include "isptb/isp/reg_layout.hpp"

namespace isptb::isp {

reg::AddressMap dut_address_map() {
    using reg::Access;
    using reg::FieldSpec;
    using reg::MemorySpec;
    using reg::RegisterSpec;

    reg::AddressMap map;
    map.base = 0x0;
    map.name = "isp";

    map.registers.push_back(RegisterSpec{"CTRL",
                                         offsets::kCtrl,
                                         {
                                             FieldSpec{"bl_en", 0, 1, Access::RW, 0},
                                             FieldSpec{"gain_en", 1, 1, Access::RW, 0},
                                             FieldSpec{"gamma_en", 2, 1, Access::RW, 0},
                                             FieldSpec{"conv_en", 3, 1, Access::RW, 0},
                                             FieldSpec{"pipe_en", 4, 1, Access::RW, 0},
                                         }});
    map.registers.push_back(RegisterSpec{"FRAME_SIZE",
                                         offsets::kFrameSize,
                                         {
                                             FieldSpec{"width", 0, 16, Access::RW, 0},
                                             FieldSpec{"height", 16, 16, Access::RW, 0},
                                         }});
    map.registers.push_back(RegisterSpec{
        "BLACK_LEVEL", offsets::kBlackLevel, {FieldSpec{"level", 0, 8, Access::RW, 0}}});
    map.registers.push_back(
        RegisterSpec{"GAIN", offsets::kGain, {FieldSpec{"gain", 0, 16, Access::RW, 0x0100}}});
    map.registers.push_back(RegisterSpec{
        "CONV_SHIFT", offsets::kConvShift, {FieldSpec{"shift", 0, 3, Access::RW, 0}}});
    for (unsigned i = 0; i < 9; ++i) {
        // Two's-complement kernel coefficients; KERNEL4 (center) resets to 1.
        map.registers.push_back(
            RegisterSpec{"KERNEL" + std::to_string(i),
                         offsets::kKernel0 + 4ull * i,
                         {FieldSpec{"coeff", 0, 8, Access::RW, i == 4 ? 0x01u : 0x00u}}});
    }
    map.registers.push_back(RegisterSpec{"STATUS",
                                         offsets::kStatus,
                                         {
                                             FieldSpec{"busy", 0, 1, Access::RO, 0},
                                             FieldSpec{"frame_done", 1, 1, Access::W1C, 0},
                                             FieldSpec{"dropped", 8, 8, Access::RO, 0},
                                         }});

    map.memories.push_back(MemorySpec{"GAMMA_LUT", offsets::kGammaLut, 256 * 4});
    return map;
}

} // namespace isptb::isp
