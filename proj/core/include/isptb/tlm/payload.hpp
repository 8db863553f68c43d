#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace isptb::tlm {

enum class Command { Read, Write };

enum class Status { Incomplete, Ok, AddressError, GenericError };

inline std::string_view to_string(Status s) {
    switch (s) {
    case Status::Incomplete: return "INCOMPLETE";
    case Status::Ok: return "OK";
    case Status::AddressError: return "ADDRESS_ERROR";
    case Status::GenericError: return "GENERIC_ERROR";
    }
    return "?";
}

// Memory-mapped transaction carried through b_transport. Issued with status
// Incomplete; exactly one target sets the final status. Data length is
// preserved across transport (1..8 bytes for register traffic, little-endian
// word order for the 4-byte accesses used throughout this testbench).
struct GenericPayload {
    Command command = Command::Read;
    std::uint64_t address = 0;
    std::vector<std::uint8_t> data;
    Status status = Status::Incomplete;

    static GenericPayload read32(std::uint64_t address) {
        GenericPayload p;
        p.command = Command::Read;
        p.address = address;
        p.data.assign(4, 0);
        return p;
    }

    static GenericPayload write32(std::uint64_t address, std::uint32_t value) {
        GenericPayload p;
        p.command = Command::Write;
        p.address = address;
        p.data = {static_cast<std::uint8_t>(value & 0xFF),
                  static_cast<std::uint8_t>((value >> 8) & 0xFF),
                  static_cast<std::uint8_t>((value >> 16) & 0xFF),
                  static_cast<std::uint8_t>((value >> 24) & 0xFF)};
        return p;
    }

    std::uint32_t value32() const {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < data.size() && i < 4; ++i) {
            v |= static_cast<std::uint32_t>(data[i]) << (8 * i);
        }
        return v;
    }

    void set_value32(std::uint32_t value) {
        data.assign({static_cast<std::uint8_t>(value & 0xFF),
                     static_cast<std::uint8_t>((value >> 8) & 0xFF),
                     static_cast<std::uint8_t>((value >> 16) & 0xFF),
                     static_cast<std::uint8_t>((value >> 24) & 0xFF)});
    }
};

} // namespace isptb::tlm
