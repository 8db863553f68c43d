#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::reg {

enum class Access { RO, RW, WO, W1C };

std::optional<Access> access_from_string(std::string_view s);
std::string_view to_string(Access a);

// Single register field. lsb+width <= 32; fields of one register never
// overlap (enforced by validate_map).
struct FieldSpec {
    std::string name;
    unsigned lsb = 0;
    unsigned width = 1;
    Access access = Access::RW;
    std::uint32_t reset = 0;

    std::uint32_t mask() const {
        const std::uint64_t m = ((width >= 32) ? 0xFFFFFFFFull : ((1ull << width) - 1)) << lsb;
        return static_cast<std::uint32_t>(m);
    }
    std::uint32_t extract(std::uint32_t reg_value) const {
        return (reg_value & mask()) >> lsb;
    }
    std::uint32_t insert(std::uint32_t reg_value, std::uint32_t field_value) const {
        return (reg_value & ~mask()) | ((field_value << lsb) & mask());
    }

    bool operator==(const FieldSpec&) const = default;
};

// 32-bit register at a 4-aligned byte offset.
struct RegisterSpec {
    std::string name;
    std::uint64_t offset = 0;
    std::vector<FieldSpec> fields;

    std::uint32_t reset_value() const;
    const FieldSpec* field(std::string_view name) const;
    // Bits covered by fields with any of the given accesses.
    std::uint32_t access_mask(std::initializer_list<Access> accesses) const;

    bool operator==(const RegisterSpec&) const = default;
};

struct MemorySpec {
    std::string name;
    std::uint64_t offset = 0;
    std::uint64_t size = 0; // bytes, multiple of 4

    bool operator==(const MemorySpec&) const = default;
};

struct AddressMap {
    std::uint64_t base = 0;
    std::string name;
    std::vector<RegisterSpec> registers;
    std::vector<MemorySpec> memories;

    const RegisterSpec* find_register(std::string_view name) const;
    const RegisterSpec* register_at(std::uint64_t offset) const;
    const MemorySpec* memory_containing(std::uint64_t offset) const;

    bool operator==(const AddressMap&) const = default;
};

// Access-policy write semantics: RW takes the written value, RO keeps the
// current one, WO takes the written value, W1C clears the 1-bits written.
std::uint32_t field_update(Access access, std::uint32_t current, std::uint32_t written);

} // namespace isptb::reg
