#pragma once

#include "isptb/reg/address_map.hpp"
#include "isptb/tlm/payload.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace isptb::reg {

// DUT-side register/memory storage driven by an AddressMap. Bus accesses
// apply the per-field access policies (WO fields read as 0, W1C clears,
// writes to RO bits are dropped); hw_* and the back-door peek/poke bypass
// them. Offsets are map-local (the map base is stripped by the caller).
class RegFile {
public:
    explicit RegFile(const AddressMap& map);

    const AddressMap& map() const { return map_; }

    tlm::Status bus_write(std::uint64_t offset, std::uint32_t value);
    std::pair<std::uint32_t, tlm::Status> bus_read(std::uint64_t offset) const;

    // Zero-time raw access to the backing storage, ignoring access policies.
    std::optional<std::uint32_t> peek(std::uint64_t offset) const;
    bool poke(std::uint64_t offset, std::uint32_t value);

    // Register access by map index, for DUT internals.
    std::uint32_t raw(std::size_t reg_index) const { return reg_values_[reg_index]; }
    void hw_write(std::size_t reg_index, std::uint32_t value) { reg_values_[reg_index] = value; }
    void hw_set_bits(std::size_t reg_index, std::uint32_t mask) { reg_values_[reg_index] |= mask; }
    void hw_clear_bits(std::size_t reg_index, std::uint32_t mask) {
        reg_values_[reg_index] &= ~mask;
    }

    std::uint32_t mem_word(std::size_t mem_index, std::size_t word) const;
    void hw_write_mem(std::size_t mem_index, std::size_t word, std::uint32_t value);

    // Applies every register's reset value and zeroes all memories.
    void reset();

private:
    std::optional<std::size_t> register_index_at(std::uint64_t offset) const;
    std::optional<std::pair<std::size_t, std::size_t>> memory_word_at(std::uint64_t offset) const;

    AddressMap map_;
    std::vector<std::uint32_t> reg_values_;
    std::vector<std::vector<std::uint32_t>> mem_words_;
};

} // namespace isptb::reg
