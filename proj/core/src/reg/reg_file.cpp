#include "isptb/reg/reg_file.hpp"

namespace isptb::reg {

RegFile::RegFile(const AddressMap& map) : map_(map) {
    reg_values_.resize(map_.registers.size(), 0);
    mem_words_.reserve(map_.memories.size());
    for (const auto& m : map_.memories) {
        mem_words_.emplace_back(m.size / 4, 0);
    }
    reset();
}

void RegFile::reset() {
    for (std::size_t i = 0; i < map_.registers.size(); ++i) {
        reg_values_[i] = map_.registers[i].reset_value();
    }
    for (auto& words : mem_words_) {
        std::fill(words.begin(), words.end(), 0);
    }
}

std::optional<std::size_t> RegFile::register_index_at(std::uint64_t offset) const {
    for (std::size_t i = 0; i < map_.registers.size(); ++i) {
        if (map_.registers[i].offset == offset) return i;
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>>
RegFile::memory_word_at(std::uint64_t offset) const {
    for (std::size_t i = 0; i < map_.memories.size(); ++i) {
        const auto& m = map_.memories[i];
        if (offset >= m.offset && offset < m.offset + m.size) {
            return std::make_pair(i, static_cast<std::size_t>((offset - m.offset) / 4));
        }
    }
    return std::nullopt;
}

tlm::Status RegFile::bus_write(std::uint64_t offset, std::uint32_t value) {
    if (offset % 4 != 0) return tlm::Status::AddressError;
    if (auto reg = register_index_at(offset)) {
        const RegisterSpec& spec = map_.registers[*reg];
        std::uint32_t current = reg_values_[*reg];
        std::uint32_t next = current;
        for (const auto& f : spec.fields) {
            const std::uint32_t updated = field_update(f.access, f.extract(current), f.extract(value));
            next = f.insert(next, updated);
        }
        reg_values_[*reg] = next;
        return tlm::Status::Ok;
    }
    if (auto mem = memory_word_at(offset)) {
        mem_words_[mem->first][mem->second] = value;
        return tlm::Status::Ok;
    }
    return tlm::Status::AddressError;
}

std::pair<std::uint32_t, tlm::Status> RegFile::bus_read(std::uint64_t offset) const {
    if (offset % 4 != 0) return {0, tlm::Status::AddressError};
    if (auto reg = register_index_at(offset)) {
        const RegisterSpec& spec = map_.registers[*reg];
        // WO fields read back as 0.
        const std::uint32_t wo = spec.access_mask({Access::WO});
        return {reg_values_[*reg] & ~wo, tlm::Status::Ok};
    }
    if (auto mem = memory_word_at(offset)) {
        return {mem_words_[mem->first][mem->second], tlm::Status::Ok};
    }
    return {0, tlm::Status::AddressError};
}

std::optional<std::uint32_t> RegFile::peek(std::uint64_t offset) const {
    if (offset % 4 != 0) return std::nullopt;
    if (auto reg = register_index_at(offset)) return reg_values_[*reg];
    if (auto mem = memory_word_at(offset)) return mem_words_[mem->first][mem->second];
    return std::nullopt;
}

bool RegFile::poke(std::uint64_t offset, std::uint32_t value) {
    if (offset % 4 != 0) return false;
    if (auto reg = register_index_at(offset)) {
        reg_values_[*reg] = value;
        return true;
    }
    if (auto mem = memory_word_at(offset)) {
        mem_words_[mem->first][mem->second] = value;
        return true;
    }
    return false;
}

std::uint32_t RegFile::mem_word(std::size_t mem_index, std::size_t word) const {
    return mem_words_[mem_index][word];
}

void RegFile::hw_write_mem(std::size_t mem_index, std::size_t word, std::uint32_t value) {
    mem_words_[mem_index][word] = value;
}

} // namespace isptb::reg
