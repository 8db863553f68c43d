#include "isptb/reg/address_map.hpp"

namespace isptb::reg {

std::optional<Access> access_from_string(std::string_view s) {
    if (s == "RO") return Access::RO;
    if (s == "RW") return Access::RW;
    if (s == "WO") return Access::WO;
    if (s == "W1C") return Access::W1C;
    return std::nullopt;
}

std::string_view to_string(Access a) {
    switch (a) {
    case Access::RO: return "RO";
    case Access::RW: return "RW";
    case Access::WO: return "WO";
    case Access::W1C: return "W1C";
    }
    return "?";
}

std::uint32_t RegisterSpec::reset_value() const {
    std::uint32_t v = 0;
    for (const auto& f : fields) v = f.insert(v, f.reset);
    return v;
}

const FieldSpec* RegisterSpec::field(std::string_view field_name) const {
    for (const auto& f : fields) {
        if (f.name == field_name) return &f;
    }
    return nullptr;
}

std::uint32_t RegisterSpec::access_mask(std::initializer_list<Access> accesses) const {
    std::uint32_t mask = 0;
    for (const auto& f : fields) {
        for (Access a : accesses) {
            if (f.access == a) mask |= f.mask();
        }
    }
    return mask;
}

const RegisterSpec* AddressMap::find_register(std::string_view reg_name) const {
    for (const auto& r : registers) {
        if (r.name == reg_name) return &r;
    }
    return nullptr;
}

const RegisterSpec* AddressMap::register_at(std::uint64_t offset) const {
    for (const auto& r : registers) {
        if (r.offset == offset) return &r;
    }
    return nullptr;
}

const MemorySpec* AddressMap::memory_containing(std::uint64_t offset) const {
    for (const auto& m : memories) {
        if (offset >= m.offset && offset < m.offset + m.size) return &m;
    }
    return nullptr;
}

std::uint32_t field_update(Access access, std::uint32_t current, std::uint32_t written) {
    switch (access) {
    case Access::RW: return written;
    case Access::RO: return current;
    case Access::WO: return written;
    case Access::W1C: return current & ~written;
    }
    return current;
}

} // namespace isptb::reg
