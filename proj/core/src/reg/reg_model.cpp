#include "isptb/reg/reg_model.hpp"

#include "isptb/fatal.hpp"

namespace isptb::reg {

std::string_view to_string(RegStatus s) {
    switch (s) {
    case RegStatus::Ok: return "OK";
    case RegStatus::AddressError: return "ADDRESS_ERROR";
    case RegStatus::GenericError: return "GENERIC_ERROR";
    case RegStatus::NoBackdoor: return "NO_BACKDOOR";
    case RegStatus::UnknownRegister: return "UNKNOWN_REGISTER";
    }
    return "?";
}

namespace {

RegStatus from_tlm(tlm::Status s) {
    switch (s) {
    case tlm::Status::Ok: return RegStatus::Ok;
    case tlm::Status::AddressError: return RegStatus::AddressError;
    default: return RegStatus::GenericError;
    }
}

} // namespace

RegModel::RegModel(AddressMap map, FrontdoorPort* frontdoor)
    : map_(std::move(map)), frontdoor_(frontdoor) {
    mirrors_.reserve(map_.registers.size());
    for (const auto& r : map_.registers) mirrors_.push_back(r.reset_value());
}

const RegisterSpec* RegModel::lookup(std::string_view reg_name, std::size_t* index) const {
    for (std::size_t i = 0; i < map_.registers.size(); ++i) {
        if (map_.registers[i].name == reg_name) {
            if (index) *index = i;
            return &map_.registers[i];
        }
    }
    return nullptr;
}

std::uint32_t RegModel::mirror(std::string_view reg_name) const {
    std::size_t idx = 0;
    if (!lookup(reg_name, &idx)) {
        throw FatalError("reg_model: unknown register '" + std::string(reg_name) + "'");
    }
    return mirrors_[idx];
}

sim::Task<RegStatus> RegModel::write_frontdoor(std::string_view reg_name, std::uint32_t value) {
    std::size_t idx = 0;
    const RegisterSpec* spec = lookup(reg_name, &idx);
    if (!spec) co_return RegStatus::UnknownRegister;
    if (!frontdoor_) co_return RegStatus::GenericError;

    const tlm::Status st = co_await frontdoor_->bus_write(map_.base + spec->offset, value);
    if (st == tlm::Status::Ok) {
        std::uint32_t next = mirrors_[idx];
        for (const auto& f : spec->fields) {
            next = f.insert(next, field_update(f.access, f.extract(mirrors_[idx]), f.extract(value)));
        }
        mirrors_[idx] = next;
    }
    co_return from_tlm(st);
}

sim::Task<ReadResult> RegModel::read_frontdoor(std::string_view reg_name) {
    std::size_t idx = 0;
    const RegisterSpec* spec = lookup(reg_name, &idx);
    if (!spec) co_return ReadResult{0, RegStatus::UnknownRegister};
    if (!frontdoor_) co_return ReadResult{0, RegStatus::GenericError};

    const auto [value, st] = co_await frontdoor_->bus_read(map_.base + spec->offset);
    if (st == tlm::Status::Ok) {
        const std::uint32_t tracked = spec->access_mask({Access::RO, Access::RW});
        mirrors_[idx] = (mirrors_[idx] & ~tracked) | (value & tracked);
    }
    co_return ReadResult{value, from_tlm(st)};
}

ReadResult RegModel::peek(std::string_view reg_name) const {
    const RegisterSpec* spec = lookup(reg_name);
    if (!spec) return {0, RegStatus::UnknownRegister};
    if (!backdoor_.peek) return {0, RegStatus::NoBackdoor};
    const auto v = backdoor_.peek(spec->offset);
    if (!v) return {0, RegStatus::AddressError};
    return {*v, RegStatus::Ok};
}

RegStatus RegModel::poke(std::string_view reg_name, std::uint32_t value) {
    const RegisterSpec* spec = lookup(reg_name);
    if (!spec) return RegStatus::UnknownRegister;
    if (!backdoor_.poke) return RegStatus::NoBackdoor;
    return backdoor_.poke(spec->offset, value) ? RegStatus::Ok : RegStatus::AddressError;
}

sim::Task<MirrorCheckResult> RegModel::mirror_check(std::string_view reg_name) {
    MirrorCheckResult result;
    std::size_t idx = 0;
    const RegisterSpec* spec = lookup(reg_name, &idx);
    if (!spec) {
        result.status = RegStatus::UnknownRegister;
        co_return result;
    }
    const std::uint32_t expected = mirrors_[idx];

    const ReadResult rd = co_await read_frontdoor(reg_name);
    result.status = rd.status;
    if (rd.status != RegStatus::Ok) co_return result;

    // Compared over RO+RW field bits only; WO reads as 0 and W1C is
    // hardware-volatile, so neither is meaningful to check.
    for (const auto& f : spec->fields) {
        if (f.access == Access::WO || f.access == Access::W1C) continue;
        if (f.extract(expected) != f.extract(rd.value)) {
            result.mismatches.push_back(
                FieldMismatch{f.name, f.extract(expected), f.extract(rd.value)});
        }
    }
    result.pass = result.mismatches.empty();
    co_return result;
}

} // namespace isptb::reg
