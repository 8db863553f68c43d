#pragma once

#include "isptb/reg/address_map.hpp"
#include "isptb/sim/task.hpp"
#include "isptb/tlm/payload.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::reg {

enum class RegStatus { Ok, AddressError, GenericError, NoBackdoor, UnknownRegister };

std::string_view to_string(RegStatus s);

struct ReadResult {
    std::uint32_t value = 0;
    RegStatus status = RegStatus::Ok;
};

// Bus-side access used for front-door operations. Front-door access consumes
// simulated time, so both calls are awaitable tasks.
class FrontdoorPort {
public:
    virtual ~FrontdoorPort() = default;
    virtual sim::Task<tlm::Status> bus_write(std::uint64_t address, std::uint32_t value) = 0;
    virtual sim::Task<std::pair<std::uint32_t, tlm::Status>> bus_read(std::uint64_t address) = 0;
};

// Zero-time direct access into the DUT's actual storage, registered by the
// DUT. Offsets are map-local.
struct BackdoorHook {
    std::function<std::optional<std::uint32_t>(std::uint64_t offset)> peek;
    std::function<bool(std::uint64_t offset, std::uint32_t value)> poke;
};

struct FieldMismatch {
    std::string field;
    std::uint32_t expected = 0;
    std::uint32_t actual = 0;
};

struct MirrorCheckResult {
    bool pass = false;
    RegStatus status = RegStatus::Ok;
    std::vector<FieldMismatch> mismatches;
};

// UVM_REG-style abstraction layer: keeps a mirror of every register's
// believed value, updated on front-door traffic per the field access
// policies. Back-door peek/poke bypass the bus and the policies and never
// touch mirrors.
class RegModel {
public:
    RegModel(AddressMap map, FrontdoorPort* frontdoor = nullptr);

    const AddressMap& map() const { return map_; }

    void set_frontdoor(FrontdoorPort* port) { frontdoor_ = port; }
    void set_backdoor(BackdoorHook hook) { backdoor_ = std::move(hook); }

    std::uint32_t mirror(std::string_view reg_name) const;

    // One bus WRITE at base+offset; on OK the mirror is updated field by
    // field via field_update. On error the mirror is untouched.
    sim::Task<RegStatus> write_frontdoor(std::string_view reg_name, std::uint32_t value);

    // One bus READ; on OK the mirror's RO/RW field bits follow the read
    // value (WO fields read back as 0 from the DUT and keep their mirror).
    sim::Task<ReadResult> read_frontdoor(std::string_view reg_name);

    ReadResult peek(std::string_view reg_name) const;
    RegStatus poke(std::string_view reg_name, std::uint32_t value);

    // Front-door read compared against the mirror over RO+RW field bits.
    sim::Task<MirrorCheckResult> mirror_check(std::string_view reg_name);

private:
    const RegisterSpec* lookup(std::string_view reg_name, std::size_t* index = nullptr) const;

    AddressMap map_;
    FrontdoorPort* frontdoor_;
    BackdoorHook backdoor_;
    std::vector<std::uint32_t> mirrors_;
};

} // namespace isptb::reg
