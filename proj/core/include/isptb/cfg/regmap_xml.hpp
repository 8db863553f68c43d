#pragma once

#include "isptb/cfg/xml.hpp"
#include "isptb/reg/address_map.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::cfg {

enum class ErrorCode {
    Overlap,
    FieldOverflow,
    DupName,
    BadAlign,
    Malformed,
    MissingAttr,
    BadValue,
};

std::string_view to_string(ErrorCode code);

struct ValidationError {
    ErrorCode code;
    std::string detail; // names/offsets involved, enough to locate the element

    bool operator==(const ValidationError&) const = default;
};

struct RegMapResult {
    std::optional<reg::AddressMap> map; // present iff errors is empty
    std::vector<ValidationError> errors;

    bool ok() const { return errors.empty(); }
};

// Parses the simplified IP-XACT-style register map:
// memoryMap -> addressBlock -> register -> field, plus memory elements.
// All structural and semantic errors are collected in a single pass.
RegMapResult parse_register_map(std::string_view xml_text);

// Semantic checks on an already-structured map; an empty list means the map
// satisfies every reg-model invariant.
std::vector<ValidationError> validate_map(const reg::AddressMap& map);

// Serializes back to the same schema parse_register_map accepts.
std::string write_register_map(const reg::AddressMap& map);

// Number parsing shared by the config readers: 0x-prefixed hex or decimal.
std::optional<std::uint64_t> parse_number(std::string_view text);

} // namespace isptb::cfg
