#pragma once

#include "isptb/cfg/regmap_xml.hpp"
#include "isptb/isp/fault.hpp"
#include "isptb/sim/kernel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::cfg {

enum class DutKind { ReferenceWrapper, StagedPipeline };
enum class PathKind { Host, Cpu };
enum class StimulusKind { Random, File };

std::string_view to_string(DutKind k);
std::string_view to_string(PathKind k);

// Testbench configuration, read from the <testbench> XML document. Relative
// file references are resolved against the config file's directory by the
// environment builder.
struct TbConfig {
    std::uint64_t seed = 0;
    unsigned frame_width = 0;
    unsigned frame_height = 0;
    unsigned frame_count = 0;
    DutKind dut_kind = DutKind::ReferenceWrapper;
    PathKind path_kind = PathKind::Host;
    StimulusKind stimulus = StimulusKind::Random;
    std::string stimulus_file;
    std::string program_path; // required iff path_kind == Cpu
    sim::SimTime drain_time = 1000;
    sim::SimTime max_time = 10'000'000;
    std::string report_path = "report.json";

    // Optional extensions carried by the same document: a host-path register
    // programming list, a stand-in fault fixture, and a register-map override.
    std::string params_path;
    std::optional<isp::FaultSpec> fault;
    std::string regmap_path;
};

struct TbConfigResult {
    std::optional<TbConfig> config; // present iff errors is empty
    std::vector<ValidationError> errors;

    bool ok() const { return errors.empty(); }
};

TbConfigResult parse_tb_config(std::string_view xml_text);

// Host-path programming list: ordered front-door register writes.
struct ParamWrite {
    std::uint64_t offset = 0;
    std::uint32_t value = 0;
};

struct ParamsResult {
    std::vector<ParamWrite> writes;
    std::vector<ValidationError> errors;

    bool ok() const { return errors.empty(); }
};

// Parses <params> documents: a flat list of <write offset= value=/> elements.
ParamsResult parse_params(std::string_view xml_text);

} // namespace isptb::cfg
