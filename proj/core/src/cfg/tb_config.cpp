#include "isptb/cfg/tb_config.hpp"

#include <sstream>

namespace isptb::cfg {

std::string_view to_string(DutKind k) {
    return k == DutKind::ReferenceWrapper ? "REFERENCE_WRAPPER" : "STAGED_PIPELINE";
}

std::string_view to_string(PathKind k) { return k == PathKind::Host ? "HOST" : "CPU"; }

namespace {

void add_error(std::vector<ValidationError>& errors, ErrorCode code, std::string detail) {
    errors.push_back(ValidationError{code, std::move(detail)});
}

std::optional<std::uint64_t> attr_number(const XmlNode& node, std::string_view name) {
    const auto* raw = node.attribute(name);
    if (!raw) return std::nullopt;
    return parse_number(*raw);
}

} // namespace

TbConfigResult parse_tb_config(std::string_view xml_text) {
    TbConfigResult result;
    auto& errors = result.errors;

    const XmlResult xml = parse_xml(xml_text);
    if (!xml.ok()) {
        std::ostringstream os;
        os << "line " << xml.error->line << ": " << xml.error->message;
        add_error(errors, ErrorCode::Malformed, os.str());
        return result;
    }
    const XmlNode& root = *xml.root;
    if (root.name != "testbench") {
        add_error(errors, ErrorCode::Malformed,
                  "root element must be <testbench>, got <" + root.name + ">");
        return result;
    }

    TbConfig cfg;

    if (const XmlNode* seed = root.child("seed")) {
        if (const auto n = parse_number(seed->text)) {
            cfg.seed = *n;
        } else {
            add_error(errors, ErrorCode::BadValue, "<seed>: '" + seed->text + "' is not a number");
        }
    } else {
        add_error(errors, ErrorCode::MissingAttr, "<testbench> is missing <seed>");
    }

    if (const XmlNode* frame = root.child("frame")) {
        const auto w = attr_number(*frame, "width");
        const auto h = attr_number(*frame, "height");
        const auto n = attr_number(*frame, "count");
        if (!w || !h || !n) {
            add_error(errors, ErrorCode::MissingAttr,
                      "<frame> needs numeric width, height and count attributes");
        } else {
            cfg.frame_width = static_cast<unsigned>(*w);
            cfg.frame_height = static_cast<unsigned>(*h);
            cfg.frame_count = static_cast<unsigned>(*n);
            if (cfg.frame_width < 3 || cfg.frame_height < 3) {
                add_error(errors, ErrorCode::BadValue,
                          "frame dimensions must be at least 3x3 (the convolution window "
                          "must fit), got " +
                              std::to_string(cfg.frame_width) + "x" +
                              std::to_string(cfg.frame_height));
            }
            if (cfg.frame_count < 1) {
                add_error(errors, ErrorCode::BadValue, "frame count must be at least 1");
            }
        }
    } else {
        add_error(errors, ErrorCode::MissingAttr, "<testbench> is missing <frame>");
    }

    if (const XmlNode* dut = root.child("dut")) {
        const auto* kind = dut->attribute("kind");
        if (!kind) {
            add_error(errors, ErrorCode::MissingAttr, "<dut> is missing 'kind'");
        } else if (*kind == "REFERENCE_WRAPPER") {
            cfg.dut_kind = DutKind::ReferenceWrapper;
        } else if (*kind == "STAGED_PIPELINE") {
            cfg.dut_kind = DutKind::StagedPipeline;
        } else {
            add_error(errors, ErrorCode::BadValue, "<dut>: unknown kind '" + *kind + "'");
        }
    }

    if (const XmlNode* path = root.child("path")) {
        const auto* kind = path->attribute("kind");
        if (!kind) {
            add_error(errors, ErrorCode::MissingAttr, "<path> is missing 'kind'");
        } else if (*kind == "HOST") {
            cfg.path_kind = PathKind::Host;
        } else if (*kind == "CPU") {
            cfg.path_kind = PathKind::Cpu;
        } else {
            add_error(errors, ErrorCode::BadValue, "<path>: unknown kind '" + *kind + "'");
        }
        if (const auto* program = path->attribute("program")) cfg.program_path = *program;
    }
    if (cfg.path_kind == PathKind::Cpu && cfg.program_path.empty()) {
        add_error(errors, ErrorCode::MissingAttr,
                  "path kind CPU requires a 'program' attribute on <path>");
    }

    if (const XmlNode* stim = root.child("stimulus")) {
        const auto* kind = stim->attribute("kind");
        if (!kind) {
            add_error(errors, ErrorCode::MissingAttr, "<stimulus> is missing 'kind'");
        } else if (*kind == "RANDOM") {
            cfg.stimulus = StimulusKind::Random;
        } else if (*kind == "FILE") {
            cfg.stimulus = StimulusKind::File;
            if (const auto* file = stim->attribute("file")) {
                cfg.stimulus_file = *file;
            } else {
                add_error(errors, ErrorCode::MissingAttr, "stimulus kind FILE needs 'file'");
            }
        } else {
            add_error(errors, ErrorCode::BadValue, "<stimulus>: unknown kind '" + *kind + "'");
        }
    }

    if (const XmlNode* drain = root.child("drain")) {
        if (const auto n = parse_number(drain->text)) {
            cfg.drain_time = *n;
        } else {
            add_error(errors, ErrorCode::BadValue, "<drain>: bad value '" + drain->text + "'");
        }
    }
    if (const XmlNode* maxtime = root.child("maxtime")) {
        if (const auto n = parse_number(maxtime->text)) {
            cfg.max_time = *n;
        } else {
            add_error(errors, ErrorCode::BadValue, "<maxtime>: bad value '" + maxtime->text + "'");
        }
    }
    if (const XmlNode* report = root.child("report")) {
        if (!report->text.empty()) cfg.report_path = report->text;
    }
    if (const XmlNode* params = root.child("params")) {
        if (const auto* file = params->attribute("file")) {
            cfg.params_path = *file;
        } else {
            add_error(errors, ErrorCode::MissingAttr, "<params> is missing 'file'");
        }
    }
    if (const XmlNode* regmap = root.child("regmap")) {
        if (const auto* file = regmap->attribute("file")) {
            cfg.regmap_path = *file;
        } else {
            add_error(errors, ErrorCode::MissingAttr, "<regmap> is missing 'file'");
        }
    }

    if (const XmlNode* fault = root.child("fault")) {
        isp::FaultSpec spec;
        const auto* stage = fault->attribute("stage");
        const auto mask = attr_number(*fault, "mask");
        const auto* pixel = fault->attribute("pixel");
        if (!stage || !mask || !pixel) {
            add_error(errors, ErrorCode::MissingAttr,
                      "<fault> needs stage, mask and pixel attributes");
        } else {
            if (const auto s = isp::stage_from_string(*stage)) {
                spec.stage = *s;
            } else {
                add_error(errors, ErrorCode::BadValue, "<fault>: unknown stage '" + *stage + "'");
            }
            if (*mask == 0 || *mask > 0xFF) {
                add_error(errors, ErrorCode::BadValue,
                          "<fault>: mask must be a nonzero byte value");
            }
            spec.xor_mask = static_cast<std::uint8_t>(*mask);
            if (*pixel == "ALL") {
                spec.pixel_index = std::nullopt;
            } else if (const auto idx = parse_number(*pixel)) {
                spec.pixel_index = static_cast<std::uint32_t>(*idx);
            } else {
                add_error(errors, ErrorCode::BadValue, "<fault>: bad pixel '" + *pixel + "'");
            }
            if (errors.empty()) cfg.fault = spec;
        }
    }

    if (errors.empty()) result.config = std::move(cfg);
    return result;
}

ParamsResult parse_params(std::string_view xml_text) {
    ParamsResult result;
    const XmlResult xml = parse_xml(xml_text);
    if (!xml.ok()) {
        std::ostringstream os;
        os << "line " << xml.error->line << ": " << xml.error->message;
        add_error(result.errors, ErrorCode::Malformed, os.str());
        return result;
    }
    const XmlNode& root = *xml.root;
    if (root.name != "params") {
        add_error(result.errors, ErrorCode::Malformed,
                  "root element must be <params>, got <" + root.name + ">");
        return result;
    }
    for (const auto& child : root.children) {
        if (child.name != "write") continue;
        const auto offset = attr_number(child, "offset");
        const auto value = attr_number(child, "value");
        if (!offset || !value) {
            std::ostringstream os;
            os << "<write> at line " << child.line << " needs numeric offset and value";
            add_error(result.errors, ErrorCode::MissingAttr, os.str());
            continue;
        }
        result.writes.push_back(
            ParamWrite{*offset, static_cast<std::uint32_t>(*value)});
    }
    return result;
}

} // namespace isptb::cfg
