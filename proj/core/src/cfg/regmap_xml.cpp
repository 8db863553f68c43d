#include "isptb/cfg/regmap_xml.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace isptb::cfg {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Overlap: return "OVERLAP";
    case ErrorCode::FieldOverflow: return "FIELD_OVERFLOW";
    case ErrorCode::DupName: return "DUP_NAME";
    case ErrorCode::BadAlign: return "BAD_ALIGN";
    case ErrorCode::Malformed: return "MALFORMED";
    case ErrorCode::MissingAttr: return "MISSING_ATTR";
    case ErrorCode::BadValue: return "BAD_VALUE";
    }
    return "?";
}

std::optional<std::uint64_t> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::uint64_t value = 0;
    if (text.size() > 2 && (text.substr(0, 2) == "0x" || text.substr(0, 2) == "0X")) {
        for (const char c : text.substr(2)) {
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
            else if (c == '_') continue;
            else return std::nullopt;
            value = value * 16 + static_cast<std::uint64_t>(digit);
        }
        return value;
    }
    for (const char c : text) {
        if (c == '_') continue;
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

namespace {

struct Collector {
    std::vector<ValidationError>& errors;

    void add(ErrorCode code, std::string detail) {
        errors.push_back(ValidationError{code, std::move(detail)});
    }

    // Fetches a required attribute, trying each given spelling in order.
    std::optional<std::string> required(const XmlNode& node,
                                        std::initializer_list<std::string_view> names,
                                        std::string_view what) {
        for (const auto name : names) {
            if (const auto* v = node.attribute(name)) return *v;
        }
        std::ostringstream os;
        os << "element <" << node.name << "> at line " << node.line << " is missing " << what;
        add(ErrorCode::MissingAttr, os.str());
        return std::nullopt;
    }

    std::optional<std::uint64_t> required_number(const XmlNode& node,
                                                 std::initializer_list<std::string_view> names,
                                                 std::string_view what) {
        const auto raw = required(node, names, what);
        if (!raw) return std::nullopt;
        const auto n = parse_number(*raw);
        if (!n) {
            std::ostringstream os;
            os << "element <" << node.name << "> at line " << node.line << ": " << what << " '"
               << *raw << "' is not a number";
            add(ErrorCode::BadValue, os.str());
        }
        return n;
    }
};

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

void parse_field(const XmlNode& node, reg::RegisterSpec& reg, Collector& c) {
    reg::FieldSpec field;
    const auto name = c.required(node, {"name"}, "attribute 'name'");
    const auto lsb = c.required_number(node, {"bitOffset", "lsb"}, "attribute 'bitOffset'");
    const auto width = c.required_number(node, {"bitWidth", "width"}, "attribute 'bitWidth'");
    if (!name || !lsb || !width) return;
    field.name = *name;
    field.lsb = static_cast<unsigned>(*lsb);
    field.width = static_cast<unsigned>(*width);

    field.access = reg::Access::RW;
    if (const auto* acc = node.attribute("access")) {
        if (const auto parsed = reg::access_from_string(*acc)) {
            field.access = *parsed;
        } else {
            c.add(ErrorCode::BadValue, "field '" + reg.name + "." + field.name +
                                           "': unknown access policy '" + *acc + "'");
        }
    }
    if (const auto* reset = node.attribute("reset")) {
        if (const auto n = parse_number(*reset)) {
            field.reset = static_cast<std::uint32_t>(*n);
        } else {
            c.add(ErrorCode::BadValue,
                  "field '" + reg.name + "." + field.name + "': bad reset '" + *reset + "'");
        }
    }
    reg.fields.push_back(std::move(field));
}

void parse_register(const XmlNode& node, reg::AddressMap& map, Collector& c) {
    reg::RegisterSpec spec;
    const auto name = c.required(node, {"name"}, "attribute 'name'");
    const auto offset =
        c.required_number(node, {"addressOffset", "offset"}, "attribute 'addressOffset'");
    if (!name || !offset) return;
    spec.name = *name;
    spec.offset = *offset;
    if (const auto* size = node.attribute("size")) {
        const auto n = parse_number(*size);
        if (!n || *n != 32) {
            c.add(ErrorCode::BadValue,
                  "register '" + spec.name + "': only 32-bit registers are supported");
        }
    }
    for (const auto& child : node.children) {
        if (child.name == "field") parse_field(child, spec, c);
    }
    map.registers.push_back(std::move(spec));
}

void parse_memory(const XmlNode& node, reg::AddressMap& map, Collector& c) {
    reg::MemorySpec spec;
    const auto name = c.required(node, {"name"}, "attribute 'name'");
    const auto offset =
        c.required_number(node, {"addressOffset", "offset"}, "attribute 'addressOffset'");
    const auto size = c.required_number(node, {"size"}, "attribute 'size'");
    if (!name || !offset || !size) return;
    spec.name = *name;
    spec.offset = *offset;
    spec.size = *size;
    map.memories.push_back(std::move(spec));
}

} // namespace

RegMapResult parse_register_map(std::string_view xml_text) {
    RegMapResult result;
    Collector c{result.errors};

    const XmlResult xml = parse_xml(xml_text);
    if (!xml.ok()) {
        std::ostringstream os;
        os << "line " << xml.error->line << ": " << xml.error->message;
        c.add(ErrorCode::Malformed, os.str());
        return result;
    }

    const XmlNode& root = *xml.root;
    if (root.name != "memoryMap") {
        c.add(ErrorCode::Malformed, "root element must be <memoryMap>, got <" + root.name + ">");
        return result;
    }

    reg::AddressMap map;
    if (const auto* name = root.attribute("name")) map.name = *name;

    const auto blocks = root.children_named("addressBlock");
    if (blocks.empty()) {
        c.add(ErrorCode::Malformed, "<memoryMap> has no <addressBlock>");
        return result;
    }
    for (const XmlNode* block : blocks) {
        if (const auto* base = block->attribute("baseAddress")) {
            if (const auto n = parse_number(*base)) {
                map.base = *n;
            } else {
                c.add(ErrorCode::BadValue, "bad baseAddress '" + *base + "'");
            }
        }
        for (const auto& child : block->children) {
            if (child.name == "register") parse_register(child, map, c);
            else if (child.name == "memory") parse_memory(child, map, c);
        }
    }

    auto semantic = validate_map(map);
    result.errors.insert(result.errors.end(), semantic.begin(), semantic.end());
    if (result.errors.empty()) result.map = std::move(map);
    return result;
}

std::vector<ValidationError> validate_map(const reg::AddressMap& map) {
    std::vector<ValidationError> errors;
    Collector c{errors};

    struct Range {
        std::uint64_t begin, end; // [begin, end)
        std::string name;
    };
    std::vector<Range> ranges;
    std::set<std::string> names;

    auto check_name = [&](const std::string& name) {
        if (!names.insert(name).second) {
            c.add(ErrorCode::DupName, "duplicate name '" + name + "'");
        }
    };

    for (const auto& r : map.registers) {
        check_name(r.name);
        if (r.offset % 4 != 0) {
            c.add(ErrorCode::BadAlign,
                  "register '" + r.name + "' at offset " + hex(r.offset) + " is not 4-aligned");
        }
        ranges.push_back({r.offset, r.offset + 4, r.name});

        std::uint32_t used = 0;
        for (const auto& f : r.fields) {
            if (f.width < 1 || f.width > 32 || f.lsb > 31) {
                c.add(ErrorCode::BadValue, "field '" + r.name + "." + f.name +
                                               "': lsb/width out of range");
                continue;
            }
            if (f.lsb + f.width > 32) {
                c.add(ErrorCode::FieldOverflow,
                      "field '" + r.name + "." + f.name + "': lsb " + std::to_string(f.lsb) +
                          " + width " + std::to_string(f.width) + " exceeds 32");
                continue;
            }
            if (used & f.mask()) {
                c.add(ErrorCode::Overlap,
                      "field '" + r.name + "." + f.name + "' overlaps another field");
            }
            used |= f.mask();
            if (f.width < 32 && f.reset >= (1u << f.width)) {
                c.add(ErrorCode::BadValue, "field '" + r.name + "." + f.name +
                                               "': reset does not fit in " +
                                               std::to_string(f.width) + " bits");
            }
        }
    }

    for (const auto& m : map.memories) {
        check_name(m.name);
        if (m.offset % 4 != 0 || m.size % 4 != 0) {
            c.add(ErrorCode::BadAlign, "memory '" + m.name + "' offset/size not 4-aligned");
        }
        if (m.size == 0) {
            c.add(ErrorCode::BadValue, "memory '" + m.name + "' has zero size");
        }
        ranges.push_back({m.offset, m.offset + m.size, m.name});
    }

    std::sort(ranges.begin(), ranges.end(),
              [](const Range& a, const Range& b) { return a.begin < b.begin; });
    for (std::size_t i = 1; i < ranges.size(); ++i) {
        if (ranges[i].begin < ranges[i - 1].end) {
            c.add(ErrorCode::Overlap, "'" + ranges[i - 1].name + "' [" + hex(ranges[i - 1].begin) +
                                          "," + hex(ranges[i - 1].end) + ") overlaps '" +
                                          ranges[i].name + "' at " + hex(ranges[i].begin));
        }
    }

    return errors;
}

std::string write_register_map(const reg::AddressMap& map) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\"?>\n";
    os << "<memoryMap name=\"" << xml_escape(map.name) << "\">\n";
    os << "  <addressBlock name=\"" << xml_escape(map.name.empty() ? "block" : map.name)
       << "\" baseAddress=\"" << hex(map.base) << "\">\n";
    for (const auto& r : map.registers) {
        os << "    <register name=\"" << xml_escape(r.name) << "\" addressOffset=\""
           << hex(r.offset) << "\" size=\"32\">\n";
        for (const auto& f : r.fields) {
            os << "      <field name=\"" << xml_escape(f.name) << "\" bitOffset=\"" << f.lsb
               << "\" bitWidth=\"" << f.width << "\" access=\"" << reg::to_string(f.access)
               << "\" reset=\"" << hex(f.reset) << "\"/>\n";
        }
        os << "    </register>\n";
    }
    for (const auto& m : map.memories) {
        os << "    <memory name=\"" << xml_escape(m.name) << "\" addressOffset=\"" << hex(m.offset)
           << "\" size=\"" << hex(m.size) << "\"/>\n";
    }
    os << "  </addressBlock>\n";
    os << "</memoryMap>\n";
    return os.str();
}

} // namespace isptb::cfg
