#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isptb::cfg {

// Minimal XML subset: declaration, comments, elements, attributes, character
// data with the five predefined entities. Namespace prefixes are stripped
// from element and attribute names. No CDATA, DOCTYPE or processing
// instructions beyond the leading declaration.
struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlNode> children;
    std::string text; // concatenated character data
    int line = 0;

    const std::string* attribute(std::string_view name) const;
    const XmlNode* child(std::string_view name) const;
    std::vector<const XmlNode*> children_named(std::string_view name) const;
};

struct XmlError {
    int line = 0;
    std::string message;
};

struct XmlResult {
    std::optional<XmlNode> root;
    std::optional<XmlError> error;

    bool ok() const { return root.has_value(); }
};

XmlResult parse_xml(std::string_view text);

// Escapes &, <, >, " and ' for attribute/text emission.
std::string xml_escape(std::string_view raw);

} // namespace isptb::cfg
