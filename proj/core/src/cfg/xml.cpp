#include "isptb/cfg/xml.hpp"

#include <cctype>

namespace isptb::cfg {

const std::string* XmlNode::attribute(std::string_view attr_name) const {
    for (const auto& [k, v] : attributes) {
        if (k == attr_name) return &v;
    }
    return nullptr;
}

const XmlNode* XmlNode::child(std::string_view child_name) const {
    for (const auto& c : children) {
        if (c.name == child_name) return &c;
    }
    return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(std::string_view child_name) const {
    std::vector<const XmlNode*> out;
    for (const auto& c : children) {
        if (c.name == child_name) out.push_back(&c);
    }
    return out;
}

namespace {

struct Scanner {
    explicit Scanner(std::string_view t) : text(t) {}

    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    std::optional<XmlError> error;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char peek_at(std::size_t ahead) const {
        return pos + ahead < text.size() ? text[pos + ahead] : '\0';
    }

    char advance() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    bool consume(std::string_view expect) {
        if (text.substr(pos, expect.size()) != expect) return false;
        for (std::size_t i = 0; i < expect.size(); ++i) advance();
        return true;
    }

    void fail(std::string message) {
        if (!error) error = XmlError{line, std::move(message)};
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool skip_comment() {
        if (!consume("<!--")) return false;
        while (!eof()) {
            if (consume("-->")) return true;
            advance();
        }
        fail("unterminated comment");
        return true;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
               c == ':';
    }

    std::string scan_name() {
        std::string name;
        while (!eof() && name_char(peek())) name.push_back(advance());
        // Namespace prefixes are ignored.
        if (auto colon = name.rfind(':'); colon != std::string::npos) {
            name.erase(0, colon + 1);
        }
        return name;
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            const auto rest = raw.substr(i);
            if (rest.rfind("&lt;", 0) == 0) {
                out.push_back('<');
                i += 3;
            } else if (rest.rfind("&gt;", 0) == 0) {
                out.push_back('>');
                i += 3;
            } else if (rest.rfind("&amp;", 0) == 0) {
                out.push_back('&');
                i += 4;
            } else if (rest.rfind("&quot;", 0) == 0) {
                out.push_back('"');
                i += 5;
            } else if (rest.rfind("&apos;", 0) == 0) {
                out.push_back('\'');
                i += 5;
            } else {
                fail("unknown entity reference");
                return out;
            }
        }
        return out;
    }

    bool scan_attributes(XmlNode& node) {
        for (;;) {
            skip_ws();
            if (eof()) {
                fail("unexpected end of document in tag");
                return false;
            }
            if (peek() == '>' || peek() == '/' || peek() == '?') return true;
            const std::string name = scan_name();
            if (name.empty()) {
                fail("expected attribute name");
                return false;
            }
            skip_ws();
            if (eof() || peek() != '=') {
                fail("expected '=' after attribute name");
                return false;
            }
            advance();
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) {
                fail("expected quoted attribute value");
                return false;
            }
            const char quote = advance();
            std::string value;
            while (!eof() && peek() != quote) {
                if (peek() == '<') {
                    fail("'<' in attribute value");
                    return false;
                }
                value.push_back(advance());
            }
            if (eof()) {
                fail("unterminated attribute value");
                return false;
            }
            advance(); // closing quote
            node.attributes.emplace_back(name, decode_entities(value));
            if (error) return false;
        }
    }

    // Called just after '<' of an opening tag was consumed.
    std::optional<XmlNode> scan_element() {
        XmlNode node;
        node.line = line;
        node.name = scan_name();
        if (node.name.empty()) {
            fail("expected element name");
            return std::nullopt;
        }
        if (!scan_attributes(node)) return std::nullopt;
        if (peek() == '/') {
            advance();
            if (eof() || peek() != '>') {
                fail("malformed empty-element tag");
                return std::nullopt;
            }
            advance();
            return node;
        }
        if (peek() != '>') {
            fail("malformed start tag");
            return std::nullopt;
        }
        advance();

        // Content: children and character data until the matching end tag.
        std::string raw_text;
        for (;;) {
            if (eof()) {
                fail("missing end tag for <" + node.name + ">");
                return std::nullopt;
            }
            if (peek() == '<') {
                if (skip_comment()) {
                    if (error) return std::nullopt;
                    continue;
                }
                if (peek_at(1) == '/') {
                    advance();
                    advance();
                    const std::string closing = scan_name();
                    if (closing != node.name) {
                        fail("mismatched end tag </" + closing + "> for <" + node.name + ">");
                        return std::nullopt;
                    }
                    skip_ws();
                    if (eof() || peek() != '>') {
                        fail("malformed end tag");
                        return std::nullopt;
                    }
                    advance();
                    node.text = decode_entities(raw_text);
                    return error ? std::nullopt : std::optional<XmlNode>(std::move(node));
                }
                advance(); // '<'
                auto child = scan_element();
                if (!child) return std::nullopt;
                node.children.push_back(std::move(*child));
            } else {
                raw_text.push_back(advance());
            }
        }
    }
};

} // namespace

XmlResult parse_xml(std::string_view text) {
    Scanner s(text);
    s.skip_ws();
    // Optional declaration.
    if (s.consume("<?xml")) {
        while (!s.eof() && !s.consume("?>")) s.advance();
        if (s.eof() && s.text.substr(s.text.size() - 2) != "?>") {
            return {std::nullopt, XmlError{s.line, "unterminated XML declaration"}};
        }
    }
    for (;;) {
        s.skip_ws();
        if (!s.skip_comment()) break;
        if (s.error) return {std::nullopt, s.error};
    }
    if (s.eof() || s.peek() != '<') {
        return {std::nullopt, XmlError{s.line, "expected root element"}};
    }
    s.advance();
    auto root = s.scan_element();
    if (!root) return {std::nullopt, s.error ? s.error : XmlError{s.line, "malformed document"}};
    for (;;) {
        s.skip_ws();
        if (!s.skip_comment()) break;
        if (s.error) return {std::nullopt, s.error};
    }
    if (!s.eof()) {
        return {std::nullopt, XmlError{s.line, "trailing content after root element"}};
    }
    return {std::move(root), std::nullopt};
}

std::string xml_escape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (const char c : raw) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace isptb::cfg
