#include "chaincal/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "chaincal/io.hpp"

namespace chaincal {

bool TomlValue::as_bool() const {
    if (kind != Kind::boolean) throw TomlError("expected a boolean value");
    return b;
}

std::int64_t TomlValue::as_int() const {
    if (kind != Kind::integer) throw TomlError("expected an integer value");
    return i;
}

double TomlValue::as_double() const {
    if (kind == Kind::integer) return static_cast<double>(i);
    if (kind != Kind::floating) throw TomlError("expected a numeric value");
    return f;
}

const std::string& TomlValue::as_string() const {
    if (kind != Kind::string) throw TomlError("expected a string value");
    return s;
}

std::vector<double> TomlValue::as_double_array() const {
    if (kind != Kind::array) throw TomlError("expected an array value");
    std::vector<double> out;
    out.reserve(items.size());
    for (const TomlValue& v : items) out.push_back(v.as_double());
    return out;
}

std::vector<std::int64_t> TomlValue::as_int_array() const {
    if (kind != Kind::array) throw TomlError("expected an array value");
    std::vector<std::int64_t> out;
    out.reserve(items.size());
    for (const TomlValue& v : items) out.push_back(v.as_int());
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw TomlError("line " + std::to_string(line) + ": " + message);
    }

    void skip_blank_inline() {
        while (!done() && (peek() == ' ' || peek() == '\t')) take();
    }

    /// Skips whitespace, newlines, and comments.
    void skip_blank() {
        for (;;) {
            skip_blank_inline();
            if (done()) return;
            if (peek() == '#') {
                while (!done() && peek() != '\n') take();
            } else if (peek() == '\n' || peek() == '\r') {
                take();
            } else {
                return;
            }
        }
    }
};

std::string parse_key(Cursor& cur) {
    std::string key;
    while (!cur.done()) {
        const char c = cur.peek();
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
            key += cur.take();
        } else {
            break;
        }
    }
    if (key.empty()) cur.fail("expected a key");
    return key;
}

std::string parse_string(Cursor& cur) {
    cur.take();  // opening quote
    std::string out;
    for (;;) {
        if (cur.done()) cur.fail("unterminated string");
        char c = cur.take();
        if (c == '"') return out;
        if (c == '\n') cur.fail("newline inside string");
        if (c == '\\') {
            if (cur.done()) cur.fail("dangling escape");
            const char esc = cur.take();
            switch (esc) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: cur.fail(std::string("unsupported escape \\") + esc);
            }
        } else {
            out += c;
        }
    }
}

TomlValue parse_value(Cursor& cur);

TomlValue parse_array(Cursor& cur) {
    cur.take();  // '['
    TomlValue value;
    value.kind = TomlValue::Kind::array;
    cur.skip_blank();
    if (!cur.done() && cur.peek() == ']') {
        cur.take();
        return value;
    }
    for (;;) {
        cur.skip_blank();
        value.items.push_back(parse_value(cur));
        cur.skip_blank();
        if (cur.done()) cur.fail("unterminated array");
        const char c = cur.take();
        if (c == ']') return value;
        if (c != ',') cur.fail("expected ',' or ']' in array");
        cur.skip_blank();
        if (!cur.done() && cur.peek() == ']') {  // trailing comma
            cur.take();
            return value;
        }
    }
}

TomlValue parse_scalar(Cursor& cur) {
    std::string token;
    while (!cur.done()) {
        const char c = cur.peek();
        if (c == '\n' || c == '\r' || c == ',' || c == ']' || c == '#' || c == ' ' || c == '\t')
            break;
        token += cur.take();
    }
    if (token.empty()) cur.fail("expected a value");

    TomlValue value;
    if (token == "true" || token == "false") {
        value.kind = TomlValue::Kind::boolean;
        value.b = token == "true";
        return value;
    }
    const bool looks_float = token.find_first_of(".eE") != std::string::npos &&
                             token.find_first_not_of("+-0123456789.eE") == std::string::npos;
    if (!looks_float) {
        std::int64_t parsed = 0;
        const auto [end, ec] =
            std::from_chars(token.data(), token.data() + token.size(), parsed);
        if (ec == std::errc() && end == token.data() + token.size()) {
            value.kind = TomlValue::Kind::integer;
            value.i = parsed;
            return value;
        }
    }
    char* end = nullptr;
    const double parsed = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size())
        cur.fail("cannot parse value '" + token + "'");
    value.kind = TomlValue::Kind::floating;
    value.f = parsed;
    return value;
}

TomlValue parse_value(Cursor& cur) {
    if (cur.done()) cur.fail("expected a value");
    const char c = cur.peek();
    if (c == '"') {
        TomlValue value;
        value.kind = TomlValue::Kind::string;
        value.s = parse_string(cur);
        return value;
    }
    if (c == '[') return parse_array(cur);
    return parse_scalar(cur);
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    Cursor cur{text};
    std::string prefix;

    for (;;) {
        cur.skip_blank();
        if (cur.done()) return table;

        if (cur.peek() == '[') {
            cur.take();
            cur.skip_blank_inline();
            prefix = parse_key(cur);
            cur.skip_blank_inline();
            if (cur.done() || cur.take() != ']') cur.fail("expected ']' after section name");
            prefix += '.';
            continue;
        }

        const std::string key = parse_key(cur);
        cur.skip_blank_inline();
        if (cur.done() || cur.take() != '=') cur.fail("expected '=' after key '" + key + "'");
        cur.skip_blank_inline();
        TomlValue value = parse_value(cur);
        cur.skip_blank_inline();
        if (!cur.done() && cur.peek() != '\n' && cur.peek() != '\r' && cur.peek() != '#')
            cur.fail("unexpected trailing content after value for '" + key + "'");
        if (!table.emplace(prefix + key, std::move(value)).second)
            cur.fail("duplicate key '" + prefix + key + "'");
    }
}

TomlTable parse_toml_file(const std::string& path) {
    return parse_toml(read_text_file(path));
}

}  // namespace chaincal
