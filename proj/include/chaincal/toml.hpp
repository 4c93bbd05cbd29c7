#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaincal {

struct TomlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Value of the TOML subset used for experiment plans: booleans, integers,
/// floats, strings, and flat arrays of those.
struct TomlValue {
    enum class Kind { boolean, integer, floating, string, array };

    Kind kind = Kind::integer;
    bool b = false;
    std::int64_t i = 0;
    double f = 0.0;
    std::string s;
    std::vector<TomlValue> items;

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_double() const;  // integers promote
    const std::string& as_string() const;
    std::vector<double> as_double_array() const;
    std::vector<std::int64_t> as_int_array() const;
};

/// Parsed document with dotted keys flattened ("lattice.j1"). Section
/// headers [a.b] prefix subsequent keys.
using TomlTable = std::map<std::string, TomlValue>;

/// Parses the supported TOML subset: [section] headers, `key = value`
/// pairs (bare or dotted keys), comments, and arrays that may span lines.
/// Unsupported constructs raise TomlError with a line number.
TomlTable parse_toml(const std::string& text);

TomlTable parse_toml_file(const std::string& path);

}  // namespace chaincal
