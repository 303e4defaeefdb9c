#pragma once

#include "tgwa/induced.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tgwa {

// Minimal TOML-style reader: [section] headers, key = value with string,
// integer, or homogeneous array values.
struct TomlValue {
    std::variant<std::string, long, std::vector<long>, std::vector<std::string>> v;
    const std::string& as_string() const;
    long as_int() const;
    std::vector<long> as_ints() const;
};

using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

TomlTable parse_toml(const std::string& text);

// A fully assembled session: environment, algebra, point, build options.
struct Session {
    ParameterEnv env{1};
    QwaSystem sys;
    WeightPoint point;
    BuildOptions opts;
    long window = 4;
    std::string point_preset;   // n0 | n1 | n2 | generic | raw
    std::string fixture;        // empty | sign_flip | pib_n0
    std::string algebra_preset; // qwa2 | qwa | ccr | sign_flip
};

Session load_session(const std::string& config_text);
Session load_session_file(const std::string& path);

} // namespace tgwa
