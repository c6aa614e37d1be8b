#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lprev/syntax.hpp"

namespace lprev::testing {

inline constexpr const char* kCars = R"(
#persistent
c(c1).
c(c2).
#temporal
phi1: r(X) :- c(X), not b(X).
#backup
phi2: b(X) :- c(X), not r(X).
#new
:- r(c1).
)";

inline ParsedFramework cars() { return parse_framework(kCars); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(LPREV_DATA_DIR) + "/" + name; }

inline Program rules(const std::vector<std::string>& texts) {
    Program p;
    for (const auto& t : texts) p.push_back(parse_rule(t));
    return p;
}

inline std::set<Atom> atoms(const std::vector<std::string>& texts) {
    std::set<Atom> out;
    for (const auto& t : texts) out.insert(parse_atom(t));
    return out;
}

}  // namespace lprev::testing
