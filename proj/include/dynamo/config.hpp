#pragma once

// Flat key = value experiment configuration.  Repeatable keys (map, variety,
// point, degrees) collect lists; '#' starts a comment line.  Parsing
// validates everything up front and reports all violations in one error.

#include <cstdint>
#include <string>
#include <vector>

#include "dynamo/padic.hpp"

namespace dynamo {

struct config_error : std::runtime_error {
    std::vector<std::string> issues;
    explicit config_error(std::vector<std::string> problems);
};

struct ExperimentConfig {
    std::uint64_t p = 0;
    unsigned k = 1;
    unsigned precision = 8;  // N
    unsigned dim = 1;
    std::vector<std::string> map_texts;      // one per component
    std::vector<std::string> variety_texts;  // one per generator, may be empty
    std::vector<std::string> point_texts;    // base point coordinates, may be empty
    std::vector<unsigned> degrees;           // empty means {k}
    unsigned max_period = 6;
    unsigned depth = 8;
    unsigned lookahead = 2;
    unsigned degree_bound = 8;
    std::uint64_t seed = 0;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);

/// Canonical rendering; parse_config(render_config(c)) == c.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace dynamo
