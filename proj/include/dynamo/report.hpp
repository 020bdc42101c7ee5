#pragma once

// Machine-readable experiment reports: a header line, the config echoed as
// comments, one tab-separated header + row block, and a summary line.
// Rendering is byte-deterministic for a given config.

#include <string>
#include <vector>

namespace dynamo {

inline constexpr unsigned kReportSchemaVersion = 1;

struct Report {
    std::string kind;
    std::string config_echo;  // canonical config rendering
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string summary;

    std::string render() const;
};

}  // namespace dynamo
