#include "dynamo/report.hpp"

#include <sstream>

namespace dynamo {

std::string Report::render() const {
    std::ostringstream os;
    os << "# padic-dynamo " << kReportSchemaVersion << " " << kind << "\n";
    std::istringstream cfg(config_echo);
    std::string line;
    while (std::getline(cfg, line)) os << "# " << line << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os << "\t";
        os << columns[i];
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << "\t";
            os << row[i];
        }
        os << "\n";
    }
    os << "# summary: " << summary << "\n";
    return os.str();
}

}  // namespace dynamo
