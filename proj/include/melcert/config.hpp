#ifndef MELCERT_CONFIG_HPP
#define MELCERT_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "melcert/lerman_umanskii.hpp"

namespace melcert {

// Unreadable, malformed or schema-invalid configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RootConfig {
    std::string name = "root";
    std::vector<std::string> parameters;
    std::vector<std::string> variables;
    std::vector<std::string> equations;
    IntervalBox X;
    IntervalBox Y;
    std::optional<std::vector<double>> y0;
    int maxRefine = 30;
};

struct SampleSpec {
    Side side = Side::unstable;
    double eps = 0;
    std::size_t count = 64;
    double rho = 1e-4;
    double time = 0;
    std::string file;
};

struct BoxSpec {
    Side side = Side::unstable;
    int subdivisions = 4;
    std::string file;
};

struct ExportConfig {
    LUConfig lu;
    std::vector<SampleSpec> samples;
    std::vector<BoxSpec> boxes;
};

std::string read_text_file(const std::string& path);

LUConfig parse_lu_config(const std::string& jsonText);
RootConfig parse_root_config(const std::string& jsonText);
ExportConfig parse_export_config(const std::string& jsonText);

} // namespace melcert

#endif
