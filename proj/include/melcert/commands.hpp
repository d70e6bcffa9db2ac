#ifndef MELCERT_COMMANDS_HPP
#define MELCERT_COMMANDS_HPP

#include <optional>
#include <ostream>
#include <string>

#include "melcert/config.hpp"
#include "melcert/newton.hpp"

namespace melcert {

enum ExitCode : int { exitVerified = 0, exitFailed = 1, exitConfigError = 2 };

struct CommandOptions {
    std::string config;
    // certificate path, or output directory for export-samples
    std::string out;
    std::optional<int> threads;
    bool verbose = false;
};

int cmd_lu_verify(const CommandOptions& opt, std::ostream& out, std::ostream& log);
int cmd_certify_root(const CommandOptions& opt, std::ostream& out, std::ostream& log);
int cmd_export_samples(const CommandOptions& opt, std::ostream& out, std::ostream& log);

std::string newton_json(const NewtonCertificate& cert, const RootConfig& cfg, double wallTimeSeconds,
                        const std::string& toolVersion);

// CSV with header eps,x1,x2,x3,x4,side
std::string samples_csv(const LUConfig& cfg, const SampleSpec& spec);
// enclosures of the local graph over a grid of the parameter square
std::string boxes_csv(const LUConfig& cfg, const BoxSpec& spec);

} // namespace melcert

#endif
