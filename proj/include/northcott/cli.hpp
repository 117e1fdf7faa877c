#ifndef NORTHCOTT_CLI_HPP
#define NORTHCOTT_CLI_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace northcott::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,  // bad flags, parse errors, inputs outside a domain
    kBudget = 3,
    kInternal = 4,
};

enum class Format { Json, Csv, Table };

struct RunConfig {
    std::string subcommand;
    mpq_class tolerance{1, 1000000000};
    Format format = Format::Json;
    unsigned workers = 1;
    std::uint64_t budget = 100000000;
};

/// Runs one command line (args exclude the program name). Output goes to
/// out, diagnostics to err; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace northcott::cli

#endif  // NORTHCOTT_CLI_HPP
