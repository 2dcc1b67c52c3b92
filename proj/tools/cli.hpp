#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wadgeforge::cli {

/// Environment lookup; the default reads the process environment.
using EnvLookup = std::function<std::optional<std::string>(const std::string& name)>;

EnvLookup process_env();

/// Runs one command (args excludes the program name). Results go to `out`
/// as key=value lines, diagnostics to `err` as `error=<message>`. Returns 0
/// on success, 2 on a domain error or an unsupported/undefined result, 1 on
/// a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env());

} // namespace wadgeforge::cli
