#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diskbond {

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 success, 1 a verification check failed, 2 argument or input validation,
/// 3 conditioning or truncation-cap failure, 4 file I/O failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace diskbond
