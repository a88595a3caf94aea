#ifndef HLG_CLI_HPP
#define HLG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hlg::cli {

/// Exit codes: 0 success, 2 verified-negative mathematical outcome
/// (insoluble form, empty search, failed suite assertion), 1 error,
/// 64 usage error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace hlg::cli

#endif
