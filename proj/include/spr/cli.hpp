#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spr {

/// Runs the `spr` command line. Exit codes: 0 when the property holds or the
/// query is true, 1 when it fails or is false, 2 on input or usage errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace spr
