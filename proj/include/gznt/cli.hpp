#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gznt {

/// Command-line front end: eval, track, classify, levelset, report, spec.
/// Returns 0 on success, 2 on bad input or configuration, 3 on numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gznt
