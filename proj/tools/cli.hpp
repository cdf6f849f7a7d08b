#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seizcnn::cli {

/// Runs one command line (args excludes the program name). Returns the
/// process exit code: 0 success, 1 usage, 2 data, 3 numeric or internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seizcnn::cli
