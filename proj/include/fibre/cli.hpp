#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace fibre::cli {

/// Defaults for grids and tolerances. Command-line flags override these.
struct Config {
    std::vector<int> resolution_3d{64, 64, 64};
    std::vector<int> resolution_4d{32, 32, 24, 24};
    std::vector<int> resolution_box{32, 32, 32};
    double delta = 0.0;      // 0: adaptive preimage thickness
    double tolerance = 0.0;  // 0: 1e-8 times the grid diameter
    unsigned threads = 0;    // 0: FIBRETOOL_THREADS or hardware
};

/// Reads `key = value` lines; `#` starts a comment. Throws
/// FibreError(ConfigParse) naming the offending line.
Config load_config(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Runs one command (arguments exclude the program name). Returns 0 on
/// success, 2 when the result fails validation, 1 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fibre::cli
