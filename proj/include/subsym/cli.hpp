#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subsym {

/// Settings shared by every subcommand.
struct RunConfig {
  unsigned threads = 1;
  unsigned max_depth = 8;
  std::int64_t cell_cap = std::int64_t{1} << 26;
  std::string out_path;        // empty: standard output
  std::string render = "txt";  // txt | ppm | svg
  void validate() const;       // all caps positive, known render format
};

/// Runs the `subsym` command line (args exclude the program name).
/// Exit codes: 0 success, 1 negative verdict, 2 usage or input error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace subsym
