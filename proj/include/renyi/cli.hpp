#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace renyi::cli {

/// Bad command line; the message names the offending flag.  Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string verb;  // divergence | limit | converge | uniformity | bounds | lemma | families
  std::string family;
  std::string quantity = "renyi";  // divergence verb: renyi | kl | hellinger2
  double s = 0.5;
  double eps = 0.01;
  double eps0 = 0.05;
  double factor = 2.0;
  int steps = 14;
  double c = 0.0;
  bool c_set = false;
  std::string side;  // left | right
  double tol = 1e-10;
  double conv_tol = 0.01;
  std::string out;            // report destination; empty = stdout
  std::string format = "csv"; // csv | json
  bool json = false;          // scalar verbs: emit JSON instead of plain text
  int s_grid = 19;
  bool help_requested = false;
  std::string help_text;
};

/// Parses and validates argv (without the program name).  Throws UsageError
/// on anything malformed; --help yields a Command with help_requested set.
Command parse_args(const std::vector<std::string>& args);

/// Executes a validated command.  Scalar results go to `out`, diagnostics to
/// `err`; report verbs honor Command::out.  Returns the process exit code.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + run + exception-to-exit-code mapping:
/// 0 success, 2 argument error, 3 numerical non-convergence, 1 anything else.
int cli_main(int argc, char** argv);

}  // namespace renyi::cli
