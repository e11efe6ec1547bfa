#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msdiff {

// Runs one subcommand (coeffs, oracle-check, ms-run, kinetic-run, sweep).
// Returns the process exit status; failures print a single JSON error line
// to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

} // namespace msdiff
