#ifndef ORBITPRIMES_CLI_HPP
#define ORBITPRIMES_CLI_HPP

#include <ostream>

namespace orbitprimes::cli {

// Parses argv and runs one subcommand. Results go to out, errors to err
// as JSON. Exit code: 0 success, 1 domain error, 2 usage error.
// ORBITPRIMES_PRECISION_BITS overrides the default --precision-bits.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbitprimes::cli

#endif
