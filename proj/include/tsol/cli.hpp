#pragma once

#include <iosfwd>

namespace tsol {

// Batch front-end. Subcommands: solve, bounds, funnel, subsol, asymfit,
// sweep. Returns 0 when all checks pass, 1 when a verification finds a
// violation or sign change (output still written), 2 on usage or input
// errors (one-line diagnostic on err).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace tsol
