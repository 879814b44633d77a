#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace a2t::cli {

// Runs one subcommand and writes its JSON result. Returns the exit status.
// Domain failures propagate as DomainError.
int dispatch(const RunConfig& cfg, std::ostream& out);

}  // namespace a2t::cli
