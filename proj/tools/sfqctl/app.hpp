#pragma once

#include <ostream>

namespace sfqctl {

/// Whole command-line run. Reports and datasets go to `out`; failures are
/// written to `err` as {"error": {...}} JSON. Returns the process exit code:
/// 0 on success, 1 when the run fails, 2 for usage and config errors.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sfqctl
