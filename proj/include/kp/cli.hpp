// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace kp {

/// Entry point of the `kp` tool. Returns 0 on success, 1 after a library
/// error (reported as JSON on `err`), 2 on malformed arguments or input files
/// and 3 when `verify` finds a failing check.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kp
