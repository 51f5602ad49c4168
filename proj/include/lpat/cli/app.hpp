// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace lpat::cli {

/// Entry point of the `lpat` tool. Returns the process exit code: 0 on
/// success, 2 for usage errors, 1 for any other failure. Diagnostics go to
/// `err` only.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace lpat::cli
