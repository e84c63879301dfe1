// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace rimnull {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

/// Entry point of the `rimnull` tool. Subcommands: reference, design,
/// pattern, sweep, states export, states import.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rimnull
