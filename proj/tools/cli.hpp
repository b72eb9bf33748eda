// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Entry point of the swarmkd command-line tool, callable in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swarmkd::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kRuntimeError = 2 };

/// `args` excludes the program name. Normal output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace swarmkd::cli
