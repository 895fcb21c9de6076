#pragma once

#include "ndtc/config.hpp"

namespace ndtc {

// Executes one configured run — or one run per sweep value, each with a
// suffixed output name — writing the CSV trace (and optional JSON report).
// Returns a process exit code: 0 on success, 1 on numerical or I/O failure.
int run(const RunConfig& cfg);

}  // namespace ndtc
