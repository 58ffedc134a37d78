#pragma once

// Command-line surface. The binary in tools/ is a one-line wrapper around
// run_cli so the argument handling, artifact writing, and exit-code mapping
// are all testable as a library.
//
// Exit codes: 0 success, 1 usage error, 2 file I/O failure, 3 dimension or
// shape mismatch, 4 solver hit its iteration cap, 5 internal numerical
// failure.

namespace minsvd {

extern const char* const kToolVersion;

int run_cli(int argc, const char* const* argv);

}  // namespace minsvd
