#pragma once

#include <iosfwd>

namespace seqsteer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the sweep tool. Diagnostics go to err; CSV without --out,
/// window summaries and dumped sets go to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace seqsteer::cli
