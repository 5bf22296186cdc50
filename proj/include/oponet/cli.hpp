#pragma once

namespace oponet {

inline constexpr const char* version = "0.1.0";

// Full command-line entry point. Returns the process exit code:
// 0 success, 2 configuration error, 3 numerical failure.
int run(int argc, const char* const* argv);

}  // namespace oponet
