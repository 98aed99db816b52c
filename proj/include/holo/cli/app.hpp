// app.hpp — command-line front end: `run` and `list`

#pragma once

#include <iosfwd>

namespace holo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUnreachable = 4;

inline constexpr const char* kOutDirEnv = "HOLO_OUT_DIR";

/// Entry point of the `holonomy` binary. Failures print one JSON line on `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holo::cli
