#pragma once

#include <iosfwd>

namespace cdia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitValidation = 4;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cdia::cli
