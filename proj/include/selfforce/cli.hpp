#pragma once

namespace selfforce::cli {

// Entry point behind the selfforce-lab binary.  Returns the process exit
// code: 0 success, 1 oracle comparison failed, 2 configuration error,
// 3 numerics did not converge, 4 physicality violations under --strict.
int run(int argc, const char* const* argv);

}  // namespace selfforce::cli
