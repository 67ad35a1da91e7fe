#pragma once

#include <iosfwd>

namespace hyplane {

// Exit codes: 0 success, 1 usage or input error, 2 failed statistical verdict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyplane
