#pragma once

#include <iosfwd>

namespace stklein {

/// Entry point of the `stklein` tool. Exit codes: 0 success, 1 usage or
/// domain error (a JSON error object goes to `err`), 2 verification failure.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stklein
