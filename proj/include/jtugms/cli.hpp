#pragma once

namespace jtugms::cli {

/// Exit codes: 0 success, 1 estimation error, 2 usage or configuration error.
int run(int argc, char** argv);

}  // namespace jtugms::cli
