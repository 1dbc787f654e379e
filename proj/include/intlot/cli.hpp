#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace intlot::cli {

/// Exit codes: 0 success/holds, 2 input error, 3 property fails
/// (arbitrage exists / price not a member), 4 inconclusive within the
/// search budget, 5 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace intlot::cli
