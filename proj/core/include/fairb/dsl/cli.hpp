#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairb::dsl {

/// Entry point of the fairb tool. Returns 0 when every obligation passes,
/// 1 when some obligation fails, 2 on usage, parse or elaboration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairb::dsl
