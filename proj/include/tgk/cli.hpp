#pragma once

#include <ostream>

#include "tgk/tgroup.hpp"

namespace tgk {

// Exit codes: 0 computed (including Realizable and NoConclusion),
// 2 NotAbsoluteGalois, 1 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "t1=1,t5=2,u=1" or "(t1=1, t5=2, u=1)"; unlisted t_i are 0.
TInvariants parse_tuple(const std::string& text, std::uint32_t p);

}  // namespace tgk
