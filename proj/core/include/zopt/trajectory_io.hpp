#pragma once

#include <iosfwd>

#include "zopt/solvers.hpp"

namespace zopt {

/// Compact little-endian binary dump of a RunRecord ("ZOPTTRJ1" magic).
/// Dense values and best-so-far sequences are stored in full; iterate
/// vectors only at the recorded points.
void write_trajectory(std::ostream& out, const RunRecord& record);
RunRecord read_trajectory(std::istream& in);

}  // namespace zopt
