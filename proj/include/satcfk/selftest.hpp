#pragma once

namespace satcfk {

// Replays the full acceptance battery; prints one line per criterion and
// returns the number of failures.
int run_selftest();

}  // namespace satcfk
