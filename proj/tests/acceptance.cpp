#include <cstdlib>

#include "satcfk/selftest.hpp"

int main() { return satcfk::run_selftest() == 0 ? 0 : 1; }
