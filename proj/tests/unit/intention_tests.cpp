#include <doctest.h>

TEST_CASE("placeholder intention") { CHECK(true); }
