#include <doctest.h>

TEST_CASE("placeholder rdm") { CHECK(true); }
