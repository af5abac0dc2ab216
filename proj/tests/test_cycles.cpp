// Exact rational clock-cycle arithmetic.

#include "doctest.h"

#include <stdexcept>

#include "lscomp/cycles.hpp"

using lscomp::Cycles;

TEST_SUITE("cycles") {

TEST_CASE("construction normalizes sign and gcd") {
    CHECK(Cycles{}.num == 0);
    CHECK(Cycles{}.den == 1);
    Cycles a{6, 4};
    CHECK(a.num == 3);
    CHECK(a.den == 2);
    Cycles b{3, -2};
    CHECK(b.num == -3);
    CHECK(b.den == 2);
    Cycles z{0, 7};
    CHECK(z.den == 1);
    CHECK_THROWS_AS(Cycles(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic stays exact") {
    Cycles inject{42, 5};   // 8.4
    Cycles s{3, 2};         // 1.5
    CHECK(inject + s == Cycles{99, 10});
    CHECK(inject - s == Cycles{69, 10});
    CHECK(inject * 5 == Cycles{42});
    CHECK(2 * s == Cycles{3});
    Cycles acc;
    for (int i = 0; i < 10; ++i) acc += Cycles{1, 10};
    CHECK(acc == Cycles{1});
    acc -= Cycles{1, 2};
    CHECK(acc == Cycles{1, 2});
}

TEST_CASE("ordering and max") {
    CHECK(Cycles{42, 5} < Cycles{9});
    CHECK(Cycles{9} > Cycles{42, 5});
    CHECK(Cycles{1, 3} < Cycles{1, 2});
    CHECK(Cycles{-1, 2} < Cycles{0});
    CHECK(Cycles::max(Cycles{42, 5}, Cycles{19, 10}) == Cycles{42, 5});
    CHECK(Cycles::max(Cycles{2}, Cycles{2}) == Cycles{2});
}

TEST_CASE("ceil_int rounds toward positive infinity") {
    CHECK(Cycles{522, 5}.ceil_int() == 105);  // 104.4
    CHECK(Cycles{42, 5}.ceil_int() == 9);
    CHECK(Cycles{7}.ceil_int() == 7);
    CHECK(Cycles{0}.ceil_int() == 0);
    CHECK(Cycles{-1, 2}.ceil_int() == 0);
    CHECK(Cycles{-3, 2}.ceil_int() == -1);
}

TEST_CASE("decimal rendering") {
    CHECK(Cycles{42, 5}.str() == "8.4");
    CHECK(Cycles{3, 2}.str() == "1.5");
    CHECK(Cycles{19, 10}.str() == "1.9");
    CHECK(Cycles{7}.str() == "7");
    CHECK(Cycles{0}.str() == "0");
    CHECK(Cycles{-1, 2}.str() == "-0.5");
    CHECK(Cycles{1, 3}.str() == "1/3");  // non-decimal fallback
}

TEST_CASE("parse round-trips the constants") {
    CHECK(Cycles::parse("8.4") == Cycles{42, 5});
    CHECK(Cycles::parse("1.5") == Cycles{3, 2});
    CHECK(Cycles::parse("1.9") == Cycles{19, 10});
    CHECK(Cycles::parse("12") == Cycles{12});
    CHECK(Cycles::parse("-0.5") == Cycles{-1, 2});
    CHECK(Cycles::parse("0") == Cycles{0});
    for (const char* bad : {"", "abc", "1.2.3", "--1"})
        CHECK_THROWS_AS(Cycles::parse(bad), std::invalid_argument);
}

TEST_CASE("to_double and is_zero") {
    CHECK(Cycles{42, 5}.to_double() == doctest::Approx(8.4));
    CHECK(Cycles{}.is_zero());
    CHECK_FALSE(Cycles{1, 10}.is_zero());
}

} // TEST_SUITE
