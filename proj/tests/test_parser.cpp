#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "freejac/error.hpp"
#include "freejac/parse.hpp"
#include "test_util.hpp"

using namespace freejac;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::io_error;
}

}  // namespace

TEST_CASE("parses the squaring map") {
    FreePolyMap m = parse_map("vars X; (X^2)");
    CHECK(m.num_vars == 1);
    CHECK(m.num_outputs() == 1);
    CHECK(m.components[0] == FreePoly::variable(1, 0) * FreePoly::variable(1, 0));
}

TEST_CASE("parses the symmetrization map") {
    FreePolyMap m = parse_map("vars X,Y; (X + Y, X^2 + Y^2)");
    FreePoly x = FreePoly::variable(2, 0), y = FreePoly::variable(2, 1);
    CHECK(m.num_vars == 2);
    CHECK(m.components[0] == x + y);
    CHECK(m.components[1] == x * x + y * y);
}

TEST_CASE("parses the exotic quadratic map with commutators") {
    FreePolyMap m = parse_map("vars X,Y; (X+X^2+[X,Y], Y+[X,Y])");
    FreePoly x = FreePoly::variable(2, 0), y = FreePoly::variable(2, 1);
    CHECK(m.components[0] == x + x * x + x * y - y * x);
    CHECK(m.components[1] == y + x * y - y * x);
}

TEST_CASE("variable order follows declaration or first appearance") {
    ParsedMap declared = parse_source("vars B,A; (A + 2*B)");
    CHECK(declared.names == std::vector<std::string>{"B", "A"});
    CHECK(declared.map.components[0].coeff(Word{0}) == cplx(2.0));  // B
    CHECK(declared.map.components[0].coeff(Word{1}) == cplx(1.0));  // A

    ParsedMap bare = parse_source("(A + 2*B, B)");
    CHECK(bare.names == std::vector<std::string>{"A", "B"});
    CHECK(bare.map.components[0].coeff(Word{0}) == cplx(1.0));
}

TEST_CASE("operator precedence: a + b*c^2") {
    FreePolyMap m = parse_map("vars a,b,c; (a + b*c^2)");
    FreePoly want = FreePoly::variable(3, 0);
    want.add_term(Word{1, 2, 2}, 1.0);
    CHECK(m.components[0] == want);
}

TEST_CASE("commutator expands to the difference of products") {
    CHECK(parse_poly("vars A,B; ([A,B])") == parse_poly("vars A,B; (A*B - B*A)"));
}

TEST_CASE("complex literals") {
    FreePoly p = parse_poly("vars X,Y; ((2+3i)*X*Y)");
    CHECK(p.coeff(Word{0, 1}) == cplx(2.0, 3.0));
    CHECK(parse_poly("i").coeff(Word{}) == cplx(0.0, 1.0));
    CHECK(parse_poly("3i").coeff(Word{}) == cplx(0.0, 3.0));
    CHECK(parse_poly("2.5").coeff(Word{}) == cplx(2.5));
    CHECK(parse_poly("1e-5").coeff(Word{}) == cplx(1e-5));
    CHECK(parse_poly("vars X; ((2-3i)*X)").coeff(Word{0}) == cplx(2.0, -3.0));
}

TEST_CASE("unary minus and exponent zero") {
    CHECK(parse_poly("vars X; (-X)") == -FreePoly::variable(1, 0));
    CHECK(parse_poly("vars X; (X^0)") == FreePoly::constant(1, 1.0));
    CHECK(parse_poly("-2") == FreePoly::constant(1, -2.0));
}

TEST_CASE("canonical printing") {
    std::vector<std::string> xy{"X", "Y"};
    CHECK(print_poly(FreePoly::zero(2), xy) == "0");

    FreePoly x = FreePoly::variable(2, 0), y = FreePoly::variable(2, 1);
    CHECK(print_poly(x * x + x * y, xy) == "X*X + X*Y");
    CHECK(print_poly(cplx(2.0, 3.0) * (x * y), xy) == "(2+3i)*X*Y");
    CHECK(print_poly(-x + 2.0 * y, xy) == "-X + 2*Y");
    CHECK(print_poly(x - y, xy) == "X - Y");
    CHECK(print_poly(cplx(0.0, -1.0) * x, xy) == "-i*X");
    CHECK(print_poly(x * x + x * y, xy, /*compress_powers=*/true) == "X^2 + X*Y");
}

TEST_CASE("a zero component survives the round trip") {
    FreePolyMap zero_map(1, {FreePoly::zero(1)});
    CHECK(parse_map("vars X; (0)") == zero_map);
    CHECK(print_map(zero_map) == "vars X; (0)");
    CHECK(parse_map(print_map(zero_map)) == zero_map);
}

TEST_CASE("print/parse round trip is exact on 500 random maps") {
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int outputs = 1 + static_cast<int>(rng() % 3);
        FreePolyMap p = testutil::random_map(rng, n, outputs, 4, 6, 2.0);
        const bool compress = rep % 2 == 0;
        CHECK(parse_map(print_map(p, compress)) == p);
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_map("vars X;\n(X + )");
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::syntax_error);
        CHECK(e.data().at("line").get<int>() == 2);
        CHECK(e.data().at("column").get<int>() == 6);
    }
}

TEST_CASE("garbage input throws structured errors, never crashes") {
    std::mt19937_64 rng(31337);
    const std::string alphabet = "XY+-*^()[],;vars i0123456789. \t\n\xc3\xa9";
    for (int rep = 0; rep < 2000; ++rep) {
        std::string text;
        const int len = 1 + static_cast<int>(rng() % 24);
        for (int k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];
        try {
            FreePolyMap m = parse_map(text);
            CHECK(m.num_outputs() >= 1);  // a lucky valid input
        } catch (const Error&) {
            // any structured error is acceptable
        }
    }
}

TEST_CASE("error taxonomy") {
    CHECK(code_of([] { parse_map("vars X; (X + Q)"); }) == ErrorCode::unknown_identifier);
    CHECK(code_of([] { parse_map("vars X; (X^-1)"); }) == ErrorCode::bad_exponent);
    CHECK(code_of([] { parse_map("vars X; (X^1.5)"); }) == ErrorCode::bad_exponent);
    CHECK(code_of([] { parse_map("vars X; (X^Y)"); }) == ErrorCode::bad_exponent);
    CHECK(code_of([] { parse_map("vars X; ()"); }) == ErrorCode::empty_tuple);
    CHECK(code_of([] { parse_map("vars X, X; (X)"); }) == ErrorCode::syntax_error);
    CHECK(code_of([] { parse_map("vars i; (i)"); }) == ErrorCode::syntax_error);
    CHECK(code_of([] { parse_map("(X) trailing"); }) == ErrorCode::syntax_error);
}
