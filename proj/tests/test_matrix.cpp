#include "doctest.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "pmq/errors.hpp"
#include "pmq/matrix.hpp"

using namespace pmq;
using testutil::chsh;
using testutil::make;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("witness files round trip") {
    const WitnessMatrix M = make(2, 3, {1, -7, 0, 42, -1, 9});
    const std::string path = "tmp_matrix_roundtrip.txt";
    save_matrix(M, path);
    const WitnessMatrix back = load_matrix(path);
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) CHECK(back.at(x, y) == M.at(x, y));
    std::remove(path.c_str());
}

TEST_CASE("real matrix files round trip exactly") {
    RealMatrix R(2, 2);
    R.at(0, 0) = 1.0 / 3.0;
    R.at(0, 1) = -0.7071067811865476;
    R.at(1, 0) = 1e-17;
    R.at(1, 1) = -1;
    const std::string path = "tmp_real_roundtrip.txt";
    save_real_matrix(R, path);
    const RealMatrix back = load_real_matrix(path);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(back.at(x, y) == R.at(x, y)); // %.17g is lossless
    std::remove(path.c_str());
}

TEST_CASE("loader accepts CRLF and rejects malformed input") {
    const std::string path = "tmp_matrix_forms.txt";
    write_file(path, "2 2\r\n1 1\r\n1 -1\r\n");
    const WitnessMatrix M = load_matrix(path);
    CHECK(M.at(1, 1) == -1);

    write_file(path, "");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    write_file(path, "2\n1 1\n1 -1\n");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    write_file(path, "2 2\n1 1\n1\n");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    write_file(path, "2 2\n1 1\n1 -1\n7\n");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    write_file(path, "2 2\n1 one\n1 -1\n");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    write_file(path, "2 2\n1 1\n");
    CHECK_THROWS_AS(load_matrix(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("headerless loader takes dimensions from the caller") {
    const std::string path = "tmp_matrix_headerless.txt";
    write_file(path, "1 2\n3 4\n");
    const WitnessMatrix M = load_matrix(path, 2, 2);
    CHECK(M.at(1, 0) == 3);
    CHECK_THROWS_AS(load_matrix(path, 3, 2), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("construction enforces the exact-arithmetic budget") {
    CHECK_THROWS_AS(make(1, 2, {std::int64_t{1} << 62, 1}), OverflowError);
    CHECK_THROWS_AS(RealMatrix(1, 1, {std::nan("")}), Error);
    CHECK_THROWS_AS(make(1, 2, {1}), Error); // entry count mismatch
}

TEST_CASE("entry sum and doubling") {
    CHECK(sum_S(chsh()) == 2);
    const WitnessMatrix D = make_doubled(chsh());
    REQUIRE(D.rows() == 4);
    REQUIRE(D.cols() == 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            CHECK(D.at(x, y) == chsh().at(x, y));
            CHECK(D.at(x + 2, y) == -chsh().at(x, y));
        }
    CHECK(sum_S(D) == 0);
}

TEST_CASE("sign-pattern family") {
    const WitnessMatrix one = gen_family(1);
    CHECK(one.rows() == 1);
    CHECK(one.cols() == 1);
    CHECK(one.at(0, 0) == 1);

    const WitnessMatrix two = gen_family(2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) CHECK(two.at(x, y) == chsh().at(x, y));

    const WitnessMatrix four = gen_family(4);
    REQUIRE(four.rows() == 4);
    REQUIRE(four.cols() == 8);
    for (int y = 0; y < 8; ++y) {
        CHECK(four.at(0, y) == 1); // widest block: all plus
        CHECK(four.at(3, y) == (y % 2 == 0 ? 1 : -1)); // narrowest: alternating
    }
    // Columns enumerate every sign pattern with leading +1 exactly once.
    for (int y1 = 0; y1 < 8; ++y1)
        for (int y2 = y1 + 1; y2 < 8; ++y2) {
            bool same = true;
            for (int x = 0; x < 4; ++x) same = same && four.at(x, y1) == four.at(x, y2);
            CHECK_FALSE(same);
        }

    CHECK_THROWS_AS(gen_family(0), SizeCapError);
    CHECK_THROWS_AS(gen_family(21), SizeCapError);
}

TEST_CASE("integerization truncates toward zero") {
    RealMatrix R(1, 4);
    R.at(0, 0) = 1.9994;
    R.at(0, 1) = -1.9994;
    R.at(0, 2) = 0.0004;
    R.at(0, 3) = -0.25;
    const WitnessMatrix M = integerize(R, 1000);
    CHECK(M.at(0, 0) == 1999);
    CHECK(M.at(0, 1) == -1999);
    CHECK(M.at(0, 2) == 0);
    CHECK(M.at(0, 3) == -250);

    CHECK_THROWS_AS(integerize(R, 0), ParseError);
    RealMatrix big(1, 1);
    big.at(0, 0) = 1e18;
    CHECK_THROWS_AS(integerize(big, 1000), OverflowError);
}
