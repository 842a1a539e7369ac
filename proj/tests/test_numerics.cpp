#include <catch2/catch_amalgamated.hpp>

#include "seqelect/ballot.hpp"
#include "seqelect/harness.hpp"

using namespace seqelect;

namespace {

Rational rat(long long n, long long d = 1) { return make_rational(n, d); }

CandidateRow bits(std::initializer_list<int> v) {
    CandidateRow row;
    for (int b : v) row.emplace_back(b);
    return row;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(to_fraction_string(parse_rational("3/6")) == "1/2");
    CHECK(to_fraction_string(parse_rational("0.25")) == "1/4");
    CHECK(to_fraction_string(parse_rational("-1.5")) == "-3/2");
    CHECK(to_fraction_string(parse_rational(" 7 ")) == "7");
    CHECK(parse_rational("10/9") > parse_rational("45/41"));
    CHECK_THROWS_AS(parse_rational("1/0"), input_error);
    CHECK_THROWS_AS(parse_rational("x"), input_error);
    CHECK_THROWS_AS(parse_rational("1.2.3"), input_error);
    CHECK_THROWS_AS(parse_rational(""), input_error);
}

TEST_CASE("rational invariants: lowest terms, positive denominator") {
    Rational r = Rational(Int(-6)) / Rational(Int(-4));
    CHECK(numerator(r) == 3);
    CHECK(denominator(r) == 2);
    Rational s = Rational(Int(2)) / Rational(Int(-8));
    CHECK(numerator(s) == -1);
    CHECK(denominator(s) == 4);
}

TEST_CASE("l1 norm") {
    std::vector<std::int64_t> ones(4, 1);
    CHECK(l1_norm(bits({1, 1, 0, 1}), ones) == 3);
    CHECK(l1_norm(bits({0, 0, 0}), {1, 1, 1}) == 0);
    // 23 supporters of the first bloc candidate at unit scale: 20 + 2 + 1
    auto blocs = harness::fixtures::overlapping_blocs(1);
    CHECK(l1_norm(blocs.row(0), blocs.weights()) == 23);
}

TEST_CASE("l2 norm squared") {
    std::vector<std::int64_t> ones(5, 1);
    CandidateRow binary = bits({1, 1, 0, 1, 1});
    binary.push_back(Rational(1));
    std::vector<std::int64_t> ones6(6, 1);
    CHECK(l2_norm_sq(binary, ones6) == l1_norm(binary, ones6));  // binary rows agree
    CandidateRow half = {rat(1, 2), rat(1, 2)};
    CHECK(l2_norm_sq(half, {1, 1}) == rat(1, 2));
    CHECK(l2_norm_sq(bits({0, 0, 0}), {1, 1, 1}) == 0);
}

TEST_CASE("delta") {
    // printed pair from the 8x12 spillover instance
    auto mat = harness::fixtures::two_group_spillover();
    CHECK(delta(mat.row(5), mat.row(6)) == bits({0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0}));
    CHECK(delta(mat.row(6), mat.row(5)) == bits({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(delta(mat.row(0), mat.row(0)) == CandidateRow(12, Rational(0)));
    CandidateRow a = {rat(1), rat(1, 2)}, b = {rat(1, 2), rat(1)};
    CHECK(delta(a, b) == CandidateRow{rat(1, 2), rat(0)});
}

TEST_CASE("delta support properties") {
    harness::SplitMix64 rng(42);
    std::vector<std::int64_t> w(6, 1);
    for (int t = 0; t < 50; ++t) {
        CandidateRow a(6), b(6);
        for (int j = 0; j < 6; ++j) {
            a[j] = Rational(static_cast<long long>(rng.below(3))) / 2;
            b[j] = Rational(static_cast<long long>(rng.below(3))) / 2;
        }
        auto dab = delta(a, b), dba = delta(b, a);
        for (int j = 0; j < 6; ++j) {
            CHECK((dab[j] == 0 || dba[j] == 0));      // disjoint supports
            CHECK(dab[j] - dba[j] == a[j] - b[j]);    // difference reconstructs a-b
        }
    }
}

TEST_CASE("omega") {
    std::vector<std::int64_t> ones(12, 1);
    CHECK(omega({}, ones, 12) == LoadVector(12, Rational(0)));

    auto mat = harness::fixtures::two_group_spillover();
    LoadVector after_one = omega({mat.row(0)}, ones, 12);
    LoadVector want1 = {rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 10),
                        rat(1, 10), rat(0),     rat(1, 10), rat(1, 10), rat(0),     rat(1, 10)};
    CHECK(after_one == want1);

    LoadVector after_four =
        omega({mat.row(0), mat.row(1), mat.row(4), mat.row(2)}, ones, 12);
    LoadVector want4 = {rat(7, 20),  rat(7, 20),  rat(7, 20), rat(7, 20),
                        rat(47, 120), rat(31, 60), rat(9, 40), rat(5, 12),
                        rat(4, 15),  rat(31, 60), rat(1, 6),  rat(1, 10)};
    CHECK(after_four == want4);

    CHECK_THROWS_AS(omega({bits({0, 0, 0})}, std::vector<std::int64_t>(3, 1), 3),
                    precondition_error);
}

TEST_CASE("omega is additive") {
    auto mat = harness::fixtures::two_group_spillover();
    std::vector<std::int64_t> ones(12, 1);
    auto base = omega({mat.row(0), mat.row(1)}, ones, 12);
    auto ext = omega({mat.row(0), mat.row(1), mat.row(4)}, ones, 12);
    Rational norm = l1_norm(mat.row(4), ones);
    for (int j = 0; j < 12; ++j) CHECK(ext[j] == base[j] + mat.row(4)[j] / norm);
}

TEST_CASE("weighted columns behave like expanded unit columns") {
    auto blocs = harness::fixtures::overlapping_blocs(2, 3);
    auto expanded = blocs.expanded();
    REQUIRE(expanded.total_voters() == blocs.total_voters());
    for (int i = 0; i < blocs.candidates(); ++i) {
        CHECK(l1_norm(blocs.row(i), blocs.weights()) ==
              l1_norm(expanded.row(i), expanded.weights()));
        CHECK(l2_norm_sq(blocs.row(i), blocs.weights()) ==
              l2_norm_sq(expanded.row(i), expanded.weights()));
        for (int k = 0; k < blocs.candidates(); ++k)
            CHECK(inner(blocs.row(i), blocs.row(k), blocs.weights()) ==
                  inner(expanded.row(i), expanded.row(k), expanded.weights()));
    }
}

TEST_CASE("ballot matrix validation") {
    CHECK_THROWS_AS(BallotMatrix({"a"}, {{rat(3, 2)}}, {1}), input_error);
    CHECK_THROWS_AS(BallotMatrix({"a"}, {{rat(1)}}, {0}), input_error);
    CHECK_THROWS_AS(BallotMatrix({"a", "b"}, {{rat(1)}}, {1}), input_error);
    auto mat = harness::fixtures::overlapping_blocs(1);
    CHECK(mat.is_approval());
    BallotMatrix scores({"a"}, {{rat(1, 2)}}, {1});
    CHECK_FALSE(scores.is_approval());
}
