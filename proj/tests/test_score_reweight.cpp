#include <catch2/catch_amalgamated.hpp>

#include "seqelect/election_io.hpp"
#include "seqelect/properties.hpp"
#include "seqelect/pointwise.hpp"
#include "seqelect/score_reweight.hpp"

using namespace seqelect;
using namespace seqelect::score_reweight;

namespace {

std::string name_order(const BallotMatrix& mat, const std::vector<int>& order) {
    std::string s;
    for (int i : order) s += (s.empty() ? "" : ",") + mat.name(i);
    return s;
}

BallotMatrix load(const char* file) {
    auto e = io::parse_election(std::string(TEST_DATA_DIR) + "/" + file);
    return e.matrix;
}

}  // namespace

TEST_CASE("squared load vector") {
    std::vector<std::int64_t> ones2(2, 1);
    CHECK(omega_sq({}, ones2, 2) == LoadVector(2, Rational(0)));

    // single row (1, 1/2): |x| = 3/2, contributions (2/3, 1/6)
    CandidateRow row = {Rational(1), make_rational(1, 2)};
    auto w = omega_sq({row}, ones2, 2);
    CHECK(w == LoadVector{make_rational(2, 3), make_rational(1, 6)});

    // binary rows collapse to the plain load vector
    auto mat = harness::fixtures::two_group_spillover();
    std::vector<CandidateRow> elected = {mat.row(0), mat.row(4)};
    CHECK(omega_sq(elected, mat.weights(), mat.columns()) ==
          omega(elected, mat.weights(), mat.columns()));

    CHECK_THROWS_AS(omega_sq({CandidateRow{Rational(0)}}, std::vector<std::int64_t>{1}, 1),
                    precondition_error);
}

TEST_CASE("cubic reweighting") {
    std::vector<std::int64_t> one(1, 1);
    // y=(1/2), w=0: (1/2)^3 / (1/4) = 1/2
    CHECK(r2(CandidateRow{make_rational(1, 2)}, LoadVector{Rational(0)}, one) ==
          CandidateRow{make_rational(1, 2)});
    // zero coordinates stay zero whatever the load
    CHECK(r2(CandidateRow{Rational(0)}, LoadVector{Rational(5)}, one) ==
          CandidateRow{Rational(0)});

    // binary rows: r2 equals the linear reweighting
    auto mat = harness::fixtures::two_group_spillover();
    LoadVector load = omega({mat.row(0)}, mat.weights(), mat.columns());
    for (int i = 0; i < mat.candidates(); ++i)
        CHECK(r2(mat.row(i), load, mat.weights()) ==
              pointwise::r(mat.row(i), load, mat.weights()));
}

TEST_CASE("cubic delta reweighting") {
    std::vector<std::int64_t> one(1, 1);
    // y=(1), z=(1/2), w=(1): (1/2)*1/(2*1*1+1) = 1/6
    CHECK(r2_delta(CandidateRow{Rational(1)}, CandidateRow{make_rational(1, 2)},
                   LoadVector{Rational(1)}, one) == CandidateRow{make_rational(1, 6)});
    // dominated coordinates vanish
    CHECK(r2_delta(CandidateRow{make_rational(1, 2)}, CandidateRow{Rational(1)},
                   LoadVector{Rational(0)}, one) == CandidateRow{Rational(0)});

    auto mat = harness::fixtures::two_group_spillover();
    LoadVector load = omega({mat.row(0), mat.row(1)}, mat.weights(), mat.columns());
    for (int i = 0; i < 4; ++i)
        for (int k = 4; k < 8; ++k)
            CHECK(r2_delta(mat.row(i), mat.row(k), load, mat.weights()) ==
                  pointwise::r_delta(mat.row(i), mat.row(k), load, mat.weights()));
}

TEST_CASE("score orderings on the two score elections") {
    auto a = load("score_blocs_a.json");
    CHECK(name_order(a, run_score_reweight(a, {Reweighting::linear, false}).ordering) ==
          "B,E,D,A,C");
    CHECK(name_order(a, run_score_reweight(a, {Reweighting::linear, true}).ordering) ==
          "B,A,E,D,C");
    CHECK(name_order(a, run_score_reweight(a, {Reweighting::cubic, false}).ordering) ==
          "B,D,E,A,C");
    CHECK(name_order(a, run_score_reweight(a, {Reweighting::cubic, true}).ordering) ==
          "B,A,C,E,D");

    auto b = load("score_blocs_b.json");
    CHECK(name_order(b, run_score_reweight(b, {Reweighting::linear, false}).ordering) ==
          "D,A,C,B,E");
    CHECK(name_order(b, run_score_reweight(b, {Reweighting::linear, true}).ordering) ==
          "D,A,B,C,E");
    CHECK(name_order(b, run_score_reweight(b, {Reweighting::cubic, false}).ordering) ==
          "D,B,C,E,A");
    CHECK(name_order(b, run_score_reweight(b, {Reweighting::cubic, true}).ordering) ==
          "D,B,C,A,E");
}

TEST_CASE("binary matrices collapse to the per-entry binary methods") {
    auto rep = harness::check_binary_collapse(harness::kSeedBinaryCollapse, 20);
    INFO(rep.witness);
    CHECK(rep.pass);
}

TEST_CASE("first seat maximizes the total score") {
    harness::SplitMix64 rng(31);
    for (int t = 0; t < 25; ++t) {
        int m = 1 + static_cast<int>(rng.below(4));
        int n = 1 + static_cast<int>(rng.below(5));
        std::vector<CandidateRow> rows(m, CandidateRow(n));
        for (auto& row : rows)
            for (auto& e : row) e = Rational(static_cast<long long>(rng.below(3))) / 2;
        std::vector<std::string> names;
        for (int i = 0; i < m; ++i) names.push_back(std::to_string(i));
        BallotMatrix mat(names, rows, std::vector<std::int64_t>(n, 1));
        for (auto variant : {ScoreVariant{Reweighting::linear, false},
                             ScoreVariant{Reweighting::cubic, false}}) {
            int first = run_score_reweight(mat, variant).ordering[0];
            for (int i = 0; i < m; ++i)
                CHECK(l1_norm(mat.row(i), mat.weights()) <=
                      l1_norm(mat.row(first), mat.weights()));
        }
    }
}

TEST_CASE("reruns are bit-identical") {
    auto a = load("score_blocs_a.json");
    auto first = run_score_reweight(a, {Reweighting::cubic, true});
    auto second = run_score_reweight(a, {Reweighting::cubic, true});
    CHECK(first.ordering == second.ordering);
    REQUIRE(first.trace.seats.size() == second.trace.seats.size());
    for (std::size_t s = 0; s < first.trace.seats.size(); ++s) {
        const auto& x = first.trace.seats[s];
        const auto& y = second.trace.seats[s];
        REQUIRE(x.step1.size() == y.step1.size());
        for (std::size_t i = 0; i < x.step1.size(); ++i)
            CHECK(x.step1[i].value == y.step1[i].value);
    }
}
