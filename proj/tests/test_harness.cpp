#include <catch2/catch_amalgamated.hpp>

#include "seqelect/approval.hpp"
#include "seqelect/harness.hpp"
#include "seqelect/properties.hpp"

using namespace seqelect;
using namespace seqelect::harness;

TEST_CASE("variance") {
    std::vector<std::int64_t> ones2(2, 1);
    CHECK(variance({}, ones2, 2) == 0);

    // a single candidate approved by everyone spreads the load evenly
    CandidateRow all = {Rational(1), Rational(1)};
    CHECK(variance({all}, ones2, 2) == 0);

    // two clones over the first voter: omega=(2,0), mean 1, Var = 1
    CandidateRow first = {Rational(1), Rational(0)};
    CHECK(variance({first, first}, ones2, 2) == 1);

    CHECK_THROWS_AS(variance({CandidateRow{Rational(0), Rational(0)}}, ones2, 2),
                    precondition_error);
}

TEST_CASE("variance oracle on fixtures") {
    auto blocs = fixtures::overlapping_blocs(1);
    auto oracle = greedy_variance_oracle(blocs);
    std::string names;
    for (int i : oracle) names += (names.empty() ? "" : ",") + blocs.name(i);
    CHECK(names == "A,X,C,B,Y,Z");

    auto one = BallotMatrix::from_binary({"only"}, {{1, 0, 1}}, {1, 1, 1});
    CHECK(greedy_variance_oracle(one) == std::vector<int>{0});

    // per-party counts on a block matrix equal classical Sainte-Lague
    partylist::PartyTally tally;
    tally.names = {"P1", "P2", "P3"};
    tally.votes = {53, 24, 23};
    tally.seats = 7;
    auto red = partylist_reduction(tally, 7);
    auto counts = per_party_seats(red, greedy_variance_oracle(red.matrix), 7, 3);
    CHECK(counts == std::vector<int>{3, 2, 2});
}

TEST_CASE("oracle agreement with the quotient rule") {
    auto rep = check_variance_oracle_agreement(kSeedVarianceOracle, 60);
    INFO(rep.witness);
    CHECK(rep.pass);
}

TEST_CASE("party-list reduction construction") {
    partylist::PartyTally tally;
    tally.names = {"P1", "P2"};
    tally.votes = {3, 2};
    tally.seats = 2;
    auto red = partylist_reduction(tally, 2);
    CHECK(red.matrix.candidates() == 4);
    CHECK(red.matrix.columns() == 5);
    CHECK(red.party_of == std::vector<int>{0, 0, 1, 1});
    // block-diagonal: first party's clones approve exactly voters 0..2
    CHECK(red.matrix.row(0) == CandidateRow{1, 1, 1, 0, 0});
    CHECK(red.matrix.row(3) == CandidateRow{0, 0, 0, 1, 1});

    auto compact = partylist_reduction(tally, 2, /*expand_columns=*/false);
    CHECK(compact.matrix.columns() == 2);
    CHECK(compact.matrix.weights() == std::vector<std::int64_t>{3, 2});

    RunOptions opt;
    opt.max_seats = 2;
    auto counts = per_party_seats(
        red, approval::run_phragmen(red.matrix, approval::ApprovalVariant::sainte_lague(), opt)
                 .ordering,
        2, 2);
    CHECK(counts == std::vector<int>{1, 1});
}

TEST_CASE("flip thresholds for small scale factors") {
    for (int k : {1, 2}) {
        auto base = fixtures::overlapping_blocs(k);
        int ph = flip_threshold(base, 2, 1, [](const BallotMatrix& m) {
            return approval::run_pareto_phragmen(m);
        });
        CHECK(ph == 598 * k / 443 + 1);
        int pw = flip_threshold(base, 2, 1, [](const BallotMatrix& m) {
            return pointwise::run_pareto_pointwise(m);
        });
        CHECK(pw == 598 * k / 1883 + 1);
    }
}

TEST_CASE("monotonicity probe") {
    // On block instances an extra cross-party approval can demote the flipped
    // clone inside its party (its quotient gains a load term), but the
    // per-party seat counts stay put for every prefix.
    partylist::PartyTally tally;
    tally.names = {"P1", "P2"};
    tally.votes = {4, 3};
    tally.seats = 3;
    auto red = partylist_reduction(tally, 3);
    auto base = approval::run_phragmen(red.matrix).ordering;
    for (int i = 0; i < red.matrix.candidates(); ++i)
        for (int j = 0; j < red.matrix.columns(); ++j) {
            if (red.matrix.row(i)[j] != 0) continue;
            BallotMatrix flipped = red.matrix;
            CandidateRow row = red.matrix.row(i);
            row[j] = 1;
            flipped.set_row(i, row);
            auto after = approval::run_phragmen(flipped).ordering;
            for (int prefix = 1; prefix <= static_cast<int>(base.size()); ++prefix)
                CHECK(per_party_seats(red, base, prefix, 2) ==
                      per_party_seats(red, after, prefix, 2));
        }

    // the first witness matrix shows a drop at (candidate 1, voter 1)
    auto [first, second] = fixtures::nonmonotonicity_witnesses();
    auto hits = monotonicity_probe(
        first, [](const BallotMatrix& m) { return pointwise::run_pointwise(m); });
    bool found = false;
    for (const auto& w : hits) found = found || (w.candidate == 0 && w.column == 0);
    CHECK(found);
}

TEST_CASE("witness report and clone consistency") {
    std::string mapping;
    auto rep = check_nonmonotonicity_witnesses(&mapping);
    CHECK(rep.pass);
    CHECK(mapping == "matrix1:pointwise;matrix2:pointwise;matrix2:pareto-pointwise;");

    auto clones = check_clone_consistency(kSeedCloneConsistency, 10);
    INFO(clones.witness);
    CHECK(clones.pass);
}

TEST_CASE("reduction sweep stays exact") {
    auto rep = check_partylist_reductions(kSeedReductions, 15);
    INFO(rep.witness);
    CHECK(rep.pass);
}
