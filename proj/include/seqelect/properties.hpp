#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "seqelect/harness.hpp"

namespace seqelect::harness {

// Fixed manifest seeds; every random property run is replayable from these.
inline constexpr std::uint64_t kSeedVarianceOracle = 0x5eed0001;
inline constexpr std::uint64_t kSeedReductions = 0x5eed0002;
inline constexpr std::uint64_t kSeedDivisorProps = 0x5eed0003;
inline constexpr std::uint64_t kSeedBinaryCollapse = 0x5eed0004;
inline constexpr std::uint64_t kSeedCloneConsistency = 0x5eed0005;

namespace manifest_detail {

inline BallotMatrix random_binary_matrix(SplitMix64& rng, int max_m, int max_n) {
    int m = 1 + static_cast<int>(rng.below(max_m));
    int n = 1 + static_cast<int>(rng.below(max_n));
    std::vector<std::vector<int>> rows(m, std::vector<int>(n, 0));
    for (auto& row : rows) {
        bool nonzero = false;
        while (!nonzero) {
            for (auto& b : row) {
                b = static_cast<int>(rng.below(2));
                nonzero = nonzero || b;
            }
        }
    }
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("c" + std::to_string(i + 1));
    return BallotMatrix::from_binary(std::move(names), rows, std::vector<std::int64_t>(n, 1));
}

inline std::string show_matrix(const BallotMatrix& mat) {
    std::ostringstream os;
    for (int i = 0; i < mat.candidates(); ++i) {
        os << (i ? ";" : "");
        for (int j = 0; j < mat.columns(); ++j) os << to_fraction_string(mat.row(i)[j]);
    }
    return os.str();
}

inline std::string show_orders(const std::vector<int>& a, const std::vector<int>& b) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "] vs [";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "]";
    return os.str();
}

inline partylist::PartyTally random_tally(SplitMix64& rng, int max_parties, int max_seats,
                                          bool distinct_votes) {
    int p = 2 + static_cast<int>(rng.below(max_parties - 1));
    partylist::PartyTally tally;
    for (int i = 0; i < p; ++i) {
        std::int64_t v;
        do {
            v = 10 + static_cast<std::int64_t>(rng.below(390));
        } while (distinct_votes &&
                 std::find(tally.votes.begin(), tally.votes.end(), v) != tally.votes.end());
        tally.votes.push_back(v);
        tally.names.push_back("P" + std::to_string(i + 1));
    }
    // s >= p keeps every family feasible in the divisor formulation
    tally.seats = p + static_cast<int>(rng.below(max_seats - p + 1));
    return tally;
}

inline std::string show_tally(const partylist::PartyTally& t) {
    std::ostringstream os;
    os << "votes(";
    for (std::size_t i = 0; i < t.votes.size(); ++i) os << (i ? "," : "") << t.votes[i];
    os << ") seats " << t.seats;
    return os.str();
}

}  // namespace manifest_detail

// The quotient rule agrees with greedy variance minimization step by step,
// tie sets included (zero-approval rows are excluded by construction).
inline PropertyReport check_variance_oracle_agreement(std::uint64_t seed = kSeedVarianceOracle,
                                                      int trials = 200) {
    using namespace manifest_detail;
    SplitMix64 rng(seed);
    PropertyReport rep{"variance-oracle-agreement",
                       std::to_string(trials) + " random binary matrices (m<=6, n<=8), seed " +
                           std::to_string(seed),
                       true,
                       ""};
    for (int t = 0; t < trials; ++t) {
        BallotMatrix mat = random_binary_matrix(rng, 6, 8);
        auto method = approval::run_phragmen(mat);
        std::vector<int> prefix;
        for (int step = 0; step < mat.candidates(); ++step) {
            auto oracle_set = variance_argmin_set(mat, prefix);
            // method-side argmax set, recomputed from the quotient definition
            LoadVector load(mat.columns(), Rational(0));
            {
                std::vector<CandidateRow> rows;
                for (int i : prefix) rows.push_back(mat.row(i));
                load = omega(rows, mat.weights(), mat.columns());
            }
            std::vector<int> method_set;
            Rational best;
            for (int i = 0; i < mat.candidates(); ++i) {
                if (std::find(prefix.begin(), prefix.end(), i) != prefix.end()) continue;
                Rational q = approval::phragmen_quotient(mat.row(i), load, mat.weights());
                if (method_set.empty() || q > best) {
                    method_set.assign(1, i);
                    best = q;
                } else if (q == best) {
                    method_set.push_back(i);
                }
            }
            bool same_sets = oracle_set == method_set;
            bool same_pick = !method_set.empty() && method.ordering[step] == method_set.front();
            if (!same_sets || !same_pick) {
                rep.pass = false;
                rep.witness = "trial " + std::to_string(t) + " step " + std::to_string(step) +
                              " matrix " + show_matrix(mat);
                return rep;
            }
            prefix.push_back(method.ordering[step]);
        }
    }
    return rep;
}

// Party-block reductions land on the classical apportionments, and the two
// divisor-method formulations agree, for every generated tally.
inline PropertyReport check_partylist_reductions(std::uint64_t seed = kSeedReductions,
                                                 int trials = 100) {
    using namespace manifest_detail;
    SplitMix64 rng(seed);
    PropertyReport rep{"partylist-reductions",
                       std::to_string(trials) +
                           " random tallies (<=6 parties, <=20 seats, distinct votes), seed " +
                           std::to_string(seed),
                       true,
                       ""};
    const std::vector<partylist::DivisorFamily> families = {
        partylist::DivisorFamily::adams(), partylist::DivisorFamily::dhondt(),
        partylist::DivisorFamily::sainte_lague(), partylist::DivisorFamily::hill(),
        partylist::DivisorFamily::dean()};

    int generated = 0;
    for (int t = 0; t < trials; ++t) {
        partylist::PartyTally tally;
        bool feasible = false;
        // discard tallies where some family has no valid alpha (possible when
        // two parties share a signpost ratio); Def. 2 is undefined there
        while (!feasible) {
            if (++generated > trials * 50) throw internal_error("tally generation stuck");
            tally = random_tally(rng, 6, 20, /*distinct_votes=*/true);
            feasible = true;
            for (const auto& fam : families)
                feasible = feasible && partylist::apportion_divisor(tally, fam).ok;
        }

        for (const auto& fam : families) {
            auto d1 = partylist::apportion_largest_quotients(tally, fam);
            auto d2 = partylist::apportion_divisor(tally, fam);
            if (!d2.ok || d1.seats != d2.apportionment.seats) {
                rep.pass = false;
                rep.witness = "def1 vs def2 (" + partylist::family_name(fam.kind) + ") on " +
                              show_tally(tally);
                return rep;
            }
        }

        auto sl = partylist::apportion_largest_quotients(tally, partylist::DivisorFamily::sainte_lague());
        auto dh = partylist::apportion_largest_quotients(tally, partylist::DivisorFamily::dhondt());
        auto red = partylist_reduction(tally, tally.seats, /*expand_columns=*/false);
        RunOptions opt;
        opt.max_seats = tally.seats;
        opt.with_trace = false;

        auto check = [&](const char* label, const std::vector<int>& got,
                         const std::vector<int>& want) {
            if (got != want) {
                rep.pass = false;
                rep.witness = std::string(label) + " on " + show_tally(tally) + ": " +
                              show_orders(got, want);
            }
            return got == want;
        };
        auto counts = [&](const RunResult& r) {
            return per_party_seats(red, r.ordering, tally.seats, tally.parties());
        };
        if (!check("phragmen-sl", counts(approval::run_phragmen(
                                      red.matrix, approval::ApprovalVariant::sainte_lague(), opt)),
                   sl.seats))
            return rep;
        if (!check("phragmen-dhondt", counts(approval::run_phragmen(
                                          red.matrix, approval::ApprovalVariant::dhondt(), opt)),
                   dh.seats))
            return rep;
        if (!check("thiele-2s+1", counts(approval::run_thiele(
                                      red.matrix, approval::ThieleDivisors::sainte_lague(), opt)),
                   sl.seats))
            return rep;
        if (!check("pointwise", counts(pointwise::run_pointwise(red.matrix, opt)), sl.seats))
            return rep;
    }
    return rep;
}

// Flip thresholds on the overlapping-blocs instance match the closed forms
// floor(598k/443)+1 and floor(598k/1883)+1 for k = 1..5.
inline PropertyReport check_flip_thresholds() {
    PropertyReport rep{"flip-thresholds", "overlapping blocs, k in 1..5", true, ""};
    for (int k = 1; k <= 5; ++k) {
        BallotMatrix base = fixtures::overlapping_blocs(k);
        int got_ph = flip_threshold(base, 2, 1, [](const BallotMatrix& m) {
            return approval::run_pareto_phragmen(m);
        });
        int got_pw = flip_threshold(base, 2, 1, [](const BallotMatrix& m) {
            return pointwise::run_pareto_pointwise(m);
        });
        int want_ph = static_cast<int>(598LL * k / 443) + 1;
        int want_pw = static_cast<int>(598LL * k / 1883) + 1;
        if (got_ph != want_ph || got_pw != want_pw) {
            rep.pass = false;
            rep.witness = "k=" + std::to_string(k) + ": pareto-phragmen " +
                          std::to_string(got_ph) + " (want " + std::to_string(want_ph) +
                          "), pareto-pointwise " + std::to_string(got_pw) + " (want " +
                          std::to_string(want_pw) + ")";
            return rep;
        }
    }
    return rep;
}

// The mu identity suite: norm identity on all binary rows with n <= 10, the
// two sum identities (the second with t = 3k/(n+3k), which the concrete
// equal-bias pair pins down), and that pair itself.
inline PropertyReport check_mu_identities(double tol = 1e-9) {
    PropertyReport rep{"mu-identities", "exhaustive n <= 12 constructions", true, ""};
    auto fail = [&](const std::string& w) {
        rep.pass = false;
        rep.witness = w;
        return rep;
    };

    for (int n = 1; n <= 10; ++n) {
        std::vector<std::int64_t> w(n, 1);
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            CandidateRow x(n);
            int pop = 0;
            for (int j = 0; j < n; ++j) {
                x[j] = (mask >> j) & 1;
                pop += (mask >> j) & 1;
            }
            auto m = score_geom::mu(x, w);
            double got = 0;
            for (double v : m) got += v * v;
            double want = 1.0 / pop - 1.0 / n;
            if (std::fabs(got - want) > tol)
                return fail("norm identity at n=" + std::to_string(n) +
                            " mask=" + std::to_string(mask));
        }
    }

    for (int n = 3; n <= 12; ++n) {
        std::vector<std::int64_t> w(n, 1);
        for (int k = n / 2 + 1; k < n; ++k) {
            CandidateRow a(n, Rational(0)), b(n, Rational(1));
            for (int j = 0; j < k; ++j) {
                a[j] = 1;
                b[j] = Rational(2 * k - n) / k;
            }
            auto ma = score_geom::mu(a, w), mb = score_geom::mu(b, w);
            for (int j = 0; j < n; ++j)
                if (std::fabs(ma[j] + mb[j]) > tol)
                    return fail("opposite-pair identity at n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
        }
    }

    for (int n = 2; n <= 12; ++n) {
        std::vector<std::int64_t> w(n, 1);
        for (int k = 1; 2 * k <= n; ++k) {
            Rational t = Rational(3 * k) / (n + 3 * k);
            CandidateRow a(n, Rational(1)), b(n, Rational(0)), c(n, t), d(n, t);
            for (int j = 0; j < 2 * k; ++j) b[j] = 1;
            for (int j = 0; j < k; ++j) c[j] = 1;
            for (int j = k; j < 2 * k; ++j) d[j] = 1;
            auto ma = score_geom::mu(a, w), mb = score_geom::mu(b, w);
            auto mc = score_geom::mu(c, w), md = score_geom::mu(d, w);
            for (int j = 0; j < n; ++j)
                if (std::fabs(ma[j] + mb[j] - mc[j] - md[j]) > tol)
                    return fail("equal-sum identity at n=" + std::to_string(n) +
                                " k=" + std::to_string(k) + " t=" + to_fraction_string(t));
        }
    }

    {
        std::vector<std::int64_t> w(3, 1);
        auto p1 = score_geom::mu(CandidateRow{1, 1, 1}, w);
        auto p2 = score_geom::mu(CandidateRow{1, 1, 0}, w);
        auto q1 = score_geom::mu(CandidateRow{1, Rational(1) / 2, Rational(1) / 2}, w);
        auto q2 = score_geom::mu(CandidateRow{Rational(1) / 2, 1, Rational(1) / 2}, w);
        for (int j = 0; j < 3; ++j)
            if (std::fabs(p1[j] + p2[j] - q1[j] - q2[j]) > tol)
                return fail("equal-bias pair");
    }
    return rep;
}

// Seat monotonicity, D'Hondt lower quota, and perturbed-pair vote
// monotonicity on seeded random tallies.
inline PropertyReport check_divisor_properties(std::uint64_t seed = kSeedDivisorProps,
                                               int trials = 100) {
    using namespace manifest_detail;
    SplitMix64 rng(seed);
    PropertyReport rep{"divisor-properties",
                       std::to_string(trials) + " seeded tallies, seed " + std::to_string(seed),
                       true,
                       ""};
    const std::vector<partylist::DivisorFamily> families = {
        partylist::DivisorFamily::adams(), partylist::DivisorFamily::dhondt(),
        partylist::DivisorFamily::sainte_lague(), partylist::DivisorFamily::hill(),
        partylist::DivisorFamily::dean()};
    for (int t = 0; t < trials; ++t) {
        auto tally = random_tally(rng, 6, 20, /*distinct_votes=*/false);

        // seat monotonicity: s -> s + 1..3
        partylist::PartyTally more = tally;
        more.seats += 1 + static_cast<int>(rng.below(3));
        for (const auto& fam : families)
            for (const auto& v : partylist::check_properties(tally, more, fam))
                if (v.property == "seat-monotonicity") {
                    rep.pass = false;
                    rep.witness = partylist::family_name(fam.kind) + " " + show_tally(tally) +
                                  " -> " + std::to_string(more.seats) + ": " + v.detail;
                    return rep;
                }

        // D'Hondt lower quota
        auto dh = partylist::apportion_largest_quotients(tally, partylist::DivisorFamily::dhondt());
        auto qs = partylist::quota(tally);
        for (int i = 0; i < tally.parties(); ++i) {
            Int floor_q = numerator(qs[i]) / denominator(qs[i]);
            if (dh.seats[i] < floor_q) {
                rep.pass = false;
                rep.witness = "dhondt lower quota on " + show_tally(tally);
                return rep;
            }
        }

        // vote monotonicity on a perturbed pair
        int i = static_cast<int>(rng.below(tally.parties()));
        int j = (i + 1 + static_cast<int>(rng.below(tally.parties() - 1))) % tally.parties();
        std::int64_t d = 1 + static_cast<std::int64_t>(rng.below(5));
        if (tally.votes[j] > d) {
            partylist::PartyTally moved = tally;
            moved.votes[i] += d;
            moved.votes[j] -= d;
            for (const auto& fam : families)
                for (const auto& v : partylist::check_properties(tally, moved, fam))
                    if (v.property == "vote-monotonicity") {
                        rep.pass = false;
                        rep.witness = partylist::family_name(fam.kind) + " " + show_tally(tally) +
                                      ": " + v.detail;
                        return rep;
                    }
        }
    }
    return rep;
}

// On binary matrices the four score generalizations coincide with the two
// per-entry binary methods: exhaustive over m <= 3, n <= 4, plus seeded
// larger instances.
inline PropertyReport check_binary_collapse(std::uint64_t seed = kSeedBinaryCollapse,
                                            int extra_trials = 100) {
    using namespace manifest_detail;
    PropertyReport rep{"binary-collapse",
                       "exhaustive m<=3 n<=4 plus " + std::to_string(extra_trials) +
                           " seeded (m<=5, n<=6), seed " + std::to_string(seed),
                       true,
                       ""};
    auto agree = [&](const BallotMatrix& mat) {
        auto nw = pointwise::run_pointwise(mat).ordering;
        auto nw2 = pointwise::run_pareto_pointwise(mat).ordering;
        using score_reweight::Reweighting;
        using score_reweight::run_score_reweight;
        bool ok =
            nw == run_score_reweight(mat, {Reweighting::linear, false}).ordering &&
            nw2 == run_score_reweight(mat, {Reweighting::linear, true}).ordering &&
            nw == run_score_reweight(mat, {Reweighting::cubic, false}).ordering &&
            nw2 == run_score_reweight(mat, {Reweighting::cubic, true}).ordering;
        if (!ok) {
            rep.pass = false;
            rep.witness = "matrix " + show_matrix(mat);
        }
        return ok;
    };

    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 4; ++n) {
            std::vector<std::string> names;
            for (int i = 0; i < m; ++i) names.push_back("c" + std::to_string(i + 1));
            for (std::uint64_t mask = 0; mask < (1ull << (m * n)); ++mask) {
                std::vector<std::vector<int>> rows(m, std::vector<int>(n));
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j) rows[i][j] = (mask >> (i * n + j)) & 1;
                if (!agree(BallotMatrix::from_binary(names, rows,
                                                     std::vector<std::int64_t>(n, 1))))
                    return rep;
            }
        }

    SplitMix64 rng(seed);
    for (int t = 0; t < extra_trials; ++t)
        if (!agree(random_binary_matrix(rng, 5, 6))) return rep;
    return rep;
}

// Both witness matrices show a rank drop for candidate 1 when its first vote
// flips 0 -> 1, under at least one of the two per-entry methods.
inline PropertyReport check_nonmonotonicity_witnesses(std::string* mapping_out = nullptr) {
    PropertyReport rep{"nonmonotonicity-witnesses", "two fixed 6x11 matrices", true, ""};
    auto [first, second] = fixtures::nonmonotonicity_witnesses();
    std::string mapping;
    int idx = 0;
    for (const auto* mat : {&first, &second}) {
        ++idx;
        bool any = false;
        for (const char* label : {"pointwise", "pareto-pointwise"}) {
            MethodRunner run = label == std::string("pointwise")
                                   ? MethodRunner([](const BallotMatrix& m) {
                                         return pointwise::run_pointwise(m);
                                     })
                                   : MethodRunner([](const BallotMatrix& m) {
                                         return pointwise::run_pareto_pointwise(m);
                                     });
            auto witnesses = monotonicity_probe(*mat, run);
            bool hit = false;
            for (const auto& w : witnesses) hit = hit || (w.candidate == 0 && w.column == 0);
            if (hit) {
                any = true;
                mapping += "matrix" + std::to_string(idx) + ":" + label + ";";
            }
        }
        if (!any) {
            rep.pass = false;
            rep.witness = "matrix " + std::to_string(idx) + " shows no rank drop at (1,1)";
            return rep;
        }
    }
    if (mapping_out) *mapping_out = mapping;
    rep.witness = mapping;
    return rep;
}

// Inserting an extra clone of a party never changes per-party seat counts on
// block matrices.
inline PropertyReport check_clone_consistency(std::uint64_t seed = kSeedCloneConsistency,
                                              int trials = 30) {
    using namespace manifest_detail;
    SplitMix64 rng(seed);
    PropertyReport rep{"clone-consistency",
                       std::to_string(trials) + " block matrices, seed " + std::to_string(seed),
                       true,
                       ""};
    for (int t = 0; t < trials; ++t) {
        auto tally = random_tally(rng, 4, 8, /*distinct_votes=*/true);
        auto red = partylist_reduction(tally, tally.seats, /*expand_columns=*/false);
        int extra_party = static_cast<int>(rng.below(tally.parties()));

        auto cloned = red;
        int proto = -1;
        for (int i = 0; i < cloned.matrix.candidates(); ++i)
            if (cloned.party_of[i] == extra_party) proto = i;
        cloned.matrix.append_candidate(tally.names[extra_party] + "#x",
                                       cloned.matrix.row(proto));
        cloned.party_of.push_back(extra_party);

        RunOptions opt;
        opt.max_seats = tally.seats;
        opt.with_trace = false;
        auto base_counts = per_party_seats(
            red, approval::run_phragmen(red.matrix, approval::ApprovalVariant::sainte_lague(), opt)
                     .ordering,
            tally.seats, tally.parties());
        auto clone_counts = per_party_seats(
            cloned,
            approval::run_phragmen(cloned.matrix, approval::ApprovalVariant::sainte_lague(), opt)
                .ordering,
            tally.seats, tally.parties());
        if (base_counts != clone_counts) {
            rep.pass = false;
            rep.witness = show_tally(tally) + " extra clone of party " + std::to_string(extra_party);
            return rep;
        }
    }
    return rep;
}

inline std::vector<PropertyReport> run_property_manifest() {
    return {
        check_variance_oracle_agreement(),
        check_partylist_reductions(),
        check_flip_thresholds(),
        check_mu_identities(),
        check_divisor_properties(),
        check_binary_collapse(),
        check_nonmonotonicity_witnesses(),
        check_clone_consistency(),
    };
}

}  // namespace seqelect::harness
