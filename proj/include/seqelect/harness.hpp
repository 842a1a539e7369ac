#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqelect/approval.hpp"
#include "seqelect/ballot.hpp"
#include "seqelect/partylist.hpp"
#include "seqelect/pointwise.hpp"
#include "seqelect/score_geom.hpp"
#include "seqelect/score_reweight.hpp"

namespace seqelect::harness {

// Deterministic generator for seeded property runs; identical on every
// platform, unlike the standard distributions.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

struct PropertyReport {
    std::string property;
    std::string instance;
    bool pass = true;
    std::string witness;  // replayable description of the failing case
};

// Var(omega_L) = (1/n) * || omega_L - k*(1/n,...,1/n) ||^2, from the
// definition (k = number of elected rows, n = voter count).
inline Rational variance(const std::vector<CandidateRow>& elected,
                         const std::vector<std::int64_t>& weights, std::size_t columns) {
    for (const auto& x : elected)
        if (l1_norm(x, weights) == 0) throw precondition_error("variance of a zero-approval row");
    LoadVector w = omega(elected, weights, columns);
    Rational n = 0;
    for (auto wt : weights) n += wt;
    Rational mean = Rational(static_cast<std::int64_t>(elected.size())) / n;
    Rational acc = 0;
    for (std::size_t j = 0; j < columns; ++j) {
        Rational d = w[j] - mean;
        acc += d * d * weights[j];
    }
    return acc / n;
}

// Brute-force greedy variance minimizer. Written against the definition only;
// deliberately shares no selection machinery with the method modules.
inline std::vector<int> greedy_variance_oracle(const BallotMatrix& mat) {
    const int m = mat.candidates();
    for (int i = 0; i < m; ++i)
        if (l1_norm(mat.row(i), mat.weights()) == 0)
            throw precondition_error("variance oracle requires nonzero approval rows");
    std::vector<int> order;
    std::vector<char> used(m, 0);
    std::vector<CandidateRow> chosen;
    while (static_cast<int>(order.size()) < m) {
        int best = -1;
        Rational best_var;
        for (int i = 0; i < m; ++i) {
            if (used[i]) continue;
            chosen.push_back(mat.row(i));
            Rational v = variance(chosen, mat.weights(), mat.columns());
            chosen.pop_back();
            if (best < 0 || v < best_var) {
                best = i;
                best_var = v;
            }
        }
        used[best] = 1;
        order.push_back(best);
        chosen.push_back(mat.row(best));
    }
    return order;
}

// Every candidate of the oracle's per-step argmin set, for tie-set agreement
// checks against the quotient rule.
inline std::vector<int> variance_argmin_set(const BallotMatrix& mat,
                                            const std::vector<int>& prefix) {
    std::vector<char> used(mat.candidates(), 0);
    std::vector<CandidateRow> chosen;
    for (int i : prefix) {
        used[i] = 1;
        chosen.push_back(mat.row(i));
    }
    std::vector<int> argmin;
    Rational best;
    for (int i = 0; i < mat.candidates(); ++i) {
        if (used[i]) continue;
        chosen.push_back(mat.row(i));
        Rational v = variance(chosen, mat.weights(), mat.columns());
        chosen.pop_back();
        if (argmin.empty() || v < best) {
            argmin.assign(1, i);
            best = v;
        } else if (v == best) {
            argmin.push_back(i);
        }
    }
    return argmin;
}

struct ReductionMatrix {
    BallotMatrix matrix;
    std::vector<int> party_of;  // per candidate row
};

// The choose-one-party-list election as a block ballot matrix: each party
// contributes `clones` identical rows over its own voters. Expanded form uses
// one unit column per voter; the compact form one weighted column per party.
inline ReductionMatrix partylist_reduction(const partylist::PartyTally& tally, int clones,
                                           bool expand_columns = true) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> rows;
    std::vector<std::int64_t> weights;
    std::vector<int> party_of;

    int columns = [&] {
        std::int64_t c = 0;
        for (auto v : tally.votes) c += expand_columns ? v : (v > 0 ? 1 : 0);
        return static_cast<int>(c);
    }();

    int col = 0;
    for (int pi = 0; pi < tally.parties(); ++pi) {
        if (tally.votes[pi] <= 0) continue;
        int width = expand_columns ? static_cast<int>(tally.votes[pi]) : 1;
        for (int c = 0; c < clones; ++c) {
            std::vector<int> row(columns, 0);
            for (int j = 0; j < width; ++j) row[col + j] = 1;
            rows.push_back(std::move(row));
            names.push_back(tally.names[pi] + "#" + std::to_string(c + 1));
            party_of.push_back(pi);
        }
        for (int j = 0; j < width; ++j)
            weights.push_back(expand_columns ? 1 : tally.votes[pi]);
        col += width;
    }
    return {BallotMatrix::from_binary(std::move(names), rows, std::move(weights)),
            std::move(party_of)};
}

inline std::vector<int> per_party_seats(const ReductionMatrix& red,
                                        const std::vector<int>& ordering, int seats,
                                        int parties) {
    std::vector<int> count(parties, 0);
    for (int s = 0; s < seats && s < static_cast<int>(ordering.size()); ++s)
        ++count[red.party_of[ordering[s]]];
    return count;
}

using MethodRunner = std::function<RunResult(const BallotMatrix&)>;

// Minimal number of appended voters approving only `promote` after which it
// precedes `over` in the output; found by incremental search from zero.
inline int flip_threshold(const BallotMatrix& base, int promote, int over,
                          const MethodRunner& run, int limit = 100000) {
    auto precedes = [&](const std::vector<int>& order) {
        int pa = -1, pb = -1;
        for (int s = 0; s < static_cast<int>(order.size()); ++s) {
            if (order[s] == promote) pa = s;
            if (order[s] == over) pb = s;
        }
        return pa >= 0 && pb >= 0 && pa < pb;
    };
    for (int p = 0; p <= limit; ++p) {
        BallotMatrix mat = base;
        if (p > 0) {
            std::vector<Rational> col(base.candidates(), Rational(0));
            col[promote] = 1;
            mat.append_column(std::move(col), p);
        }
        if (precedes(run(mat).ordering)) return p;
    }
    throw internal_error("flip threshold not found within limit");
}

struct FlipWitness {
    int candidate = -1;
    int column = -1;
    int rank_before = -1;
    int rank_after = -1;
};

// Flips every zero entry to one, one at a time, and reports the flips that
// strictly worsen the flipped candidate's position.
inline std::vector<FlipWitness> monotonicity_probe(const BallotMatrix& mat,
                                                   const MethodRunner& run) {
    auto rank_of = [](const std::vector<int>& order, int c) {
        for (int s = 0; s < static_cast<int>(order.size()); ++s)
            if (order[s] == c) return s;
        return -1;
    };
    std::vector<FlipWitness> out;
    const auto base = run(mat).ordering;
    for (int i = 0; i < mat.candidates(); ++i)
        for (int j = 0; j < mat.columns(); ++j) {
            if (mat.row(i)[j] != 0) continue;
            BallotMatrix flipped = mat;
            CandidateRow row = mat.row(i);
            row[j] = 1;
            flipped.set_row(i, row);
            int before = rank_of(base, i);
            int after = rank_of(run(flipped).ordering, i);
            if (after > before) out.push_back({i, j, before, after});
        }
    return out;
}

namespace fixtures {

// Three overlapping voter blocs (20k approve A,B,C; 10k approve X,Y,Z;
// 2k approve A,B,X; k approve A,X,Y), optionally with extra voters who
// approve only C.
inline BallotMatrix overlapping_blocs(int k, int extra_c_voters = 0) {
    std::vector<std::vector<int>> rows = {
        {1, 0, 1, 1},  // A
        {1, 0, 1, 0},  // B
        {1, 0, 0, 0},  // C
        {0, 1, 1, 1},  // X
        {0, 1, 0, 1},  // Y
        {0, 1, 0, 0},  // Z
    };
    std::vector<std::int64_t> weights = {20LL * k, 10LL * k, 2LL * k, k};
    if (extra_c_voters > 0) {
        for (int i = 0; i < 6; ++i) rows[i].push_back(i == 2 ? 1 : 0);
        weights.push_back(extra_c_voters);
    }
    return BallotMatrix::from_binary({"A", "B", "C", "X", "Y", "Z"}, rows, std::move(weights));
}

// Two 8x12 voter groups where the second group's candidates partially spill
// into the first group's supporters.
inline BallotMatrix two_group_spillover() {
    std::vector<std::vector<int>> rows = {
        {1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1},
        {1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 0},
        {1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 0, 0},
        {1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0},
        {0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0},
        {0, 0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0},
        {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
    };
    return BallotMatrix::from_binary({"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"}, rows,
                                     std::vector<std::int64_t>(12, 1));
}

// The pair of 6x11 matrices witnessing non-monotonic behaviour of the
// per-entry reweighting methods when entry (candidate 1, voter 1) flips 0->1.
inline std::pair<BallotMatrix, BallotMatrix> nonmonotonicity_witnesses() {
    std::vector<std::vector<int>> first = {
        {0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1},
        {0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0},
        {0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 0},
        {0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0},
        {1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0},
        {1, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1},
    };
    std::vector<std::vector<int>> second = {
        {0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0},
        {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0},
        {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0},
        {1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1},
        {0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0},
        {1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 0},
    };
    std::vector<std::string> names = {"c1", "c2", "c3", "c4", "c5", "c6"};
    std::vector<std::int64_t> w(11, 1);
    return {BallotMatrix::from_binary(names, first, w),
            BallotMatrix::from_binary(names, second, w)};
}

// A chain of three candidates: k voters approve only A, one approves A and B,
// k-1 approve B and C.
inline BallotMatrix overlap_chain(int k) {
    std::vector<std::vector<int>> rows = {
        {1, 1, 0},
        {0, 1, 1},
        {0, 0, 1},
    };
    return BallotMatrix::from_binary({"A", "B", "C"}, rows, {k, 1, k - 1});
}

}  // namespace fixtures

}  // namespace seqelect::harness
