#pragma once

#include <optional>
#include <vector>

#include "seqelect/ballot.hpp"
#include "seqelect/trace.hpp"

namespace seqelect {

struct RunOptions {
    std::optional<int> max_seats;  // stop after this many seats (default: all eligible)
    bool with_trace = true;
};

// Shared skeleton of every sequential method. A policy provides the step-1
// criterion, the pairwise step-2 strength, and the state update:
//
//   Value step1(int i);                  criterion value of candidate i
//   Value pair_value(int i, int j);      strength of i over j (pareto only)
//   bool better(a, b);                   a strictly better than b
//   bool equivalent(a, b);               tie (exact or within tolerance)
//   void elect(int i);                   state update after seating i
//   std::string render(a);
//
// A policy may additionally define improver_value(y, x, SeatRecord&) with its
// own imp_better/imp_equivalent/render_imp when the improvement objective is
// not the plain difference of the two pair values.
//
// Tie rules: a step-1 tie under a pareto variant goes to the tied candidate
// that strictly beats all other tied candidates pairwise, else to the lowest
// index; non-pareto ties and improver ties go to the lowest index. Ineligible
// rows may win step 1 only to solicit an improvement; when none exists they
// are skipped for that seat.
template <class Policy>
RunResult run_sequential(const BallotMatrix& mat, Policy& pol, bool pareto,
                         const RunOptions& opt = {}) {
    const int m = mat.candidates();
    RunResult result;
    std::vector<char> elected(m, 0);

    int target = mat.eligible_count();
    if (opt.max_seats) target = std::min(target, std::max(0, *opt.max_seats));

    auto beats = [&](int a, int b) {
        return pol.better(pol.pair_value(a, b), pol.pair_value(b, a));
    };

    while (static_cast<int>(result.ordering.size()) < target) {
        SeatRecord rec;
        rec.seat = static_cast<int>(result.ordering.size());

        using Value = decltype(pol.step1(0));
        std::vector<std::optional<Value>> value(m);
        for (int i = 0; i < m; ++i) {
            if (elected[i]) continue;
            if (!pareto && !mat.eligible(i)) continue;
            value[i] = pol.step1(i);
            if (opt.with_trace) rec.step1.push_back({i, pol.render(*value[i])});
        }

        std::vector<char> skipped(m, 0);
        int chosen = -1;
        while (chosen < 0) {
            int best = -1;
            for (int i = 0; i < m; ++i) {
                if (!value[i] || skipped[i]) continue;
                if (best < 0 || pol.better(*value[i], *value[best])) best = i;
            }
            if (best < 0) throw internal_error("no candidate available for seat");

            std::vector<int> ties;
            for (int i = 0; i < m; ++i)
                if (value[i] && !skipped[i] && pol.equivalent(*value[i], *value[best]))
                    ties.push_back(i);

            int x = ties.front();
            if (ties.size() > 1) {
                rec.tie_set = ties;
                rec.tie_break = "index";
                if (pareto) {
                    for (int c : ties) {
                        bool beats_all = true;
                        for (int o : ties)
                            if (o != c && !beats(c, o)) {
                                beats_all = false;
                                break;
                            }
                        if (beats_all) {
                            x = c;
                            rec.tie_break = "pairwise";
                            break;
                        }
                    }
                }
            }
            rec.step1_winner = x;

            if (!pareto) {
                chosen = x;
                break;
            }

            // Step 2: collect candidates that strictly beat x and pick the
            // best improvement; otherwise keep x (or skip an ineligible x).
            std::vector<int> improvement_set;
            rec.comparisons.clear();
            for (int z = 0; z < m; ++z) {
                if (z == x || elected[z] || !mat.eligible(z)) continue;
                auto zx = pol.pair_value(z, x);
                auto xz = pol.pair_value(x, z);
                bool improves = pol.better(zx, xz);
                if (opt.with_trace)
                    rec.comparisons.push_back({z, pol.render(zx), pol.render(xz), improves, false});
                if (improves) improvement_set.push_back(z);
            }
            if (!improvement_set.empty()) {
                // Strict comparisons keep the lowest index on improver ties.
                int pick = -1;
                if constexpr (requires { pol.improver_value(0, 0, rec); }) {
                    using Imp = decltype(pol.improver_value(0, 0, rec));
                    std::optional<Imp> best_imp;
                    for (int y : improvement_set) {
                        Imp v = pol.improver_value(y, x, rec);
                        if (pick < 0 || pol.imp_better(v, *best_imp)) {
                            best_imp = v;
                            pick = y;
                        }
                    }
                } else {
                    std::optional<Value> best_imp;
                    for (int y : improvement_set) {
                        Value v = pol.pair_value(y, x) - pol.pair_value(x, y);
                        if (pick < 0 || pol.better(v, *best_imp)) {
                            best_imp = v;
                            pick = y;
                        }
                    }
                }
                rec.improver = pick;
                chosen = pick;
            } else if (mat.eligible(x)) {
                chosen = x;
            } else {
                skipped[x] = 1;
                rec.skipped.push_back(x);
            }
        }

        rec.elected = chosen;
        elected[chosen] = 1;
        result.ordering.push_back(chosen);
        pol.elect(chosen);
        if (opt.with_trace) result.trace.seats.push_back(std::move(rec));
    }
    return result;
}

}  // namespace seqelect
