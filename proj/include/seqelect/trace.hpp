#pragma once

#include <string>
#include <vector>

namespace seqelect {

// Per-seat audit record. Values are rendered exactly ("p/q") by the rational
// methods and as 15-significant-digit decimals by the mu-based methods.
struct Step1Entry {
    int candidate = -1;
    std::string value;
};

struct PairComparison {
    int challenger = -1;
    std::string challenger_over_winner;
    std::string winner_over_challenger;
    bool improves = false;
    bool degenerate = false;
};

struct SeatRecord {
    int seat = 0;
    std::vector<Step1Entry> step1;
    std::vector<int> tie_set;        // step-1 tie participants (when more than one)
    std::string tie_break;           // "pairwise" or "index" when a tie occurred
    std::vector<int> skipped;        // ineligible step-1 winners passed over
    int step1_winner = -1;
    std::vector<PairComparison> comparisons;
    int improver = -1;               // -1 when the step-1 winner was kept
    int elected = -1;
    std::vector<std::string> notes;
};

struct ElectionTrace {
    std::vector<SeatRecord> seats;
};

struct RunResult {
    std::vector<int> ordering;  // elected candidates, in seat order
    ElectionTrace trace;
};

}  // namespace seqelect
