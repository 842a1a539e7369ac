#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "seqelect/rational.hpp"

namespace seqelect {

using CandidateRow = std::vector<Rational>;
// One coordinate per stored voter column; a column of weight w stands for w
// identical voters sharing that coordinate.
using LoadVector = std::vector<Rational>;

// m candidates x n voter columns with entries in [0,1]. Row order is the
// tie-break order. Candidates flagged ineligible are placeholder rows that can
// trigger step-2 improvements but never take a seat.
class BallotMatrix {
  public:
    BallotMatrix() = default;
    BallotMatrix(std::vector<std::string> names, std::vector<CandidateRow> rows,
                 std::vector<std::int64_t> weights)
        : names_(std::move(names)), rows_(std::move(rows)), weights_(std::move(weights)) {
        if (rows_.size() != names_.size())
            throw input_error("candidate name count does not match row count");
        eligible_.assign(rows_.size(), true);
        validate();
    }

    static BallotMatrix from_binary(std::vector<std::string> names,
                                    const std::vector<std::vector<int>>& bits,
                                    std::vector<std::int64_t> weights) {
        std::vector<CandidateRow> rows;
        rows.reserve(bits.size());
        for (const auto& r : bits) {
            CandidateRow row;
            row.reserve(r.size());
            for (int b : r) row.emplace_back(b);
            rows.push_back(std::move(row));
        }
        return BallotMatrix(std::move(names), std::move(rows), std::move(weights));
    }

    int candidates() const { return static_cast<int>(rows_.size()); }
    int columns() const { return static_cast<int>(weights_.size()); }

    const CandidateRow& row(int i) const { return rows_[i]; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::int64_t>& weights() const { return weights_; }

    bool eligible(int i) const { return eligible_[i]; }
    void set_eligible(int i, bool v) { eligible_[i] = v; }
    int eligible_count() const {
        return static_cast<int>(std::count(eligible_.begin(), eligible_.end(), true));
    }

    // Total voter count n (weight-expanded).
    std::int64_t total_voters() const {
        return std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
    }

    bool is_approval() const {
        for (const auto& r : rows_)
            for (const auto& e : r)
                if (e != 0 && e != 1) return false;
        return true;
    }

    void append_candidate(std::string name, CandidateRow row, bool is_eligible = true) {
        if (static_cast<int>(row.size()) != columns())
            throw input_error("appended candidate has wrong column count");
        names_.push_back(std::move(name));
        rows_.push_back(std::move(row));
        eligible_.push_back(is_eligible);
        validate_row(rows_.back());
    }

    void append_column(std::vector<Rational> scores, std::int64_t weight) {
        if (static_cast<int>(scores.size()) != candidates())
            throw input_error("appended column has wrong candidate count");
        if (weight <= 0) throw input_error("voter weight must be positive");
        for (int i = 0; i < candidates(); ++i) {
            check_entry(scores[i]);
            rows_[i].push_back(std::move(scores[i]));
        }
        weights_.push_back(weight);
    }

    void set_row(int i, CandidateRow row) {
        if (static_cast<int>(row.size()) != columns())
            throw input_error("replacement row has wrong column count");
        validate_row(row);
        rows_[i] = std::move(row);
    }

    // Replaces each weighted column by that many unit columns.
    BallotMatrix expanded() const {
        std::vector<CandidateRow> rows(candidates());
        std::vector<std::int64_t> w;
        for (int j = 0; j < columns(); ++j)
            for (std::int64_t c = 0; c < weights_[j]; ++c) {
                for (int i = 0; i < candidates(); ++i) rows[i].push_back(rows_[i][j]);
                w.push_back(1);
            }
        BallotMatrix out(names_, std::move(rows), std::move(w));
        out.eligible_ = eligible_;
        return out;
    }

    // Reorders candidate rows; perm[k] is the original index placed at k.
    BallotMatrix permuted(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != candidates())
            throw input_error("permutation size mismatch");
        std::vector<std::string> names;
        std::vector<CandidateRow> rows;
        std::vector<bool> elig;
        for (int p : perm) {
            names.push_back(names_[p]);
            rows.push_back(rows_[p]);
            elig.push_back(eligible_[p]);
        }
        BallotMatrix out(std::move(names), std::move(rows), weights_);
        out.eligible_ = elig;
        return out;
    }

  private:
    static void check_entry(const Rational& e) {
        if (e < 0 || e > 1) throw input_error("ballot entry outside [0,1]");
    }
    static void validate_row(const CandidateRow& r) {
        for (const auto& e : r) check_entry(e);
    }
    void validate() const {
        for (const auto& r : rows_) {
            if (r.size() != weights_.size()) throw input_error("ragged ballot matrix");
            validate_row(r);
        }
        for (auto w : weights_)
            if (w <= 0) throw input_error("voter weight must be positive");
    }

    std::vector<std::string> names_;
    std::vector<CandidateRow> rows_;
    std::vector<std::int64_t> weights_;
    std::vector<bool> eligible_;
};

// |x| = sum of entries, weight-expanded.
inline Rational l1_norm(const CandidateRow& row, const std::vector<std::int64_t>& weights) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) s += row[j] * weights[j];
    return s;
}

// ||x||^2 = sum of squared entries, weight-expanded.
inline Rational l2_norm_sq(const CandidateRow& row, const std::vector<std::int64_t>& weights) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) s += row[j] * row[j] * weights[j];
    return s;
}

// Weight-aware scalar product of two per-column vectors.
inline Rational inner(const std::vector<Rational>& a, const std::vector<Rational>& b,
                      const std::vector<std::int64_t>& weights) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0 && b[j] != 0) s += a[j] * b[j] * weights[j];
    return s;
}

// delta(a,b) = coordinate-wise positive part of a-b: the voters supporting a
// strictly more than b.
inline CandidateRow delta(const CandidateRow& a, const CandidateRow& b) {
    if (a.size() != b.size()) throw precondition_error("delta on rows of unequal length");
    CandidateRow d(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] > b[j] ? a[j] - b[j] : Rational(0);
    return d;
}

// omega_S = sum over elected rows of x/|x|; the empty set gives the zero
// vector. Rows with |x|=0 have no defined normalization and are rejected.
inline LoadVector omega(const std::vector<CandidateRow>& elected,
                        const std::vector<std::int64_t>& weights, std::size_t columns) {
    LoadVector w(columns, Rational(0));
    for (const auto& x : elected) {
        Rational norm = l1_norm(x, weights);
        if (norm == 0) throw precondition_error("omega of a zero-approval row");
        for (std::size_t j = 0; j < columns; ++j)
            if (x[j] != 0) w[j] += x[j] / norm;
    }
    return w;
}

}  // namespace seqelect
