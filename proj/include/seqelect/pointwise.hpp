#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqelect/ballot.hpp"
#include "seqelect/engine.hpp"

namespace seqelect::pointwise {

// r(y,w): per-entry reweighting y_k / (2 w_k |y| + 1).
inline CandidateRow r(const CandidateRow& y, const LoadVector& w,
                      const std::vector<std::int64_t>& weights) {
    Rational norm = l1_norm(y, weights);
    CandidateRow out(y.size(), Rational(0));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) out[j] = y[j] / (2 * w[j] * norm + 1);
    return out;
}

// r_delta(y,z,w): numerators max{y_k-z_k,0}, denominators use |y| (not the
// delta's own norm).
inline CandidateRow r_delta(const CandidateRow& y, const CandidateRow& z, const LoadVector& w,
                            const std::vector<std::int64_t>& weights) {
    if (y.size() != z.size()) throw precondition_error("r_delta on rows of unequal length");
    Rational norm = l1_norm(y, weights);
    CandidateRow out(y.size(), Rational(0));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] > z[j]) out[j] = (y[j] - z[j]) / (2 * w[j] * norm + 1);
    return out;
}

namespace detail {

enum class LoadKind { linear, squared };  // x/|x| vs x^2/|x| contributions
enum class RwKind { linear, cubic };      // eq-newrew vs the cubic variant

// Shared engine policy for the per-entry reweighting methods; the four score
// generalizations differ from the binary ones only in these two switches.
struct ReweightPolicy {
    const BallotMatrix& mat;
    LoadKind load_kind;
    RwKind rw_kind;
    std::vector<std::vector<int>> support;
    std::vector<Rational> norm;
    LoadVector load;

    ReweightPolicy(const BallotMatrix& m, LoadKind lk, RwKind rk)
        : mat(m), load_kind(lk), rw_kind(rk), load(m.columns(), Rational(0)) {
        support.resize(m.candidates());
        norm.resize(m.candidates());
        for (int i = 0; i < m.candidates(); ++i) {
            for (int j = 0; j < m.columns(); ++j)
                if (m.row(i)[j] != 0) support[i].push_back(j);
            norm[i] = l1_norm(m.row(i), m.weights());
        }
    }

    using Value = Rational;

    Rational coord(const Rational& num, const Rational& yj, const Rational& ynorm, int j) const {
        if (rw_kind == RwKind::linear) return num / (2 * load[j] * ynorm + 1);
        return num * yj * yj / (2 * load[j] * ynorm + yj * yj);
    }

    Value step1(int i) const {
        Rational s = 0;
        for (int j : support[i])
            s += coord(mat.row(i)[j], mat.row(i)[j], norm[i], j) * mat.weights()[j];
        return s;
    }

    Value pair_value(int i, int k) const {
        Rational s = 0;
        for (int j : support[i]) {
            const Rational& yj = mat.row(i)[j];
            const Rational& zj = mat.row(k)[j];
            if (yj > zj) s += coord(yj - zj, yj, norm[i], j) * mat.weights()[j];
        }
        return s;
    }

    bool better(const Value& a, const Value& b) const { return a > b; }
    bool equivalent(const Value& a, const Value& b) const { return a == b; }

    void elect(int i) {
        if (norm[i] == 0) return;
        for (int j : support[i]) {
            const Rational& x = mat.row(i)[j];
            load[j] += (load_kind == LoadKind::linear ? x : x * x) / norm[i];
        }
    }

    std::string render(const Value& v) const { return to_fraction_string(v); }
};

inline void require_approval(const BallotMatrix& mat, const char* who) {
    if (!mat.is_approval())
        throw precondition_error(std::string(who) + " requires an approval (0/1) matrix");
}

}  // namespace detail

// Greedy by |r(x, omega_L)|; ties by index.
inline RunResult run_pointwise(const BallotMatrix& mat, const RunOptions& opt = {}) {
    detail::require_approval(mat, "pointwise");
    detail::ReweightPolicy pol(mat, detail::LoadKind::linear, detail::RwKind::linear);
    return run_sequential(mat, pol, /*pareto=*/false, opt);
}

// Step 1 as above; step 2 improves via |r_delta| comparisons.
inline RunResult run_pareto_pointwise(const BallotMatrix& mat, const RunOptions& opt = {}) {
    detail::require_approval(mat, "pareto-pointwise");
    detail::ReweightPolicy pol(mat, detail::LoadKind::linear, detail::RwKind::linear);
    return run_sequential(mat, pol, /*pareto=*/true, opt);
}

}  // namespace seqelect::pointwise
