#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqelect/ballot.hpp"
#include "seqelect/engine.hpp"
#include "seqelect/pointwise.hpp"

namespace seqelect::score_reweight {

// omega_L = sum over elected rows of x^2/|x| (coordinate-wise squaring); the
// binary case collapses to the plain load vector.
inline LoadVector omega_sq(const std::vector<CandidateRow>& elected,
                           const std::vector<std::int64_t>& weights, std::size_t columns) {
    LoadVector w(columns, Rational(0));
    for (const auto& x : elected) {
        Rational norm = l1_norm(x, weights);
        if (norm == 0) throw precondition_error("omega_sq of a zero-score row");
        for (std::size_t j = 0; j < columns; ++j)
            if (x[j] != 0) w[j] += x[j] * x[j] / norm;
    }
    return w;
}

// Cubic reweighting y_k^3 / (2 w_k |y| + y_k^2), zero where y_k = 0.
inline CandidateRow r2(const CandidateRow& y, const LoadVector& w,
                       const std::vector<std::int64_t>& weights) {
    Rational norm = l1_norm(y, weights);
    CandidateRow out(y.size(), Rational(0));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) out[j] = y[j] * y[j] * y[j] / (2 * w[j] * norm + y[j] * y[j]);
    return out;
}

// (y_k - z_k) y_k^2 / (2 w_k |y| + y_k^2) where y_k > z_k, zero elsewhere.
inline CandidateRow r2_delta(const CandidateRow& y, const CandidateRow& z, const LoadVector& w,
                             const std::vector<std::int64_t>& weights) {
    if (y.size() != z.size()) throw precondition_error("r2_delta on rows of unequal length");
    Rational norm = l1_norm(y, weights);
    CandidateRow out(y.size(), Rational(0));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] > z[j]) out[j] = (y[j] - z[j]) * y[j] * y[j] / (2 * w[j] * norm + y[j] * y[j]);
    return out;
}

enum class Reweighting { linear, cubic };

struct ScoreVariant {
    Reweighting reweighting = Reweighting::linear;
    bool pareto = false;
};

// The four score generalizations: squared-load state with either the linear
// or the cubic per-entry reweighting, each in plain and improved form.
inline RunResult run_score_reweight(const BallotMatrix& mat, const ScoreVariant& variant,
                                    const RunOptions& opt = {}) {
    pointwise::detail::ReweightPolicy pol(
        mat, pointwise::detail::LoadKind::squared,
        variant.reweighting == Reweighting::linear ? pointwise::detail::RwKind::linear
                                                   : pointwise::detail::RwKind::cubic);
    return run_sequential(mat, pol, variant.pareto, opt);
}

}  // namespace seqelect::score_reweight
