#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "seqelect/ballot.hpp"
#include "seqelect/engine.hpp"

namespace seqelect::score_geom {

inline constexpr double kTieTolerance = 1e-12;

using MuPoint = std::vector<double>;

inline std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// mu(x): the direction nu(x)-u rescaled so that ||mu(x)||^2 = 1/|x| - 1/n on
// binary rows; the all-ones row maps to the origin. Requires at least one
// coordinate equal to 1.
inline MuPoint mu(const CandidateRow& x, const std::vector<std::int64_t>& weights) {
    const std::size_t cols = x.size();
    double n = 0;
    for (auto w : weights) n += static_cast<double>(w);

    bool has_unit = false, all_ones = true;
    for (const auto& e : x) {
        if (e == 1) has_unit = true;
        else all_ones = false;
    }
    if (!has_unit) throw precondition_error("mu requires a coordinate equal to 1");
    if (all_ones) return MuPoint(cols, 0.0);

    Rational norm = l1_norm(x, weights);
    if (norm == 0) throw precondition_error("mu of a zero row");
    double norm_d = to_double(norm);

    MuPoint dir(cols);
    double len_sq = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        dir[j] = to_double(x[j]) / norm_d - 1.0 / n;
        len_sq += dir[j] * dir[j] * static_cast<double>(weights[j]);
    }
    double scale = std::sqrt(std::max(1.0 / norm_d - 1.0 / n, 0.0)) / std::sqrt(len_sq);
    for (auto& d : dir) d *= scale;
    return dir;
}

// Converts a score matrix with entries k/N into an approval matrix, turning
// each voter column into N adjacent columns of the same weight.
inline BallotMatrix convert_scores(const BallotMatrix& mat, int n_levels) {
    if (n_levels < 1) throw input_error("conversion level N must be >= 1");
    const int m = mat.candidates();
    std::vector<CandidateRow> rows(m);
    std::vector<std::int64_t> weights;
    for (int j = 0; j < mat.columns(); ++j) {
        std::vector<int> numerators(m);
        for (int i = 0; i < m; ++i) {
            Rational scaled = mat.row(i)[j] * n_levels;
            if (denominator(scaled) != 1)
                throw precondition_error("score " + to_fraction_string(mat.row(i)[j]) +
                                         " is not a multiple of 1/" + std::to_string(n_levels));
            numerators[i] = static_cast<int>(numerator(scaled).convert_to<long long>());
        }
        for (int t = 0; t < n_levels; ++t) {
            for (int i = 0; i < m; ++i) rows[i].emplace_back(t < numerators[i] ? 1 : 0);
            weights.push_back(mat.weights()[j]);
        }
    }
    BallotMatrix out(mat.names(), std::move(rows), std::move(weights));
    for (int i = 0; i < m; ++i) out.set_eligible(i, mat.eligible(i));
    return out;
}

// Appends one unit-weight voter per candidate scoring 1 for it and 0 for the
// others; guarantees every pairwise delta has a unit coordinate.
inline BallotMatrix add_phantoms(const BallotMatrix& mat) {
    BallotMatrix out = mat;
    for (int i = 0; i < mat.candidates(); ++i) {
        std::vector<Rational> column(mat.candidates(), Rational(0));
        column[i] = 1;
        out.append_column(std::move(column), 1);
    }
    return out;
}

namespace detail {

struct GeomPolicy {
    const BallotMatrix& mat;
    bool pareto;
    double tol = kTieTolerance;
    double total_voters;
    std::vector<MuPoint> mu_candidate;            // per candidate
    std::vector<std::vector<MuPoint>> mu_delta;   // pareto only: mu(delta(i,k))
    MuPoint psi;
    int seated = 0;

    GeomPolicy(const BallotMatrix& m, bool with_pareto) : mat(m), pareto(with_pareto) {
        total_voters = static_cast<double>(m.total_voters());
        psi.assign(m.columns(), 0.0);

        std::string bad;
        for (int i = 0; i < m.candidates(); ++i) {
            bool unit = false;
            for (const auto& e : m.row(i)) unit = unit || e == 1;
            if (!unit) bad += (bad.empty() ? "" : ", ") + m.name(i);
        }
        if (!bad.empty())
            throw precondition_error("candidates without a score of 1: " + bad +
                                     " (add phantom voters)");
        mu_candidate.reserve(m.candidates());
        for (int i = 0; i < m.candidates(); ++i) mu_candidate.push_back(mu(m.row(i), m.weights()));

        if (pareto) {
            std::string bad_pairs;
            mu_delta.assign(m.candidates(), {});
            for (int i = 0; i < m.candidates(); ++i) {
                mu_delta[i].resize(m.candidates());
                for (int k = 0; k < m.candidates(); ++k) {
                    if (i == k) continue;
                    CandidateRow d = delta(m.row(i), m.row(k));
                    bool unit = false;
                    for (const auto& e : d) unit = unit || e == 1;
                    if (!unit) {
                        bad_pairs += (bad_pairs.empty() ? "" : ", ") +
                                     ("delta(" + m.name(i) + "," + m.name(k) + ")");
                        continue;
                    }
                    mu_delta[i][k] = mu(d, m.weights());
                }
            }
            if (!bad_pairs.empty())
                throw precondition_error("pairs without a unit coordinate in delta: " + bad_pairs +
                                         " (add phantom voters)");
        }
    }

    using Value = double;

    double shifted_norm_sq(const MuPoint& v, double shift) const {
        double s = 0;
        for (std::size_t j = 0; j < psi.size(); ++j) {
            double c = psi[j] + v[j] + shift;
            s += c * c * static_cast<double>(mat.weights()[j]);
        }
        return s;
    }

    Value step1(int i) const { return shifted_norm_sq(mu_candidate[i], 0.0); }

    Value pair_value(int i, int k) const { return shifted_norm_sq(mu_delta[i][k], 0.0); }

    bool equivalent(double a, double b) const {
        return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
    }
    // Smaller squared norm is better.
    bool better(double a, double b) const { return a < b && !equivalent(a, b); }

    // Difference of reciprocal norm increments; a non-positive increment makes
    // the corresponding term +infinity.
    double improver_value(int y, int x, SeatRecord& rec) {
        const double u = 1.0 / total_voters;
        double base = 0;
        for (std::size_t j = 0; j < psi.size(); ++j) {
            double c = psi[j] + seated * u;
            base += c * c * static_cast<double>(mat.weights()[j]);
        }
        double d1 = shifted_norm_sq(mu_delta[y][x], (seated + 1) * u) - base;
        double d2 = shifted_norm_sq(mu_delta[x][y], (seated + 1) * u) - base;
        bool deg1 = d1 <= tol, deg2 = d2 <= tol;
        if (deg1 || deg2)
            rec.notes.push_back("degenerate improvement denominator for " + mat.name(y) +
                                " vs " + mat.name(x));
        if (deg1 && deg2) return 0.0;
        if (deg1) return std::numeric_limits<double>::infinity();
        if (deg2) return -std::numeric_limits<double>::infinity();
        return 1.0 / d1 - 1.0 / d2;
    }
    bool imp_better(double a, double b) const { return a > b && !(a == b); }
    bool imp_equivalent(double a, double b) const { return a == b; }

    void elect(int i) {
        for (std::size_t j = 0; j < psi.size(); ++j) psi[j] += mu_candidate[i][j];
        ++seated;
    }

    std::string render(double v) const { return render_double(v); }
};

}  // namespace detail

// Greedy minimization of ||psi_L + mu(x)||; ties within tolerance by index.
inline RunResult run_geom(const BallotMatrix& mat, const RunOptions& opt = {}) {
    detail::GeomPolicy pol(mat, false);
    return run_sequential(mat, pol, /*pareto=*/false, opt);
}

inline RunResult run_pareto_geom(const BallotMatrix& mat, const RunOptions& opt = {}) {
    detail::GeomPolicy pol(mat, true);
    return run_sequential(mat, pol, /*pareto=*/true, opt);
}

}  // namespace seqelect::score_geom
