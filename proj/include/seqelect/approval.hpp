#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqelect/ballot.hpp"
#include "seqelect/engine.hpp"

namespace seqelect::approval {

// Load-based quotient shape |x| / (mult*<w,x> + offset). Sainte-Lague uses
// 2<w,x>+1, D'Hondt <w,x>+1; custom positive pairs give further variants.
struct ApprovalVariant {
    Rational mult = 2;
    Rational offset = 1;

    static ApprovalVariant sainte_lague() { return {2, 1}; }
    static ApprovalVariant dhondt() { return {1, 1}; }
    static ApprovalVariant custom(Rational m, Rational o) {
        if (m <= 0 || o <= 0) throw input_error("approval divisor parameters must be positive");
        return {std::move(m), std::move(o)};
    }
};

// Divisor sequence for Thiele reweighting: voter weight 1/d(s) after s of the
// voter's approved candidates are seated. Only exact rational sequences are
// supported here. A custom list continues arithmetically with its last step.
struct ThieleDivisors {
    std::vector<Rational> prefix;  // d(0), d(1), ...
    Rational continuation_step = 2;
    std::string label = "sainte-lague";

    static ThieleDivisors sainte_lague() { return {{1, 3}, 2, "sainte-lague"}; }
    static ThieleDivisors dhondt() { return {{1, 2}, 1, "dhondt"}; }
    static ThieleDivisors custom(std::vector<Rational> seq) {
        if (seq.size() < 2) throw input_error("custom divisor sequence needs at least 2 entries");
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            if (seq[i] >= seq[i + 1]) throw input_error("divisor sequence must be strictly increasing");
        if (seq.front() <= 0) throw input_error("divisor sequence must be positive");
        Rational step = seq[seq.size() - 1] - seq[seq.size() - 2];
        return {std::move(seq), std::move(step), "custom"};
    }

    Rational at(int k) const {
        if (k < static_cast<int>(prefix.size())) return prefix[k];
        return prefix.back() + continuation_step * (k - static_cast<int>(prefix.size()) + 1);
    }
};

namespace detail {

inline void require_approval(const BallotMatrix& mat, const char* who) {
    if (!mat.is_approval())
        throw precondition_error(std::string(who) + " requires an approval (0/1) matrix");
}

// Binary rows as support index lists; all loops below skip non-supporters.
struct BinaryView {
    std::vector<std::vector<char>> approves;   // m x n
    std::vector<std::vector<int>> support;     // per candidate: columns with 1
    std::vector<Rational> norm;                // |x_i|

    explicit BinaryView(const BallotMatrix& mat) {
        const int m = mat.candidates(), n = mat.columns();
        approves.assign(m, std::vector<char>(n, 0));
        support.resize(m);
        norm.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j)
                if (mat.row(i)[j] != 0) {
                    approves[i][j] = 1;
                    support[i].push_back(j);
                }
            norm[i] = l1_norm(mat.row(i), mat.weights());
        }
    }
};

struct PhragmenPolicy {
    const BallotMatrix& mat;
    ApprovalVariant variant;
    BinaryView view;
    LoadVector load;

    PhragmenPolicy(const BallotMatrix& m, ApprovalVariant v)
        : mat(m), variant(std::move(v)), view(m), load(m.columns(), Rational(0)) {}

    using Value = Rational;

    Value quotient(const std::vector<int>& support, const Rational& norm) const {
        if (norm == 0) return 0;
        Rational dot = 0;
        for (int j : support)
            if (load[j] != 0) dot += load[j] * mat.weights()[j];
        return norm / (variant.mult * dot + variant.offset);
    }

    Value step1(int i) const { return quotient(view.support[i], view.norm[i]); }

    Value pair_value(int i, int k) const {
        // quotient of delta(x_i, x_k): supporters of i that do not support k
        Rational size = 0, dot = 0;
        for (int j : view.support[i])
            if (!view.approves[k][j]) {
                size += mat.weights()[j];
                if (load[j] != 0) dot += load[j] * mat.weights()[j];
            }
        if (size == 0) return 0;
        return size / (variant.mult * dot + variant.offset);
    }

    bool better(const Value& a, const Value& b) const { return a > b; }
    bool equivalent(const Value& a, const Value& b) const { return a == b; }

    void elect(int i) {
        if (view.norm[i] == 0) return;  // zero-approval rows carry no load
        for (int j : view.support[i]) load[j] += 1 / view.norm[i];
    }

    std::string render(const Value& v) const { return to_fraction_string(v); }
};

struct ThielePolicy {
    const BallotMatrix& mat;
    ThieleDivisors divisors;
    BinaryView view;
    std::vector<int> approved_elected;   // per column
    std::vector<Rational> voter_weight;  // 1/d(approved_elected)

    ThielePolicy(const BallotMatrix& m, ThieleDivisors d)
        : mat(m), divisors(std::move(d)), view(m),
          approved_elected(m.columns(), 0),
          voter_weight(m.columns(), 1 / divisors.at(0)) {}

    using Value = Rational;

    Value step1(int i) const {
        Rational s = 0;
        for (int j : view.support[i]) s += voter_weight[j] * mat.weights()[j];
        return s;
    }

    // <delta(x_i,x_k), r(x_i)> with r the Thiele-reweighted row.
    Value pair_value(int i, int k) const {
        Rational s = 0;
        for (int j : view.support[i])
            if (!view.approves[k][j]) s += voter_weight[j] * mat.weights()[j];
        return s;
    }

    bool better(const Value& a, const Value& b) const { return a > b; }
    bool equivalent(const Value& a, const Value& b) const { return a == b; }

    void elect(int i) {
        for (int j : view.support[i]) {
            ++approved_elected[j];
            voter_weight[j] = 1 / divisors.at(approved_elected[j]);
        }
    }

    std::string render(const Value& v) const { return to_fraction_string(v); }
};

}  // namespace detail

// |x| / (mult*<w,x> + offset); zero-approval rows get 0.
inline Rational phragmen_quotient(const CandidateRow& x, const LoadVector& load,
                                  const std::vector<std::int64_t>& weights,
                                  const ApprovalVariant& variant = ApprovalVariant::sainte_lague()) {
    Rational norm = l1_norm(x, weights);
    if (norm == 0) return 0;
    return norm / (variant.mult * inner(load, x, weights) + variant.offset);
}

// Quotient of delta(x,y) against the load vector.
inline Rational difference_quotient(const CandidateRow& x, const CandidateRow& y,
                                    const LoadVector& load,
                                    const std::vector<std::int64_t>& weights,
                                    const ApprovalVariant& variant = ApprovalVariant::sainte_lague()) {
    return phragmen_quotient(delta(x, y), load, weights, variant);
}

inline RunResult run_phragmen(const BallotMatrix& mat,
                              const ApprovalVariant& variant = ApprovalVariant::sainte_lague(),
                              const RunOptions& opt = {}) {
    detail::require_approval(mat, "phragmen");
    detail::PhragmenPolicy pol(mat, variant);
    return run_sequential(mat, pol, /*pareto=*/false, opt);
}

inline RunResult run_pareto_phragmen(const BallotMatrix& mat,
                                     const ApprovalVariant& variant = ApprovalVariant::sainte_lague(),
                                     const RunOptions& opt = {}) {
    detail::require_approval(mat, "pareto-phragmen");
    detail::PhragmenPolicy pol(mat, variant);
    return run_sequential(mat, pol, /*pareto=*/true, opt);
}

inline RunResult run_thiele(const BallotMatrix& mat,
                            const ThieleDivisors& divisors = ThieleDivisors::sainte_lague(),
                            const RunOptions& opt = {}) {
    detail::require_approval(mat, "thiele");
    detail::ThielePolicy pol(mat, divisors);
    return run_sequential(mat, pol, /*pareto=*/false, opt);
}

inline RunResult run_pareto_thiele(const BallotMatrix& mat,
                                   const ThieleDivisors& divisors = ThieleDivisors::sainte_lague(),
                                   const RunOptions& opt = {}) {
    detail::require_approval(mat, "pareto-thiele");
    detail::ThielePolicy pol(mat, divisors);
    return run_sequential(mat, pol, /*pareto=*/true, opt);
}

enum class ReweightMethod { thiele, phragmen };

// The reweighted ballot matrix after electing `elected`, Sainte-Lague shape:
// Thiele divides column j by 2s_j+1; Phragmen divides row i by 2<w,x_i>+1.
inline std::vector<std::vector<Rational>> reweight_view(const BallotMatrix& mat,
                                                        const std::vector<int>& elected,
                                                        ReweightMethod method) {
    detail::require_approval(mat, "reweight_view");
    const int m = mat.candidates(), n = mat.columns();
    std::vector<std::vector<Rational>> out(m, std::vector<Rational>(n, Rational(0)));
    if (method == ReweightMethod::thiele) {
        std::vector<int> seated(n, 0);
        for (int e : elected)
            for (int j = 0; j < n; ++j)
                if (mat.row(e)[j] != 0) ++seated[j];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (mat.row(i)[j] != 0) out[i][j] = mat.row(i)[j] / (2 * seated[j] + 1);
    } else {
        std::vector<CandidateRow> rows;
        for (int e : elected) rows.push_back(mat.row(e));
        LoadVector load = omega(rows, mat.weights(), mat.columns());
        for (int i = 0; i < m; ++i) {
            Rational denom = 2 * inner(load, mat.row(i), mat.weights()) + 1;
            for (int j = 0; j < n; ++j)
                if (mat.row(i)[j] != 0) out[i][j] = mat.row(i)[j] / denom;
        }
    }
    return out;
}

}  // namespace seqelect::approval
