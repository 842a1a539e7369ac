#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "seqelect/rational.hpp"

namespace seqelect::partylist {

struct PartyTally {
    std::vector<std::string> names;
    std::vector<std::int64_t> votes;
    int seats = 0;

    std::int64_t total_votes() const {
        return std::accumulate(votes.begin(), votes.end(), std::int64_t{0});
    }
    int parties() const { return static_cast<int>(votes.size()); }
};

enum class DivisorKind { adams, dhondt, sainte_lague, hill, dean, ossipoff, custom };

// Signpost tau_k: the boundary at which a party's k-th seat becomes its
// (k+1)-th. `strict` means the seat is won only strictly past the boundary
// (Adams' integer signposts and the zero signposts of Hill/Dean).
struct Signpost {
    enum class Form { rational, sqrt, real };
    Form form = Form::rational;
    Rational value;  // rational value, or the radicand for Form::sqrt
    double approx = 0.0;
    bool strict = false;
};

struct DivisorFamily {
    DivisorKind kind = DivisorKind::sainte_lague;
    std::vector<Rational> custom_sequence;  // strictly increasing, positive

    static DivisorFamily adams() { return {DivisorKind::adams, {}}; }
    static DivisorFamily dhondt() { return {DivisorKind::dhondt, {}}; }
    static DivisorFamily sainte_lague() { return {DivisorKind::sainte_lague, {}}; }
    static DivisorFamily hill() { return {DivisorKind::hill, {}}; }
    static DivisorFamily dean() { return {DivisorKind::dean, {}}; }
    static DivisorFamily ossipoff() { return {DivisorKind::ossipoff, {}}; }
    static DivisorFamily custom(std::vector<Rational> seq) {
        if (seq.empty()) throw input_error("custom divisor sequence is empty");
        if (seq.front() <= 0) throw input_error("divisor sequence must be positive");
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            if (seq[i] >= seq[i + 1]) throw input_error("divisor sequence must be strictly increasing");
        return {DivisorKind::custom, std::move(seq)};
    }

    bool is_exact() const { return kind != DivisorKind::ossipoff; }

    Signpost signpost(int k) const {
        switch (kind) {
            case DivisorKind::adams:
                return {Signpost::Form::rational, Rational(k), static_cast<double>(k), true};
            case DivisorKind::dhondt:
                return {Signpost::Form::rational, Rational(k + 1), static_cast<double>(k + 1), false};
            case DivisorKind::sainte_lague:
                return {Signpost::Form::rational, Rational(2 * k + 1) / 2, k + 0.5, false};
            case DivisorKind::hill:
                return {Signpost::Form::sqrt, Rational(std::int64_t(k) * (k + 1)),
                        std::sqrt(double(k) * (k + 1)), k == 0};
            case DivisorKind::dean: {
                if (k == 0) return {Signpost::Form::rational, Rational(0), 0.0, true};
                Rational v = Rational(2 * std::int64_t(k) * (k + 1)) / (2 * k + 1);
                return {Signpost::Form::rational, v, to_double(v), false};
            }
            case DivisorKind::ossipoff: {
                double up = double(k + 1), down = double(k);
                double g = std::exp(up * std::log(up) - (k == 0 ? 0.0 : down * std::log(down)) - 1.0);
                return {Signpost::Form::real, Rational(0), g, false};
            }
            case DivisorKind::custom: {
                Rational v;
                int sz = static_cast<int>(custom_sequence.size());
                if (k < sz) {
                    v = custom_sequence[k];
                } else if (sz == 1) {
                    v = custom_sequence[0] + (k - sz + 1);  // lone entry continues by +1
                } else {
                    Rational step = custom_sequence[sz - 1] - custom_sequence[sz - 2];
                    v = custom_sequence[sz - 1] + step * (k - sz + 1);
                }
                return {Signpost::Form::rational, v, to_double(v), false};
            }
        }
        throw internal_error("unknown divisor family");
    }
};

inline std::string family_name(DivisorKind k) {
    switch (k) {
        case DivisorKind::adams: return "adams";
        case DivisorKind::dhondt: return "dhondt";
        case DivisorKind::sainte_lague: return "sainte-lague";
        case DivisorKind::hill: return "hill";
        case DivisorKind::dean: return "dean";
        case DivisorKind::ossipoff: return "ossipoff";
        case DivisorKind::custom: return "custom";
    }
    return "?";
}

// q_i = n_i * s / n, exactly.
inline std::vector<Rational> quota(const PartyTally& tally) {
    std::int64_t n = tally.total_votes();
    if (n <= 0) throw precondition_error("quota requires a positive vote total");
    std::vector<Rational> q;
    q.reserve(tally.votes.size());
    for (auto v : tally.votes) q.push_back(Rational(v) * tally.seats / n);
    return q;
}

struct AllocationRecord {
    int party = -1;
    std::string quotient;        // "inf" for a zero signpost
    double margin = -1.0;        // winning margin when decided in doubles (ossipoff)
};

struct Apportionment {
    std::vector<int> seats;
    std::vector<AllocationRecord> order;
};

namespace detail {

// Quotient n/tau comparable exactly through squares when tau is sqrt-formed.
struct QuotientKey {
    bool infinite = false;
    std::int64_t votes = 0;  // rank among infinite quotients
    bool exact = true;
    Rational sq;             // (n/tau)^2 when exact
    double approx = 0.0;
    std::string display;

    static QuotientKey make(std::int64_t n, const Signpost& sp) {
        QuotientKey k;
        k.votes = n;
        if (sp.form == Signpost::Form::real) {
            k.exact = false;
            if (sp.approx == 0.0) { k.infinite = true; k.display = "inf"; return k; }
            k.approx = double(n) / sp.approx;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.15g", k.approx);
            k.display = buf;
            return k;
        }
        if (sp.value == 0) { k.infinite = true; k.approx = 0; k.display = "inf"; return k; }
        if (sp.form == Signpost::Form::rational) {
            Rational q = Rational(n) / sp.value;
            k.sq = q * q;
            k.approx = to_double(q);
            k.display = to_fraction_string(q);
        } else {  // sqrt: tau^2 = radicand
            k.sq = Rational(n) * n / sp.value;
            k.approx = std::sqrt(to_double(k.sq));
            k.display = "(" + to_fraction_string(k.sq) + ")^(1/2)";
        }
        return k;
    }

    // -1 / 0 / +1 for this key vs other.
    int compare(const QuotientKey& o) const {
        if (infinite != o.infinite) return infinite ? 1 : -1;
        if (infinite) return votes < o.votes ? -1 : votes > o.votes ? 1 : 0;
        if (exact && o.exact) return sq < o.sq ? -1 : sq > o.sq ? 1 : 0;
        return approx < o.approx ? -1 : approx > o.approx ? 1 : 0;
    }

    std::string to_string() const { return display; }
};

}  // namespace detail

// Def. 1: repeatedly award the seat to the maximal n_i / f(s_i). Zero
// signposts give +infinity, ranked among themselves by votes descending;
// remaining ties break by party index.
inline Apportionment apportion_largest_quotients(const PartyTally& tally,
                                                 const DivisorFamily& family) {
    const int p = tally.parties();
    if (tally.seats <= 0) throw precondition_error("seat count must be positive");
    bool any_votes = std::any_of(tally.votes.begin(), tally.votes.end(),
                                 [](std::int64_t v) { return v > 0; });
    if (!any_votes) throw precondition_error("no party has any votes");

    Apportionment out;
    out.seats.assign(p, 0);
    for (int seat = 0; seat < tally.seats; ++seat) {
        int best = -1;
        detail::QuotientKey best_key;
        double runner_up = -1.0;
        for (int i = 0; i < p; ++i) {
            if (tally.votes[i] <= 0) continue;
            auto key = detail::QuotientKey::make(tally.votes[i], family.signpost(out.seats[i]));
            if (best < 0) {
                best = i;
                best_key = key;
                continue;
            }
            int c = key.compare(best_key);
            if (c > 0) {
                runner_up = best_key.approx;
                best = i;
                best_key = key;
            } else if (runner_up < key.approx) {
                runner_up = key.approx;
            }
        }
        AllocationRecord rec{best, best_key.to_string(), -1.0};
        if (!best_key.exact && runner_up >= 0) rec.margin = best_key.approx - runner_up;
        out.order.push_back(std::move(rec));
        ++out.seats[best];
    }
    return out;
}

// One end of the alpha interval; sqrt bounds carry alpha^2 exactly.
struct AlphaBound {
    enum class Form { rational, sqrt, real };
    Form form = Form::rational;
    Rational value;  // alpha, or alpha^2 for Form::sqrt
    double approx = 0.0;

    double to_double() const {
        return form == Form::sqrt ? std::sqrt(seqelect::to_double(value))
               : form == Form::rational ? seqelect::to_double(value)
                                        : approx;
    }
    std::string to_string() const {
        if (form == Form::rational) return to_fraction_string(value);
        if (form == Form::sqrt) return "(" + to_fraction_string(value) + ")^(1/2)";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g", approx);
        return buf;
    }
};

struct DivisorResult {
    bool ok = false;
    std::string failure;          // "NoValidAlpha: ..." when !ok
    Apportionment apportionment;  // allocation order is not defined by Def. 2
    AlphaBound alpha_lo, alpha_hi;  // maximal open interval (lo, hi)
};

// Def. 2: find alpha with sum r(alpha q_i) = s by walking the breakpoints
// alpha = tau_k / q_i in increasing order. Exact for all rational and sqrt
// signposts; Ossipoff walks in doubles.
inline DivisorResult apportion_divisor(const PartyTally& tally, const DivisorFamily& family) {
    const int p = tally.parties();
    if (tally.seats <= 0) throw precondition_error("seat count must be positive");
    if (tally.total_votes() <= 0) throw precondition_error("no party has any votes");
    const auto quotas = quota(tally);

    struct Break {
        AlphaBound bound;
        int party;
    };
    std::vector<Break> breaks;
    for (int i = 0; i < p; ++i) {
        if (quotas[i] <= 0) continue;
        for (int k = 0; k <= tally.seats; ++k) {
            Signpost sp = family.signpost(k);
            Break b;
            b.party = i;
            switch (sp.form) {
                case Signpost::Form::rational:
                    b.bound = {AlphaBound::Form::rational, sp.value / quotas[i], 0.0};
                    b.bound.approx = b.bound.to_double();
                    break;
                case Signpost::Form::sqrt:
                    b.bound = {AlphaBound::Form::sqrt, sp.value / (quotas[i] * quotas[i]), 0.0};
                    b.bound.approx = b.bound.to_double();
                    break;
                case Signpost::Form::real:
                    b.bound = {AlphaBound::Form::real, Rational(0),
                               sp.approx / seqelect::to_double(quotas[i])};
                    break;
            }
            breaks.push_back(std::move(b));
        }
    }

    // alpha^2 compares the same way as alpha (everything is non-negative)
    auto cmp = [](const AlphaBound& a, const AlphaBound& b) -> int {
        auto sq = [](const AlphaBound& x) -> std::optional<Rational> {
            if (x.form == AlphaBound::Form::rational) return x.value * x.value;
            if (x.form == AlphaBound::Form::sqrt) return x.value;
            return std::nullopt;
        };
        auto qa = sq(a), qb = sq(b);
        if (qa && qb) return *qa < *qb ? -1 : *qa > *qb ? 1 : 0;
        double da = a.to_double(), db = b.to_double();
        return da < db ? -1 : da > db ? 1 : 0;
    };
    std::stable_sort(breaks.begin(), breaks.end(),
                     [&](const Break& a, const Break& b) { return cmp(a.bound, b.bound) < 0; });

    DivisorResult res;
    res.apportionment.seats.assign(p, 0);
    int total = 0;
    for (std::size_t g = 0; g < breaks.size();) {
        std::size_t h = g + 1;
        while (h < breaks.size() && cmp(breaks[g].bound, breaks[h].bound) == 0) ++h;
        for (std::size_t t = g; t < h; ++t) ++res.apportionment.seats[breaks[t].party];
        total += static_cast<int>(h - g);
        if (total == tally.seats) {
            if (h >= breaks.size())
                throw internal_error("alpha region has no upper breakpoint");
            res.ok = true;
            res.alpha_lo = breaks[g].bound;
            res.alpha_hi = breaks[h].bound;
            return res;
        }
        if (total > tally.seats) {
            res.failure = "NoValidAlpha: seat total jumps from " +
                          std::to_string(total - int(h - g)) + " to " + std::to_string(total) +
                          " at alpha = " + breaks[g].bound.to_string();
            res.apportionment.seats.assign(p, 0);
            return res;
        }
        g = h;
    }
    throw internal_error("breakpoint walk exhausted below the seat count");
}

struct PropertyViolation {
    std::string property;
    std::string detail;
};

// Compares two tallies under one family (Def. 1) and reports any violation of
// seat monotonicity, vote monotonicity, or quota.
inline std::vector<PropertyViolation> check_properties(const PartyTally& before,
                                                       const PartyTally& after,
                                                       const DivisorFamily& family) {
    if (before.parties() != after.parties())
        throw precondition_error("check_properties requires matching party lists");
    std::vector<PropertyViolation> out;
    auto a = apportion_largest_quotients(before, family);
    auto b = apportion_largest_quotients(after, family);

    if (before.votes == after.votes && after.seats > before.seats) {
        for (int i = 0; i < before.parties(); ++i)
            if (b.seats[i] < a.seats[i])
                out.push_back({"seat-monotonicity",
                               before.names[i] + " fell from " + std::to_string(a.seats[i]) +
                                   " to " + std::to_string(b.seats[i]) + " seats"});
    }
    if (before.seats == after.seats) {
        for (int i = 0; i < before.parties(); ++i)
            for (int j = 0; j < before.parties(); ++j) {
                if (i == j) continue;
                if (after.votes[i] > before.votes[i] && after.votes[j] < before.votes[j] &&
                    b.seats[i] < a.seats[i] && b.seats[j] >= a.seats[j])
                    out.push_back({"vote-monotonicity",
                                   before.names[i] + " gained votes yet lost a seat while " +
                                       before.names[j] + " did not lose one"});
            }
    }
    auto check_quota = [&](const PartyTally& t, const Apportionment& app, const char* tag) {
        auto qs = quota(t);
        for (int i = 0; i < t.parties(); ++i) {
            Int floor_q = numerator(qs[i]) / denominator(qs[i]);
            Int ceil_q = floor_q + (denominator(qs[i]) == 1 ? 0 : 1);
            if (app.seats[i] < floor_q || app.seats[i] > ceil_q)
                out.push_back({std::string("quota-") + tag,
                               t.names[i] + " got " + std::to_string(app.seats[i]) +
                                   " seats for quota " + to_fraction_string(qs[i])});
        }
    };
    check_quota(before, a, "before");
    check_quota(after, b, "after");
    return out;
}

}  // namespace seqelect::partylist
