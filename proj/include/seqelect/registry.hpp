#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seqelect/approval.hpp"
#include "seqelect/election_io.hpp"
#include "seqelect/harness.hpp"
#include "seqelect/pointwise.hpp"
#include "seqelect/score_geom.hpp"
#include "seqelect/score_reweight.hpp"

namespace seqelect::io {

struct TabulateOptions {
    std::string method;  // ballots-mode method name; ignored for partylist
    std::optional<int> seats;
    bool trace = false;
    std::optional<int> convert;  // treat scores as N approval voters each
    bool phantoms = false;       // append one phantom voter per candidate
    std::string divisors;        // dhondt | sainte-lague | adams | hill | dean | ossipoff | custom:...
    std::string formulation = "quotients";  // partylist: quotients | divisor
    std::optional<std::uint64_t> tie_seed;
};

struct MethodInfo {
    std::string name;
    bool approval_only = false;
    std::function<RunResult(const BallotMatrix&, const TabulateOptions&, const RunOptions&)> run;
};

namespace registry_detail {

inline std::vector<Rational> parse_sequence(const std::string& spec) {
    std::vector<Rational> seq;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) seq.push_back(parse_rational(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (seq.empty()) throw input_error("empty custom divisor sequence");
    return seq;
}

inline approval::ApprovalVariant phragmen_variant(const std::string& divisors) {
    if (divisors.empty() || divisors == "sainte-lague") return approval::ApprovalVariant::sainte_lague();
    if (divisors == "dhondt") return approval::ApprovalVariant::dhondt();
    throw input_error("this method supports --divisors sainte-lague or dhondt, not '" + divisors +
                      "'");
}

inline approval::ThieleDivisors thiele_divisors(const std::string& divisors) {
    if (divisors.empty() || divisors == "sainte-lague") return approval::ThieleDivisors::sainte_lague();
    if (divisors == "dhondt") return approval::ThieleDivisors::dhondt();
    if (divisors.rfind("custom:", 0) == 0)
        return approval::ThieleDivisors::custom(parse_sequence(divisors.substr(7)));
    throw input_error("thiele supports --divisors sainte-lague, dhondt or custom:LIST, not '" +
                      divisors + "'");
}

}  // namespace registry_detail

inline const std::vector<MethodInfo>& method_registry() {
    using registry_detail::phragmen_variant;
    using registry_detail::thiele_divisors;
    static const std::vector<MethodInfo> methods = {
        {"phragmen-sl", true,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return approval::run_phragmen(m, approval::ApprovalVariant::sainte_lague(), r);
         }},
        {"phragmen-dhondt", true,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return approval::run_phragmen(m, approval::ApprovalVariant::dhondt(), r);
         }},
        {"thiele", true,
         [](const BallotMatrix& m, const TabulateOptions& o, const RunOptions& r) {
             return approval::run_thiele(m, thiele_divisors(o.divisors), r);
         }},
        {"pareto-phragmen", true,
         [](const BallotMatrix& m, const TabulateOptions& o, const RunOptions& r) {
             return approval::run_pareto_phragmen(m, phragmen_variant(o.divisors), r);
         }},
        {"pareto-thiele", true,
         [](const BallotMatrix& m, const TabulateOptions& o, const RunOptions& r) {
             return approval::run_pareto_thiele(m, thiele_divisors(o.divisors), r);
         }},
        {"pointwise", true,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return pointwise::run_pointwise(m, r);
         }},
        {"pareto-pointwise", true,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return pointwise::run_pareto_pointwise(m, r);
         }},
        {"geom", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_geom::run_geom(m, r);
         }},
        {"pareto-geom", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_geom::run_pareto_geom(m, r);
         }},
        {"score-linear", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_reweight::run_score_reweight(
                 m, {score_reweight::Reweighting::linear, false}, r);
         }},
        {"pareto-score-linear", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_reweight::run_score_reweight(
                 m, {score_reweight::Reweighting::linear, true}, r);
         }},
        {"score-cubic", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_reweight::run_score_reweight(
                 m, {score_reweight::Reweighting::cubic, false}, r);
         }},
        {"pareto-score-cubic", false,
         [](const BallotMatrix& m, const TabulateOptions&, const RunOptions& r) {
             return score_reweight::run_score_reweight(
                 m, {score_reweight::Reweighting::cubic, true}, r);
         }},
    };
    return methods;
}

inline std::string method_names_joined() {
    std::string s;
    for (const auto& m : method_registry()) s += (s.empty() ? "" : ", ") + m.name;
    return s;
}

inline const MethodInfo& find_method(const std::string& name) {
    for (const auto& m : method_registry())
        if (m.name == name) return m;
    throw input_error("unknown method '" + name + "'; valid: " + method_names_joined());
}

inline partylist::DivisorFamily divisor_family(const std::string& spec) {
    if (spec.empty() || spec == "sainte-lague") return partylist::DivisorFamily::sainte_lague();
    if (spec == "dhondt") return partylist::DivisorFamily::dhondt();
    if (spec == "adams") return partylist::DivisorFamily::adams();
    if (spec == "hill") return partylist::DivisorFamily::hill();
    if (spec == "dean") return partylist::DivisorFamily::dean();
    if (spec == "ossipoff") return partylist::DivisorFamily::ossipoff();
    if (spec.rfind("custom:", 0) == 0)
        return partylist::DivisorFamily::custom(registry_detail::parse_sequence(spec.substr(7)));
    throw input_error("unknown divisor family '" + spec + "'");
}

struct TabulateOutcome {
    ordered_json result;
    int exit_code = 0;
};

namespace registry_detail {

inline std::vector<int> seeded_permutation(int m, std::uint64_t seed) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    harness::SplitMix64 rng(seed);
    for (int i = m - 1; i > 0; --i)
        std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
    return perm;
}

inline TabulateOutcome tabulate_partylist(const ElectionFile& election,
                                          const TabulateOptions& opt) {
    partylist::PartyTally tally = election.tally;
    if (opt.seats) tally.seats = *opt.seats;
    auto family = divisor_family(opt.divisors);

    TabulateOutcome out;
    ordered_json& j = out.result;
    j["format"] = "seqelect-result";
    j["version"] = 1;
    j["mode"] = "partylist";
    j["method"] = "partylist-" + (opt.formulation.empty() ? "quotients" : opt.formulation);
    j["parameters"] = {{"divisors", partylist::family_name(family.kind)},
                       {"formulation", opt.formulation},
                       {"seats", tally.seats}};
    j["input_digest"] = input_digest(election);

    auto quotas = partylist::quota(tally);
    auto quota_arr = ordered_json::array();
    for (const auto& q : quotas) quota_arr.push_back(to_fraction_string(q));
    j["quota"] = std::move(quota_arr);

    auto emit_seats = [&](const std::vector<int>& seats) {
        auto arr = ordered_json::array();
        for (int i = 0; i < tally.parties(); ++i)
            arr.push_back({{"party", tally.names[i]},
                           {"votes", tally.votes[i]},
                           {"seats", seats[i]}});
        j["apportionment"] = std::move(arr);
    };

    if (opt.formulation == "divisor") {
        auto res = partylist::apportion_divisor(tally, family);
        if (!res.ok) {
            j["status"] = "no-valid-alpha";
            j["failure"] = res.failure;
            out.exit_code = 2;
            return out;
        }
        j["status"] = "ok";
        emit_seats(res.apportionment.seats);
        j["alpha_interval"] = {{"lo", res.alpha_lo.to_string()},
                               {"hi", res.alpha_hi.to_string()},
                               {"lo_approx", res.alpha_lo.to_double()},
                               {"hi_approx", res.alpha_hi.to_double()}};
        return out;
    }
    if (!opt.formulation.empty() && opt.formulation != "quotients")
        throw input_error("--formulation must be quotients or divisor");

    auto res = partylist::apportion_largest_quotients(tally, family);
    j["status"] = "ok";
    emit_seats(res.seats);
    if (opt.trace) {
        auto order = ordered_json::array();
        for (const auto& rec : res.order) {
            ordered_json r = {{"party", tally.names[rec.party]}, {"quotient", rec.quotient}};
            if (rec.margin >= 0) r["margin"] = rec.margin;
            order.push_back(std::move(r));
        }
        j["allocation_order"] = std::move(order);
    }
    return out;
}

}  // namespace registry_detail

inline TabulateOutcome tabulate(const ElectionFile& election, const TabulateOptions& opt) {
    if (election.mode == ElectionFile::Mode::partylist)
        return registry_detail::tabulate_partylist(election, opt);

    const MethodInfo& method = find_method(opt.method);
    BallotMatrix mat = election.matrix;
    if (opt.phantoms) mat = score_geom::add_phantoms(mat);
    if (opt.convert) mat = score_geom::convert_scores(mat, *opt.convert);
    if (method.approval_only && !mat.is_approval())
        throw precondition_error("method '" + method.name +
                                 "' needs approval ballots; convert scores with --convert N");

    std::vector<int> perm;
    if (opt.tie_seed) {
        perm = registry_detail::seeded_permutation(mat.candidates(), *opt.tie_seed);
        mat = mat.permuted(perm);
    }

    RunOptions run_opt;
    run_opt.max_seats = opt.seats;
    run_opt.with_trace = true;
    RunResult run = method.run(mat, opt, run_opt);

    TabulateOutcome out;
    ordered_json& j = out.result;
    j["format"] = "seqelect-result";
    j["version"] = 1;
    j["mode"] = "ballots";
    j["method"] = method.name;
    ordered_json params;
    params["divisors"] = opt.divisors.empty() ? "sainte-lague" : opt.divisors;
    params["convert"] = opt.convert ? ordered_json(*opt.convert) : ordered_json(nullptr);
    params["phantoms"] = opt.phantoms;
    params["tie_seed"] = opt.tie_seed ? ordered_json(*opt.tie_seed) : ordered_json(nullptr);
    params["seats"] = opt.seats ? ordered_json(*opt.seats) : ordered_json(nullptr);
    j["parameters"] = std::move(params);
    j["input_digest"] = input_digest(election);
    j["candidates"] = election.matrix.names();

    auto original_index = [&](int permuted) {
        return opt.tie_seed ? perm[permuted] : permuted;
    };
    auto ordering = ordered_json::array();
    for (std::size_t s = 0; s < run.ordering.size(); ++s) {
        int orig = original_index(run.ordering[s]);
        ordering.push_back({{"seat", s + 1},
                            {"index", orig},
                            {"name", election.matrix.name(orig)}});
    }
    j["ordering"] = std::move(ordering);
    if (opt.seats) {
        auto winners = ordered_json::array();
        for (int s = 0; s < *opt.seats && s < static_cast<int>(run.ordering.size()); ++s)
            winners.push_back(election.matrix.name(original_index(run.ordering[s])));
        j["winners"] = std::move(winners);
    }
    if (opt.tie_seed) j["tie_permutation"] = perm;
    if (opt.trace) j["trace"] = trace_to_json(run.trace, mat.names());
    return out;
}

}  // namespace seqelect::io
