#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqelect/ballot.hpp"
#include "seqelect/partylist.hpp"
#include "seqelect/trace.hpp"

namespace seqelect::io {

using ordered_json = nlohmann::ordered_json;

struct ElectionFile {
    int version = 1;
    enum class Mode { ballots, partylist } mode = Mode::ballots;
    BallotMatrix matrix;        // ballots mode
    partylist::PartyTally tally;  // partylist mode
};

inline const char* mode_name(ElectionFile::Mode m) {
    return m == ElectionFile::Mode::ballots ? "ballots" : "partylist";
}

namespace detail {

inline Rational score_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw input_error(where + ": scores must be strings like \"1/2\" or integers "
                              "(decimals lose exactness)");
}

}  // namespace detail

inline ElectionFile election_from_json(const nlohmann::json& j) {
    ElectionFile out;
    if (!j.is_object()) throw input_error("election file must be a JSON object");
    if (j.value("format", "") != std::string("seqelect-election"))
        throw input_error("missing or wrong \"format\" (expected \"seqelect-election\")");
    out.version = j.value("version", 0);
    if (out.version != 1) throw input_error("unsupported election file version");

    std::string mode = j.value("mode", "");
    if (mode == "partylist") {
        out.mode = ElectionFile::Mode::partylist;
        if (!j.contains("seats") || !j["seats"].is_number_integer() || j["seats"].get<int>() <= 0)
            throw input_error("partylist mode needs a positive integer \"seats\"");
        out.tally.seats = j["seats"].get<int>();
        if (!j.contains("parties") || !j["parties"].is_array() || j["parties"].empty())
            throw input_error("partylist mode needs a non-empty \"parties\" array");
        for (const auto& p : j["parties"]) {
            std::string name = p.value("name", "");
            if (name.empty()) throw input_error("every party needs a name");
            for (const auto& existing : out.tally.names)
                if (existing == name) throw input_error("duplicate party name '" + name + "'");
            if (!p.contains("votes") || !p["votes"].is_number_integer() ||
                p["votes"].get<long long>() < 0)
                throw input_error("party '" + name + "' needs a non-negative integer vote count");
            out.tally.names.push_back(name);
            out.tally.votes.push_back(p["votes"].get<long long>());
        }
        return out;
    }
    if (mode != "ballots") throw input_error("\"mode\" must be \"ballots\" or \"partylist\"");

    out.mode = ElectionFile::Mode::ballots;
    if (!j.contains("candidates") || !j["candidates"].is_array() || j["candidates"].empty())
        throw input_error("ballots mode needs a non-empty \"candidates\" array");
    std::vector<std::string> names;
    for (const auto& c : j["candidates"]) {
        std::string name = c.get<std::string>();
        for (const auto& existing : names)
            if (existing == name) throw input_error("duplicate candidate name '" + name + "'");
        names.push_back(std::move(name));
    }
    const int m = static_cast<int>(names.size());

    if (!j.contains("voters") || !j["voters"].is_array() || j["voters"].empty())
        throw input_error("ballots mode needs a non-empty \"voters\" array");
    std::vector<CandidateRow> rows(m);
    std::vector<std::int64_t> weights;
    int voter_no = 0;
    for (const auto& v : j["voters"]) {
        ++voter_no;
        std::string where = "voter " + std::to_string(voter_no);
        std::int64_t weight = 1;
        if (v.contains("weight")) {
            if (!v["weight"].is_number_integer() || v["weight"].get<std::int64_t>() <= 0)
                throw input_error(where + ": weight must be a positive integer");
            weight = v["weight"].get<std::int64_t>();
        }
        if (!v.contains("scores") || !v["scores"].is_array() ||
            static_cast<int>(v["scores"].size()) != m)
            throw input_error(where + ": needs a \"scores\" array with one entry per candidate");
        for (int i = 0; i < m; ++i) {
            Rational score = detail::score_from_json(v["scores"][i], where);
            if (score < 0 || score > 1)
                throw input_error(where + ", candidate '" + names[i] + "': score " +
                                  to_fraction_string(score) + " outside [0,1]");
            rows[i].push_back(std::move(score));
        }
        weights.push_back(weight);
    }
    out.matrix = BallotMatrix(std::move(names), std::move(rows), std::move(weights));

    if (j.contains("phantom_candidates")) {
        for (const auto& p : j["phantom_candidates"]) {
            std::string name = p.get<std::string>();
            int idx = -1;
            for (int i = 0; i < out.matrix.candidates(); ++i)
                if (out.matrix.name(i) == name) idx = i;
            if (idx < 0) throw input_error("phantom candidate '" + name + "' is not a candidate");
            out.matrix.set_eligible(idx, false);
        }
    }
    return out;
}

// CSV convenience form: rows are candidates, the first column holds names,
// remaining columns one voter each. An optional leading "weights" row gives
// per-voter weights. '#' lines are comments.
inline ElectionFile election_from_csv(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::vector<int> line_numbers;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string trimmed = raw;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(raw);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cell.erase(0, cell.find_first_not_of(" \t"));
            cell.erase(cell.find_last_not_of(" \t") + 1);
            cells.push_back(cell);
        }
        lines.push_back(std::move(cells));
        line_numbers.push_back(lineno);
    }
    if (lines.empty()) throw input_error("csv: no data rows");

    std::size_t first_data = 0;
    std::vector<std::int64_t> weights;
    if (lines[0][0] == "weights") {
        for (std::size_t c = 1; c < lines[0].size(); ++c) {
            try {
                weights.push_back(std::stoll(lines[0][c]));
            } catch (...) {
                throw input_error("csv line " + std::to_string(line_numbers[0]) +
                                  ": bad weight '" + lines[0][c] + "'");
            }
            if (weights.back() <= 0)
                throw input_error("csv line " + std::to_string(line_numbers[0]) +
                                  ": weights must be positive");
        }
        first_data = 1;
    }
    if (first_data >= lines.size()) throw input_error("csv: no candidate rows");

    std::size_t columns = lines[first_data].size() - 1;
    if (columns == 0) throw input_error("csv: candidate rows need at least one voter column");
    if (weights.empty()) weights.assign(columns, 1);
    if (weights.size() != columns)
        throw input_error("csv: weights row has " + std::to_string(weights.size()) +
                          " entries for " + std::to_string(columns) + " voter columns");

    std::vector<std::string> names;
    std::vector<CandidateRow> rows;
    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const auto& cells = lines[r];
        std::string at = "csv line " + std::to_string(line_numbers[r]);
        if (cells.size() != columns + 1)
            throw input_error(at + ": expected " + std::to_string(columns + 1) + " cells, got " +
                              std::to_string(cells.size()));
        if (cells[0].empty()) throw input_error(at + ": empty candidate name");
        for (const auto& existing : names)
            if (existing == cells[0])
                throw input_error(at + ": duplicate candidate name '" + cells[0] + "'");
        names.push_back(cells[0]);
        CandidateRow row;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            Rational score;
            try {
                score = parse_rational(cells[c]);
            } catch (const input_error&) {
                throw input_error(at + ", column " + std::to_string(c + 1) + ": bad score '" +
                                  cells[c] + "'");
            }
            if (score < 0 || score > 1)
                throw input_error(at + ", column " + std::to_string(c + 1) +
                                  ": score outside [0,1]");
            row.push_back(std::move(score));
        }
        rows.push_back(std::move(row));
    }
    ElectionFile out;
    out.mode = ElectionFile::Mode::ballots;
    out.matrix = BallotMatrix(std::move(names), std::move(rows), std::move(weights));
    return out;
}

inline ElectionFile parse_election(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return election_from_csv(in);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
    return election_from_json(j);
}

// Canonical serialization; parse(serialize(x)) == x and the input digest is
// computed over these bytes.
inline ordered_json serialize_election(const ElectionFile& e) {
    ordered_json j;
    j["format"] = "seqelect-election";
    j["version"] = e.version;
    j["mode"] = mode_name(e.mode);
    if (e.mode == ElectionFile::Mode::partylist) {
        j["seats"] = e.tally.seats;
        auto parties = ordered_json::array();
        for (int i = 0; i < e.tally.parties(); ++i)
            parties.push_back({{"name", e.tally.names[i]}, {"votes", e.tally.votes[i]}});
        j["parties"] = std::move(parties);
        return j;
    }
    j["candidates"] = e.matrix.names();
    auto voters = ordered_json::array();
    for (int col = 0; col < e.matrix.columns(); ++col) {
        ordered_json v;
        v["weight"] = e.matrix.weights()[col];
        auto scores = ordered_json::array();
        for (int i = 0; i < e.matrix.candidates(); ++i)
            scores.push_back(to_fraction_string(e.matrix.row(i)[col]));
        v["scores"] = std::move(scores);
        voters.push_back(std::move(v));
    }
    j["voters"] = std::move(voters);
    auto phantoms = ordered_json::array();
    for (int i = 0; i < e.matrix.candidates(); ++i)
        if (!e.matrix.eligible(i)) phantoms.push_back(e.matrix.name(i));
    if (!phantoms.empty()) j["phantom_candidates"] = std::move(phantoms);
    return j;
}

inline std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string input_digest(const ElectionFile& e) {
    return fnv1a_digest(serialize_election(e).dump());
}

inline ordered_json trace_to_json(const ElectionTrace& trace,
                                  const std::vector<std::string>& names) {
    auto seats = ordered_json::array();
    for (const auto& rec : trace.seats) {
        ordered_json r;
        r["seat"] = rec.seat + 1;
        auto step1 = ordered_json::array();
        for (const auto& e : rec.step1)
            step1.push_back({{"candidate", names[e.candidate]}, {"value", e.value}});
        r["step1"] = std::move(step1);
        if (!rec.tie_set.empty()) {
            auto ties = ordered_json::array();
            for (int t : rec.tie_set) ties.push_back(names[t]);
            r["tie_set"] = std::move(ties);
            r["tie_break"] = rec.tie_break;
        }
        if (!rec.skipped.empty()) {
            auto sk = ordered_json::array();
            for (int s : rec.skipped) sk.push_back(names[s]);
            r["skipped"] = std::move(sk);
        }
        r["step1_winner"] = names[rec.step1_winner];
        if (!rec.comparisons.empty()) {
            auto comps = ordered_json::array();
            for (const auto& c : rec.comparisons) {
                ordered_json cj;
                cj["challenger"] = names[c.challenger];
                cj["challenger_over_winner"] = c.challenger_over_winner;
                cj["winner_over_challenger"] = c.winner_over_challenger;
                cj["improves"] = c.improves;
                if (c.degenerate) cj["degenerate"] = true;
                comps.push_back(std::move(cj));
            }
            r["comparisons"] = std::move(comps);
        }
        if (rec.improver >= 0) r["improver"] = names[rec.improver];
        r["elected"] = names[rec.elected];
        if (!rec.notes.empty()) r["notes"] = rec.notes;
        seats.push_back(std::move(r));
    }
    return seats;
}

}  // namespace seqelect::io
