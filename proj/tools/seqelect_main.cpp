// Command line front end: tabulation over election files plus the property
// verification manifest.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seqelect/properties.hpp"
#include "seqelect/registry.hpp"

namespace {

using namespace seqelect;

std::string render_table(const io::ordered_json& result) {
    std::ostringstream os;
    os << "method: " << result.value("method", "") << "\n";
    os << "input:  " << result.value("input_digest", "") << "\n";
    if (result.contains("apportionment")) {
        os << "party            votes   seats\n";
        for (const auto& row : result["apportionment"]) {
            char line[128];
            std::snprintf(line, sizeof line, "%-16s %6lld  %6d\n",
                          row["party"].get<std::string>().c_str(),
                          row["votes"].get<long long>(), row["seats"].get<int>());
            os << line;
        }
        if (result.contains("alpha_interval"))
            os << "alpha in (" << result["alpha_interval"]["lo"].get<std::string>() << ", "
               << result["alpha_interval"]["hi"].get<std::string>() << ")\n";
        return os.str();
    }
    if (result.contains("status") && result["status"] != "ok")
        os << "status: " << result["status"].get<std::string>() << "\n";
    if (result.contains("ordering")) {
        os << "seat  candidate\n";
        for (const auto& row : result["ordering"]) {
            char line[128];
            std::snprintf(line, sizeof line, "%4d  %s\n", row["seat"].get<int>(),
                          row["name"].get<std::string>().c_str());
            os << line;
        }
    }
    if (result.contains("winners")) {
        os << "winners:";
        for (const auto& w : result["winners"]) os << " " << w.get<std::string>();
        os << "\n";
    }
    return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + out_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Sequential proportional tabulation for approval and score elections"};
    app.require_subcommand(1);

    auto* tab = app.add_subcommand("tabulate", "Order candidates or apportion party seats");
    std::string input_path, out_path, output_format = "json", mode_check;
    io::TabulateOptions opt;
    std::optional<int> seats;
    std::optional<int> convert;
    std::optional<std::uint64_t> tie_seed;
    tab->add_option("input", input_path, "election file (.json or .csv)")->required();
    tab->add_option("--method", opt.method,
                    "ballots-mode method (" + io::method_names_joined() + ")");
    tab->add_option("--seats", seats, "number of seats to fill");
    tab->add_flag("--trace", opt.trace, "include the per-seat audit trace");
    tab->add_option("--convert", convert, "treat each score voter as N approval voters");
    tab->add_flag("--phantoms", opt.phantoms, "append one phantom voter per candidate");
    tab->add_option("--divisors", opt.divisors,
                    "dhondt | sainte-lague | adams | hill | dean | ossipoff | custom:LIST");
    tab->add_option("--formulation", opt.formulation,
                    "partylist formulation: quotients (default) or divisor");
    tab->add_option("--tie-seed", tie_seed, "seeded candidate permutation for tie-breaking");
    tab->add_option("--output", output_format, "json (default) or table");
    tab->add_option("--out", out_path, "write the result here instead of stdout");
    tab->add_option("--mode", mode_check, "assert the input file mode (ballots|partylist)");

    auto* verify = app.add_subcommand("verify", "Run the full property manifest");
    std::string verify_out;
    verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (tab->parsed()) {
        opt.seats = seats;
        opt.convert = convert;
        opt.tie_seed = tie_seed;
        io::ElectionFile election = io::parse_election(input_path);
        if (!mode_check.empty() && mode_check != io::mode_name(election.mode))
            throw input_error("input file is " + std::string(io::mode_name(election.mode)) +
                              " mode, not " + mode_check);
        if (election.mode == io::ElectionFile::Mode::ballots && opt.method.empty())
            throw input_error("ballots mode needs --method (" + io::method_names_joined() + ")");
        auto outcome = io::tabulate(election, opt);
        if (output_format == "table")
            write_output(render_table(outcome.result), out_path);
        else if (output_format == "json")
            write_output(outcome.result.dump(2), out_path);
        else
            throw input_error("--output must be json or table");
        return outcome.exit_code;
    }

    // verify
    auto reports = harness::run_property_manifest();
    io::ordered_json j = io::ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        io::ordered_json rj;
        rj["property"] = r.property;
        rj["instance"] = r.instance;
        rj["pass"] = r.pass;
        if (!r.witness.empty()) rj["witness"] = r.witness;
        j.push_back(std::move(rj));
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.property << "\n";
    }
    write_output(j.dump(2), verify_out);
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const seqelect::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const seqelect::precondition_error& e) {
        std::cerr << "method error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
