// tangle: command-line surface for the odd-n residual entanglement library.
//
// Subcommands:
//   compute  tau / tau-i / R of a state
//   permute  apply a qubit permutation given in cycle notation
//   apply    apply a chain of local 2x2 operators
//   expand   exact polynomial expansion of the invariant
//   verify   run the property-verification campaign
//
// States are read from a file path, or inline with a "ket:" prefix.
//
// Exit codes: 0 success; 1 failed verification check; 2 parse/config error;
// 3 invalid qubit count for an invariant (even or < 3); 4 qubit position out
// of range; 5 expansion size out of range.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oddtangle/invariants.hpp"
#include "oddtangle/io.hpp"
#include "oddtangle/symbolic.hpp"
#include "oddtangle/verify.hpp"

namespace {

using nlohmann::json;
using namespace oddtangle;

constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitBadN = 3;
constexpr int kExitBadPosition = 4;
constexpr int kExitExpandRange = 5;

struct StateInput {
    PureState state;
    bool json_source;  // permute/apply echo the input's format
};

std::string read_input_text(const std::string& arg) {
    if (arg.rfind("ket:", 0) == 0) return arg.substr(4);
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open input '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

StateInput load_state(const std::string& arg) {
    const std::string text = read_input_text(arg);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    const bool is_json = first != std::string::npos && text[first] == '{';
    return StateInput{parse_state(text), is_json};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

int require_odd_state(const PureState& state) {
    const int n = state.num_qubits();
    if (n < 3 || n % 2 == 0) {
        std::cerr << "error: invariants are defined for odd n >= 3 (state has n=" << n << ")\n";
        return kExitBadN;
    }
    return 0;
}

void print_state(const PureState& state, bool as_json) {
    if (as_json)
        std::cout << state_to_json(state).dump(2) << "\n";
    else
        std::cout << state_to_ket(state) << "\n";
}

int cmd_compute(const std::string& input, const std::string& measure, int i,
                const std::string& format) {
    const StateInput loaded = load_state(input);
    if (int rc = require_odd_state(loaded.state); rc != 0) return rc;
    const int n = loaded.state.num_qubits();

    InvariantValue value;
    if (measure == "tau") {
        value = tau(loaded.state);
    } else if (measure == "tau-i") {
        if (i < 1 || i > n) {
            std::cerr << "error: --i must be in 1.." << n << "\n";
            return kExitBadPosition;
        }
        value = tau_i(loaded.state, i);
    } else {
        value = big_r(loaded.state);
    }

    if (format == "json") {
        json out{{"measure", measure}, {"raw", value.raw},
                 {"normalized", value.normalized}, {"norm", value.norm}};
        if (measure == "tau-i") out["i"] = i;
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "measure,i,raw,normalized,norm\n"
                  << measure << "," << (measure == "tau-i" ? std::to_string(i) : "") << ","
                  << fmt(value.raw) << "," << fmt(value.normalized) << "," << fmt(value.norm)
                  << "\n";
    } else {
        std::cout << "measure      " << measure;
        if (measure == "tau-i") std::cout << " (i=" << i << ")";
        std::cout << "\nraw          " << fmt(value.raw) << "\nnormalized   "
                  << fmt(value.normalized) << "\nnorm         " << fmt(value.norm) << "\n";
    }
    return 0;
}

int cmd_permute(const std::string& input, const std::string& cycles, const std::string& format) {
    const StateInput loaded = load_state(input);
    const QubitPermutation perm = parse_cycles(cycles, loaded.state.num_qubits());
    const PureState moved = apply_qubit_permutation(loaded.state, perm);
    const bool as_json = format == "json" || (format.empty() && loaded.json_source);
    print_state(moved, as_json);
    return 0;
}

int cmd_apply(const std::string& input, const std::string& ops_path, const std::string& format) {
    const StateInput loaded = load_state(input);
    json doc;
    try {
        doc = json::parse(read_input_text(ops_path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad chain JSON: ") + e.what());
    }
    const LocalOperatorChain chain = chain_from_json(doc);
    if (chain.size() != loaded.state.num_qubits())
        throw ParseError("chain has " + std::to_string(chain.size()) + " operators but the state has " +
                         std::to_string(loaded.state.num_qubits()) + " qubits");
    const PureState moved = apply_local_operators(loaded.state, chain);
    const bool as_json = format == "json" || (format.empty() && loaded.json_source);
    print_state(moved, as_json);
    return 0;
}

int cmd_expand(int n, const std::string& cycles, bool check_forms, const std::string& output) {
    if (n % 2 == 0) {
        std::cerr << "error: the expansion is defined for odd n\n";
        return kExitBadN;
    }
    if (n < 3 || n > 9) {
        std::cerr << "error: exact expansion supports 3 <= n <= 9\n";
        return kExitExpandRange;
    }
    if (check_forms && n != 3) {
        std::cerr << "error: --check-forms applies to n=3\n";
        return kExitParse;
    }

    Polynomial poly = expand_tau_core(n);
    if (!cycles.empty()) poly = permute_polynomial(poly, parse_cycles(cycles, n));

    if (check_forms) {
        const auto forms = three_qubit_form_variants();
        const Polynomial& core = poly;
        const bool identical = poly_equal(forms[0], forms[1]) && poly_equal(forms[0], forms[2]) &&
                               poly_equal(forms[0], core);
        if (!identical) {
            std::cerr << "three-qubit forms: NOT identical\n";
            return kExitCheckFailed;
        }
        std::cout << "three-qubit forms: identical\n";
        if (!output.empty()) write_file(output, polynomial_to_json(poly).dump(2) + "\n");
        return 0;
    }

    const std::string text = polynomial_to_json(poly).dump(2) + "\n";
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
    return 0;
}

int cmd_verify(const VerificationConfig& cfg, const std::string& suite,
               const std::string& report_path, const std::string& csv_path,
               const std::string& format) {
    const VerificationReport report =
        suite == "anchors" ? run_anchor_campaign(cfg) : run_campaign(cfg);

    if (format == "json") {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else {
        for (const CheckRecord& c : report.checks) {
            std::printf("[%s] %-15s trials=%-7ld max_dev=%.3e tol=%.1e\n",
                        c.pass ? "PASS" : "FAIL", c.name.c_str(), c.trials_run, c.max_deviation,
                        c.tolerance);
        }
        std::printf("%s (%.1f ms)\n", report.all_pass() ? "all checks passed" : "CHECKS FAILED",
                    report.wall_time_ms);
    }
    if (!report_path.empty()) write_file(report_path, report_to_json(report).dump(2) + "\n");
    if (!csv_path.empty()) write_file(csv_path, report_to_csv(report));
    return report.all_pass() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd n-qubit residual entanglement toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format;
    std::uint64_t seed = 1;
    VerificationConfig cfg;
    app.add_option("--format", format, "output format: text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", seed, "master seed for all stochastic output");
    app.add_option("--tol-abs", cfg.tol_abs, "absolute tolerance for invariant equalities");
    app.add_option("--tol-rel", cfg.tol_rel, "relative tolerance for scaling laws");

    std::string input;
    std::string measure;
    int i_position = 1;
    auto* compute = app.add_subcommand("compute", "compute tau, tau-i, or R of a state");
    compute->add_option("input", input, "state file, or inline with a ket: prefix")->required();
    compute->add_option("--measure", measure, "tau | tau-i | R")
        ->required()
        ->check(CLI::IsMember({"tau", "tau-i", "R"}));
    compute->add_option("--i", i_position, "qubit position for tau-i");

    std::string cycles;
    auto* permute = app.add_subcommand("permute", "permute qubit positions of a state");
    permute->add_option("input", input, "state file, or inline with a ket: prefix")->required();
    permute->add_option("--cycles", cycles, "permutation in cycle notation, e.g. \"(1 5)\"")
        ->required();

    std::string ops_path;
    auto* apply = app.add_subcommand("apply", "apply a local operator chain to a state");
    apply->add_option("input", input, "state file, or inline with a ket: prefix")->required();
    apply->add_option("--ops", ops_path, "JSON file with one 2x2 matrix per qubit")->required();

    int expand_n = 3;
    bool check_forms = false;
    std::string output;
    auto* expand = app.add_subcommand("expand", "expand the invariant as an exact polynomial");
    expand->add_option("--n", expand_n, "qubit count (odd, 3..9)")->required();
    expand->add_option("--permutation", cycles, "permute amplitude indices first");
    expand->add_flag("--check-forms", check_forms,
                     "verify the three equivalent 3-qubit forms agree (n=3)");
    expand->add_option("--output", output, "write the polynomial JSON here instead of stdout");

    std::string suite = "all";
    std::string report_path;
    std::string csv_path;
    auto* verify = app.add_subcommand("verify", "run the verification campaign");
    verify->add_option("--suite", suite, "all | anchors")
        ->check(CLI::IsMember({"all", "anchors"}));
    verify->add_option("--trials", cfg.trials, "random states per check per n");
    verify
        ->add_option("--n", cfg.n_values, "odd qubit counts, e.g. --n 3,5")
        ->delimiter(',');
    verify->add_option("--monotone-tol", cfg.monotone_tol, "one-sided slack for the monotone test");
    verify->add_option("--perm-samples", cfg.perm_samples, "sampled permutations when n >= 7");
    verify->add_option("--report", report_path, "write the report JSON to this path");
    verify->add_option("--csv", csv_path, "write a one-row-per-check CSV summary to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }
    cfg.master_seed = seed;

    try {
        if (compute->parsed()) return cmd_compute(input, measure, i_position, format);
        if (permute->parsed()) return cmd_permute(input, cycles, format);
        if (apply->parsed()) return cmd_apply(input, ops_path, format);
        if (expand->parsed()) return cmd_expand(expand_n, cycles, check_forms, output);
        if (verify->parsed()) return cmd_verify(cfg, suite, report_path, csv_path, format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
