#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "oddtangle/io.hpp"

using namespace oddtangle;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("tangle_cli_test_" + std::to_string(getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err_path = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string command = std::string(TANGLE_CLI_PATH) + " " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

const std::string kExampleKet = "'ket:0.5|0> + 0.5|7> + 0.5|24> + 0.5|31>'";

}  // namespace

TEST_CASE("compute R on the product example") {
    const CliResult r = run_cli("compute " + kExampleKet + " --measure R --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("measure") == "R");
    CHECK(std::abs(doc.at("normalized").get<double>() - 0.6) <= 1e-12);
    CHECK(std::abs(doc.at("norm").get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("compute tau on the all-zero ket") {
    const CliResult r = run_cli("compute 'ket:n=5; 1|0>' --measure tau --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("normalized").get<double>() == 0.0);
}

TEST_CASE("compute tau-i at position 5 on the example") {
    const CliResult r = run_cli("compute " + kExampleKet + " --measure tau-i --i 5 --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("i") == 5);
    CHECK(std::abs(doc.at("normalized").get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("text output carries raw, normalized, and norm") {
    const CliResult r = run_cli("compute 'ket:1|0>+1|7>' --measure tau");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("raw") != std::string::npos);
    CHECK(r.out.find("normalized") != std::string::npos);
    CHECK(r.out.find("norm") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("compute 'ket:garbage' --measure tau").exit_code == 2);
    CHECK(run_cli("compute 'ket:1|15>' --measure tau").exit_code == 3);  // n = 4
    CHECK(run_cli("compute " + kExampleKet + " --measure tau-i --i 9").exit_code == 4);
    CHECK(run_cli("compute " + kExampleKet + " --measure tau --bogus-flag").exit_code == 2);
    CHECK(run_cli("permute " + kExampleKet + " --cycles '(1 5'").exit_code == 2);
    CHECK(run_cli("expand --n 4").exit_code == 3);
    CHECK(run_cli("expand --n 11").exit_code == 5);
    CHECK(run_cli("compute missing_file.json --measure tau").exit_code == 2);
}

TEST_CASE("permute emits the mapped state in the input format") {
    const CliResult r = run_cli("permute " + kExampleKet + " --cycles '(1 5)'");
    REQUIRE(r.exit_code == 0);
    const PureState moved = parse_state(r.out);
    CHECK(moved.amp(0) == cplx{0.5});
    CHECK(moved.amp(9) == cplx{0.5});
    CHECK(moved.amp(22) == cplx{0.5});
    CHECK(moved.amp(31) == cplx{0.5});

    const CliResult echo = run_cli("permute " + kExampleKet + " --cycles '()'");
    REQUIRE(echo.exit_code == 0);
    CHECK(max_abs_diff(parse_state(echo.out), parse_state("0.5|0>+0.5|7>+0.5|24>+0.5|31>")) == 0.0);

    // JSON in, JSON out
    const fs::path state_path = scratch_dir() / "state.json";
    {
        std::ofstream out(state_path);
        out << state_to_json(parse_state("n=5; 1|7>")).dump();
    }
    const CliResult j = run_cli("permute " + state_path.string() + " --cycles '(1 3)'");
    REQUIRE(j.exit_code == 0);
    const PureState mapped = parse_state(j.out);
    CHECK(j.out.find('{') != std::string::npos);
    CHECK(mapped.amp(19) == cplx{1.0});
}

TEST_CASE("apply runs an operator chain from a json file") {
    const fs::path chain_path = scratch_dir() / "chain.json";
    {
        json ops = json::array();
        // X on qubit 1, identities elsewhere
        ops.push_back(json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0}),
                                   json::array({1.0, 0.0}), json::array({0.0, 0.0})}));
        for (int k = 0; k < 2; ++k)
            ops.push_back(json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0}),
                                       json::array({0.0, 0.0}), json::array({1.0, 0.0})}));
        std::ofstream out(chain_path);
        out << json{{"ops", ops}}.dump();
    }
    const CliResult r = run_cli("apply 'ket:n=3; 1|0>' --ops " + chain_path.string());
    REQUIRE(r.exit_code == 0);
    CHECK(parse_state(r.out).amp(4) == cplx{1.0});

    CHECK(run_cli("apply 'ket:n=5; 1|0>' --ops " + chain_path.string()).exit_code == 2);
}

TEST_CASE("expand writes canonical polynomial json") {
    const CliResult r = run_cli("expand --n 3");
    REQUIRE(r.exit_code == 0);
    const Polynomial p = polynomial_from_json(json::parse(r.out));
    CHECK(p.monomials.size() == 12);
    CHECK(poly_equal(p, expand_tau_core(3)));

    const CliResult forms = run_cli("expand --n 3 --check-forms");
    REQUIRE(forms.exit_code == 0);
    CHECK(forms.out.find("identical") != std::string::npos);

    const CliResult plain = run_cli("expand --n 5");
    const CliResult permuted = run_cli("expand --n 5 --permutation '(1 2)'");
    REQUIRE(plain.exit_code == 0);
    REQUIRE(permuted.exit_code == 0);
    CHECK(plain.out != permuted.out);
    CHECK(!poly_equal(polynomial_from_json(json::parse(plain.out)),
                      polynomial_from_json(json::parse(permuted.out))));

    const fs::path out_path = scratch_dir() / "poly.json";
    const CliResult to_file = run_cli("expand --n 3 --output " + out_path.string());
    REQUIRE(to_file.exit_code == 0);
    CHECK(poly_equal(polynomial_from_json(json::parse(slurp(out_path))), expand_tau_core(3)));
}

TEST_CASE("verify anchors suite passes and is deterministic") {
    const fs::path r1 = scratch_dir() / "report1.json";
    const fs::path r2 = scratch_dir() / "report2.json";
    const std::string flags = "verify --seed 42 --trials 5 --n 3,5 --report ";
    const CliResult a = run_cli(flags + r1.string());
    const CliResult b = run_cli(flags + r2.string());
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out.find("[PASS]") != std::string::npos);

    json da = json::parse(slurp(r1));
    json db = json::parse(slurp(r2));
    da.erase("wall_time_ms");
    db.erase("wall_time_ms");
    CHECK(da.dump() == db.dump());

    const CliResult anchors = run_cli("verify --suite anchors");
    CHECK(anchors.exit_code == 0);

    const fs::path csv_path = scratch_dir() / "summary.csv";
    const CliResult csv =
        run_cli("verify --suite anchors --csv " + csv_path.string());
    REQUIRE(csv.exit_code == 0);
    CHECK(slurp(csv_path).rfind("check,", 0) == 0);

    CHECK(run_cli("verify --trials 0").exit_code == 2);
    CHECK(run_cli("verify --n 4").exit_code == 2);

    // a strangled tolerance turns check failures into exit code 1
    CHECK(run_cli("verify --tol-abs 1e-30 --trials 3 --n 3").exit_code == 1);
}

TEST_CASE("compute csv output") {
    const CliResult r = run_cli("compute 'ket:1|0>+1|7>' --measure tau --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("measure,i,raw,normalized,norm\n", 0) == 0);
    CHECK(r.out.find("tau,,4,") != std::string::npos);
}
