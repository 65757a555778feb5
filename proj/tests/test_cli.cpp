// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line tool. Run with:
//   cli_tests <path-to-enpack-binary> <path-to-golden-lp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

int g_failures = 0;

#define CLI_CHECK(cond)                                                         \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  " #cond \
                      << "\n";                                                  \
            ++g_failures;                                                       \
        }                                                                       \
    } while (0)

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CommandResult run(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    while (std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) {
        result.output.append(buffer, n);
    }
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <enpack-binary> <golden-lp>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string golden_path = argv[2];

    namespace fs = std::filesystem;
    const fs::path work = fs::temp_directory_path() / ("enpack_cli_test_" +
                                                       std::to_string(::getpid()));
    fs::create_directories(work);
    const std::string dir = work.string();

    // dims prints the model shape.
    {
        const CommandResult r = run(cli + " dims --components 10 --machines 5");
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(r.output == "M=75 N=55\n");
    }

    // gen is deterministic and records its seed.
    {
        const std::string inst = dir + "/inst.json";
        const CommandResult r1 =
            run(cli + " gen --seed 7 --components 6 --machines 3 -o " + inst);
        CLI_CHECK(r1.exit_code == 0);
        const std::string first = read_file(inst);
        const CommandResult r2 =
            run(cli + " gen --seed 7 --components 6 --machines 3 -o " + inst);
        CLI_CHECK(r2.exit_code == 0);
        CLI_CHECK(first == read_file(inst));
        CLI_CHECK(first.find("\"meta\"") != std::string::npos);
    }

    // solve writes an allocation that verify accepts.
    {
        const std::string inst = dir + "/inst.json";
        const std::string alloc = dir + "/alloc.json";
        for (const std::string solver : {"bnb", "brute", "ffd", "bfd"}) {
            const CommandResult solve = run(cli + " solve -i " + inst + " --solver " + solver +
                                            " --out " + alloc);
            CLI_CHECK(solve.exit_code == 0);
            CLI_CHECK(solve.output.find("status:") != std::string::npos);
            const CommandResult verify = run(cli + " verify -i " + inst + " --alloc " + alloc);
            CLI_CHECK(verify.exit_code == 0);
            CLI_CHECK(verify.output.find("ok: feasible") != std::string::npos);
        }
    }

    // verify flags a tampered allocation.
    {
        const std::string inst = dir + "/tight.json";
        std::ofstream(inst) << R"({"components": [{"mem": 3, "cpu": 1}, {"mem": 3, "cpu": 1}],
                                   "machines": [{"mem": 4, "cpu": 4}, {"mem": 4, "cpu": 4}]})";
        const std::string alloc = dir + "/bad_alloc.json";
        std::ofstream(alloc) << R"({"assignment": [0, 0], "open": [true, false]})";
        const CommandResult verify = run(cli + " verify -i " + inst + " --alloc " + alloc);
        CLI_CHECK(verify.exit_code == 1);
        CLI_CHECK(verify.output.find("violation") != std::string::npos);
    }

    // solve reports infeasibility through the exit code.
    {
        const std::string inst = dir + "/infeasible.json";
        std::ofstream(inst) << R"({"components": [{"mem": 9, "cpu": 9}],
                                   "machines": [{"mem": 4, "cpu": 4}]})";
        const CommandResult r = run(cli + " solve -i " + inst + " --solver bnb");
        CLI_CHECK(r.exit_code == 1);
        CLI_CHECK(r.output.find("status: infeasible") != std::string::npos);
    }

    // A hit node limit maps to exit code 3.
    {
        const std::string inst = dir + "/inst.json";
        const CommandResult r =
            run(cli + " solve -i " + inst + " --solver bnb --node-limit 0");
        CLI_CHECK(r.exit_code == 3);
    }

    // export reproduces the golden model for the documented 1x1 instance.
    {
        const std::string inst = dir + "/one.json";
        std::ofstream(inst) << R"({"components": [{"mem": 3, "cpu": 1}],
                                   "machines": [{"mem": 4, "cpu": 8}]})";
        const std::string model = dir + "/model.lp";
        const CommandResult r = run(cli + " export -i " + inst + " --format lp -o " + model);
        CLI_CHECK(r.exit_code == 0);
        CLI_CHECK(read_file(model) == read_file(golden_path));
    }

    // Unknown files, malformed documents, and bad invocations exit with 2.
    {
        CLI_CHECK(run(cli + " solve -i " + dir + "/missing.json --solver bnb").exit_code == 2);
        const std::string broken = dir + "/broken.json";
        std::ofstream(broken) << "{";
        CLI_CHECK(run(cli + " solve -i " + broken + " --solver bnb").exit_code == 2);
        CLI_CHECK(run(cli + " export -i " + broken + " --format lp -o " + dir + "/x.lp")
                      .exit_code == 2);
        CLI_CHECK(run(cli + " solve -i " + broken).exit_code == 2);  // --solver is required
        CLI_CHECK(run(cli + " solve -i " + broken + " --solver simplex").exit_code == 2);
        CLI_CHECK(run(cli + " gen --components 2 --machines 1 -o " + dir + "/g.json")
                      .exit_code == 2);  // --seed is required
    }

    // bench runs a generated suite and writes the CSV.
    {
        const std::string suite = dir + "/suite.json";
        std::ofstream(suite) << R"({"count": 4, "seed": 3, "components": 6, "machines": 3,
                                    "mem_req": [1, 8], "cpu_req": [1, 8],
                                    "mem_cap": [10, 20], "cpu_cap": [10, 20]})";
        const std::string csv = dir + "/results.csv";
        const CommandResult r =
            run(cli + " bench --suite " + suite + " --solvers bnb,ffd,bfd -o " + csv);
        CLI_CHECK(r.exit_code == 0);
        const std::string text = read_file(csv);
        CLI_CHECK(text.rfind("instance,solver,status,objective,gap,nodes,elapsed_ms\n", 0) == 0);
        CLI_CHECK(std::count(text.begin(), text.end(), '\n') == 13);  // header + 4*3 rows
    }

    // bench accepts file-based suites as well.
    {
        const std::string suite = dir + "/files_suite.json";
        std::ofstream(suite) << R"({"files": [")" << dir << R"(/one.json", ")" << dir
                             << R"(/tight.json"]})";
        const std::string csv = dir + "/results_files.csv";
        const CommandResult r =
            run(cli + " bench --suite " + suite + " --solvers bnb,ffd -o " + csv);
        CLI_CHECK(r.exit_code == 0);
        const std::string text = read_file(csv);
        CLI_CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    }

    fs::remove_all(work);
    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " checks failed\n";
    return 1;
}
