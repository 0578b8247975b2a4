#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "finsum/cli/runners.hpp"
#include "finsum/parallel.hpp"

namespace {

bool parse_cutoff_list(const std::string& text, std::vector<int>& cutoffs) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(text.substr(pos), &used);
        } catch (const std::exception&) {
            return false;
        }
        cutoffs.push_back(value);
        pos += used;
        if (pos == text.size()) break;
        if (text[pos] != ',') return false;
        ++pos;
    }
    return !cutoffs.empty();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"checks weighted finite-sum identities against their integral expansions"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

    std::string verify_path;
    double tolerance = 0.0;
    CLI::App* verify = app.add_subcommand("verify", "evaluate one job file, print a JSON report");
    verify->add_option("job", verify_path, "job file (JSON)")->required();
    CLI::Option* tolerance_opt = verify->add_option(
        "--tolerance", tolerance, "acceptance scale: pass iff residual <= tol*(1+|lhs|)");

    std::string sweep_path;
    std::string cutoff_text;
    CLI::App* sweep = app.add_subcommand("sweep", "print residual vs series cutoff as CSV");
    sweep->add_option("job", sweep_path, "job file (JSON)")->required();
    sweep->add_option("--N", cutoff_text, "comma-separated ascending cutoffs");

    app.add_subcommand("selftest", "run the built-in invariant groups");

    CLI11_PARSE(app, argc, argv);
    finsum::parallel::set_max_threads(threads);

    finsum::cli::RunOutcome outcome;
    if (verify->parsed()) {
        std::optional<double> tolerance_override;
        if (tolerance_opt->count() > 0) tolerance_override = tolerance;
        outcome = finsum::cli::run_verify(verify_path, tolerance_override);
    } else if (sweep->parsed()) {
        std::vector<int> cutoffs;
        if (!cutoff_text.empty() && !parse_cutoff_list(cutoff_text, cutoffs)) {
            std::cout << finsum::cli::error_json("schema", "--N", "bad cutoff list").dump(2)
                      << "\n";
            return 2;
        }
        outcome = finsum::cli::run_sweep(sweep_path, cutoffs);
    } else {
        outcome = finsum::cli::run_selftest();
    }

    std::cout << outcome.out;
    std::cerr << outcome.err;
    return outcome.code;
}
