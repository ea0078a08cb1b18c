#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "harmonic/cli.hpp"

namespace {

unsigned default_digits() {
    if (const char* env = std::getenv("HARMONIC_DIGITS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 10 && v <= 100000) {
            return static_cast<unsigned>(v);
        }
    }
    return 100;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact decomposition of harmonic numbers at rational arguments, "
        "span dimensions over the algebraic numbers, and high-precision "
        "verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    harmonic::cli::RunConfig cfg;
    cfg.digits = default_digits();
    std::string out_path;
    app.add_option("--digits", cfg.digits, "working decimal digits (>= 10)")
        ->check(CLI::Range(10u, 100000u))
        ->capture_default_str();
    app.add_option("--conductor-cap", cfg.conductor_cap,
                   "largest allowed cyclotomic conductor (>= 4; default "
                   "4*lcm of the moduli in play)")
        ->check(CLI::Range(4u, 1000000u));
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write the report to a file");

    std::string fraction;
    auto* decompose = app.add_subcommand(
        "decompose", "decompose H(a/q) over the canonical symbolic basis");
    decompose->add_option("fraction", fraction, "index a/q, e.g. 1/5")
        ->required();

    std::string primes_csv;
    std::string indices_csv;
    auto* dim = app.add_subcommand(
        "dim", "exact span dimension and dependence relations");
    dim->add_option("--primes", primes_csv,
                    "comma-separated primes, e.g. 5,7");
    dim->add_option("--indices", indices_csv,
                    "comma-separated indices, e.g. 1/5,2/5,1/1");

    std::string selector;
    auto* check = app.add_subcommand("check", "run a verification suite");
    check
        ->add_option("selector", selector,
                     "all, 3.3, 3.4, 3.7, 3.8, 3.9, or independence")
        ->required();
    check->add_option("--max-coeff", cfg.max_coeff,
                      "coefficient bound for the independence search")
        ->check(CLI::Range(1l, 1000000l));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::ofstream file;
    std::ostream* sink = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << "\n";
            return 1;
        }
        sink = &file;
    }

    if (decompose->parsed()) {
        return harmonic::cli::run_decompose(fraction, cfg, *sink, std::cerr);
    }
    if (dim->parsed()) {
        return harmonic::cli::run_dim(primes_csv, indices_csv, cfg, *sink,
                                      std::cerr);
    }
    return harmonic::cli::run_check(selector, cfg, *sink, std::cerr);
}
