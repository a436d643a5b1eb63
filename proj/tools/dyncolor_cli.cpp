#include "dyncolor/error.hpp"
#include "dyncolor/harness.hpp"
#include "dyncolor/oracles.hpp"
#include "dyncolor/stats.hpp"
#include "dyncolor/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dyncolor;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_path, std::optional<std::uint64_t> seed,
            std::size_t parallel, bool wall_clock)
{
    ExperimentConfig cfg = load_config(config_path);
    if (seed)
        cfg.seed = *seed;
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error(Errc::config_invalid, fmt::format("cannot write '{}'", out_path));
    out << csv_header << '\n';
    RunOptions opts;
    opts.parallel = parallel;
    opts.wall_clock = wall_clock;
    opts.on_record = [&](const RunRecord& r) { out << csv_row(r) << '\n' << std::flush; };
    const auto records = run_experiment(cfg, opts);
    std::size_t censored = 0;
    for (const auto& r : records)
        censored += r.censored;
    fmt::print("{} runs written to {} ({} censored)\n", records.size(), out_path, censored);
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t budget, std::uint64_t seed, const std::string& fault_name)
{
    const auto fault = parse_fault(fault_name);
    if (!fault)
        throw Error(Errc::unknown_suite, fmt::format("unknown fault '{}'", fault_name));
    bool ok = true;
    const std::vector<std::string_view> ids =
        suite == "all" ? suite_ids() : std::vector<std::string_view>{suite};
    for (auto id : ids) {
        const SuiteReport r = verify_invariant_suite(id, budget, seed, *fault);
        fmt::print("{}", format_report(r));
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

int cmd_fit(const std::string& csv_path, const std::string& axis)
{
    std::ifstream in(csv_path, std::ios::binary);
    if (!in)
        throw Error(Errc::parse_error, fmt::format("cannot read '{}'", csv_path));
    std::ostringstream text;
    text << in.rdbuf();
    const auto runs = read_csv(text.str());
    for (const auto& s : fit_series(runs, axis == "n" ? Axis::n : Axis::T)) {
        fmt::print("{} / {}\n", s.scenario, s.algorithm);
        for (const auto& p : s.points)
            fmt::print("  {}={:<8g} runs={:<5} censored={:<5} median={:<12g} mean={:g}\n", axis, p.x,
                       p.summary.runs, p.summary.censored, p.summary.median, p.summary.mean);
        if (s.fit)
            fmt::print("  exponent={:.4f} intercept={:.4f} r2={:.4f}\n", s.fit->exponent, s.fit->intercept,
                       s.fit->r2);
        else
            fmt::print("  no fit (fewer than 3 uncensored medians)\n");
    }
    return 0;
}

int cmd_ehrenfest(std::size_t N, bool conditioned)
{
    const PassageTime t = conditioned ? ehrenfest_first_passage(N, 1, {1, N - 1}, {0, N})
                                      : ehrenfest_first_passage(N, 1, {1});
    const double reference = std::ldexp(1.0, static_cast<int>(N)) / static_cast<double>(N);
    fmt::print("N={} expected_steps={:.12g}", N, t.value);
    if (t.exact_arithmetic)
        fmt::print(" exact={}", t.exact);
    fmt::print(" ratio_to_2^N/N={:.6g}\n", t.value / reference);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dynamic graph coloring lab: experiments, invariant suites, fits and oracles"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment configuration and write CSV records");
    std::string config_path, out_path;
    std::uint64_t seed_value = 0;
    std::size_t parallel = 1;
    bool wall_clock = false;
    run->add_option("config", config_path, "YAML experiment file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_path, "CSV output path")->required();
    auto* seed_opt = run->add_option("--seed", seed_value, "Master seed (overrides the config)");
    run->add_option("--parallel", parallel, "Worker threads (0 = all cores)");
    run->add_flag("--wall-clock", wall_clock, "Record wall-clock times (output no longer reproducible)");

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    std::string suite, fault = "none";
    std::uint64_t budget = 100'000, verify_seed = 1;
    verify->add_option("suite", suite, "Suite id or 'all'")->required();
    verify->add_option("--budget", budget, "Number of cases");
    verify->add_option("--seed", verify_seed, "Seed");
    verify->add_option("--fault", fault, "Injected fault: none, accept_all, inverted, keep_unsearched, eager_repair");

    auto* fit = app.add_subcommand("fit", "Fit median iterations against n or T from a CSV file");
    std::string csv_path, axis = "n";
    fit->add_option("csv", csv_path, "CSV written by 'run'")->required();
    fit->add_option("--x", axis, "Regressor")->check(CLI::IsMember({"n", "T"}));

    auto* oracle = app.add_subcommand("oracle", "Exact reference computations");
    oracle->require_subcommand(1);
    auto* ehrenfest = oracle->add_subcommand("ehrenfest", "Expected return time of the Ehrenfest chain to state 1");
    std::size_t N = 0;
    bool conditioned = false;
    ehrenfest->add_option("--N", N, "Even number of balls")->required();
    ehrenfest->add_flag("--conditioned", conditioned, "Return to {1, N-1} avoiding {0, N}");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(config_path, out_path, seed_opt->count() ? std::optional{seed_value} : std::nullopt,
                           parallel, wall_clock);
        if (*verify)
            return cmd_verify(suite, budget, verify_seed, fault);
        if (*fit)
            return cmd_fit(csv_path, axis);
        if (*ehrenfest)
            return cmd_ehrenfest(N, conditioned);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
