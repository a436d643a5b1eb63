#include "support.hpp"

#include "dyncolor/harness.hpp"
#include "dyncolor/stats.hpp"
#include "dyncolor/verify.hpp"

#include <doctest.h>

using namespace dyncolor;
using namespace testsupport;

namespace {

constexpr std::string_view small_config = R"(
seed: 99
scenarios:
  - id: pj
    family: path
    mode: worst_case
    insertion: path_join
    sizes: [8, 12]
    T: [1, 2]
    algorithms: [rls, ea, ils_ce, tailored_ils_kempe]
    trials: 3
    budget: 200000
  - id: bip
    family: random_bipartite
    mode: proper_canonical
    insertion: random_bipartite
    sizes: [30]
    T: [3]
    algorithms: [ils_kempe, tailored_ils_ce]
    trials: 4
    params: {edge_probability: 0.1}
)";

std::string to_csv(const std::vector<RunRecord>& rs)
{
    std::string out = std::string(csv_header) + "\n";
    for (const auto& r : rs)
        out += csv_row(r) + "\n";
    return out;
}

std::optional<Errc> config_error(std::string_view text)
{
    return error_code([&] { parse_config(text); });
}

} // namespace

TEST_CASE("fit_exponent examples")
{
    const ScalingFit sq = fit_exponent({{2, 4}, {4, 16}, {8, 64}});
    CHECK(sq.exponent == doctest::Approx(2.0));
    CHECK(sq.r2 == doctest::Approx(1.0));
    CHECK(fit_exponent({{2, 2}, {4, 4}, {8, 8}}).exponent == doctest::Approx(1.0));
    CHECK(fit_exponent({{2, 5}, {4, 5}, {8, 5}}).exponent == doctest::Approx(0.0));

    CHECK(error_code([] { fit_exponent({{2, 4}, {4, 16}}); }) == Errc::degenerate_input);
    CHECK(error_code([] { fit_exponent({{2, 4}, {4, 0}, {8, 64}}); }) == Errc::degenerate_input);
    CHECK(error_code([] { fit_exponent({{-2, 4}, {4, 1}, {8, 64}}); }) == Errc::degenerate_input);
    CHECK(error_code([] { fit_exponent({{2, 4}, {2, 5}, {2, 6}}); }) == Errc::degenerate_input);
}

TEST_CASE("censoring-aware summaries")
{
    auto run = [](std::uint64_t it, bool censored) {
        RunRecord r;
        r.iterations = it;
        r.censored = censored;
        return r;
    };
    const Summary a = summarize({run(5, false), run(1, false), run(100, true)});
    CHECK(a.median == 5);
    CHECK(a.censored == 1);
    CHECK(a.mean == 3);
    const Summary b = summarize({run(5, false), run(100, true), run(100, true)});
    CHECK(b.median_censored());
    CHECK(b.mean == 5);
    const Summary c = summarize({run(4, false), run(8, false)});
    CHECK(c.median == 6);
    CHECK(summarize({}).runs == 0);
}

TEST_CASE("config parsing")
{
    const ExperimentConfig cfg = parse_config(small_config);
    CHECK(cfg.seed == 99);
    REQUIRE(cfg.scenarios.size() == 2);
    CHECK(cfg.scenarios[0].algorithms.size() == 4);
    CHECK(cfg.scenarios[0].algorithms[2].name() == "ils_ce");
    CHECK(cfg.scenarios[1].params.edge_probability == doctest::Approx(0.1));
    CHECK(cfg.scenarios[1].Ts == std::vector<std::size_t>{3});

    const ExperimentConfig star = parse_config(R"(
scenarios:
  - {id: s, family: depth2_star, insertion: depth2_star_complete, size_per_T: [4, 1], T: [8, 32], algorithms: [tailored_ea]}
)");
    REQUIRE(star.scenarios[0].size_per_T);
    CHECK(star.scenarios[0].size_per_T->first == 4);
}

TEST_CASE("malformed configs are rejected")
{
    const std::string base = "scenarios:\n  - {id: a, family: path, sizes: [8], algorithms: [rls]";
    CHECK_FALSE(config_error(base + "}\n"));
    CHECK(config_error("scenarios: [") == Errc::config_invalid);
    CHECK(config_error("seed: 1\n") == Errc::config_invalid);
    CHECK(config_error("scenarios: 3\n") == Errc::config_invalid);
    CHECK(config_error(base + ", colour: 3}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", trials: -1}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", trials: many}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", size_per_T: [4, 1]}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", mode: sideways}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", insertion: explicit}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", palette: 1}\n") == Errc::config_invalid);
    CHECK(config_error(base + ", params: {edge_probability: 2}}\n") == Errc::config_invalid);
    CHECK(config_error("scenarios:\n  - {id: a, family: path, sizes: [8], algorithms: [sa]}\n") ==
          Errc::config_invalid);
    CHECK(config_error("scenarios:\n  - {id: a, family: pathh, sizes: [8], algorithms: [rls]}\n") ==
          Errc::config_invalid);
    CHECK(config_error("scenarios:\n  - {id: a, family: path, algorithms: [rls]}\n") == Errc::config_invalid);
    CHECK(config_error("scenarios:\n  - {id: a, family: path, sizes: [8], algorithms: []}\n") ==
          Errc::config_invalid);
    CHECK(config_error("scenarios:\n  - {id: 'a,b', family: path, sizes: [8], algorithms: [rls]}\n") ==
          Errc::config_invalid);
    CHECK(config_error(base + "}\n  - {id: a, family: path, sizes: [8], algorithms: [rls]}\n") ==
          Errc::config_invalid);
    CHECK(error_code([] { load_config("/nonexistent/x.yaml"); }) == Errc::config_invalid);
}

TEST_CASE("experiments are reproducible and ordered")
{
    const ExperimentConfig cfg = parse_config(small_config);
    const auto a = run_experiment(cfg);
    RunOptions par;
    par.parallel = 3;
    std::vector<RunRecord> streamed;
    par.on_record = [&](const RunRecord& r) { streamed.push_back(r); };
    const auto b = run_experiment(cfg, par);

    REQUIRE(a.size() == 2 * 2 * 4 * 3 + 2 * 4);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_csv(a) == to_csv(streamed));
    // Order: scenario, n, T, algorithm, trial.
    CHECK(a[0].scenario == "pj");
    CHECK(a[0].algorithm == "rls");
    CHECK(a[3].algorithm == "ea");
    CHECK(a[12].T == 2);
    CHECK(a.back().scenario == "bip");
    for (const auto& r : a) {
        CHECK(r.wall_ns == 0);
        if (!r.censored)
            CHECK(r.final_conflicts == 0);
    }
    // All algorithms of one trial share the seed, hence the instance.
    CHECK(a[0].seed == a[3].seed);
    CHECK(a[0].seed != a[1].seed);

    ExperimentConfig other = cfg;
    other.seed = 100;
    CHECK(to_csv(run_experiment(other)) != to_csv(a));

    ExperimentConfig none = cfg;
    for (auto& sc : none.scenarios)
        sc.trials = 0;
    CHECK(run_experiment(none).empty());
}

TEST_CASE("seed splitting")
{
    const auto s = run_seed(1, "x", 16, 1, 0);
    CHECK(s == run_seed(1, "x", 16, 1, 0));
    CHECK(s != run_seed(2, "x", 16, 1, 0));
    CHECK(s != run_seed(1, "y", 16, 1, 0));
    CHECK(s != run_seed(1, "x", 32, 1, 0));
    CHECK(s != run_seed(1, "x", 16, 2, 0));
    CHECK(s != run_seed(1, "x", 16, 1, 1));
}

TEST_CASE("scenario generation failures surface as errors")
{
    // Bounded runs need the initial coloring inside their palette.
    CHECK(error_code([] {
              run_experiment(parse_config(
                  "scenarios:\n  - {id: p, family: planar_grid, mode: worst_case, insertion: planar_gadgets, "
                  "sizes: [144], algorithms: [rls], trials: 1}\n"));
          }) == Errc::config_invalid);
    CHECK(error_code([] {
              run_experiment(parse_config("scenarios:\n  - {id: p, family: complete_binary_tree, sizes: [10], "
                                          "algorithms: [rls], trials: 1}\n"));
          }) == Errc::incompatible_size);
}

TEST_CASE("censored runs report the budget")
{
    const auto rs = run_experiment(parse_config(R"(
scenarios:
  - {id: trap, family: complete_binary_tree, mode: worst_case, insertion: tree_root_edge, sizes: [15],
     algorithms: [rls], trials: 2, budget: 1000}
)"));
    REQUIRE(rs.size() == 2);
    for (const auto& r : rs) {
        CHECK(r.censored);
        CHECK(r.iterations == 1000);
        CHECK(r.final_conflicts == 1);
    }
}

TEST_CASE("csv round trip")
{
    const auto a = run_experiment(parse_config(small_config));
    const auto back = read_csv(to_csv(a));
    REQUIRE(back.size() == a.size());
    CHECK(to_csv(back) == to_csv(a));

    CHECK(error_code([] { read_csv("scenario,algorithm\n"); }) == Errc::parse_error);
    CHECK(error_code([] { read_csv(""); }) == Errc::parse_error);
    const std::string h = std::string(csv_header) + "\n";
    CHECK(error_code([&] { read_csv(h + "a,b,1,1,1,1,0,0,0\n"); }) == Errc::parse_error);
    CHECK(error_code([&] { read_csv(h + "a,b,x,1,1,1,0,0,0,1\n"); }) == Errc::parse_error);
    CHECK(error_code([&] { read_csv(h + "a,b,1,1,1,1,2,0,0,1\n"); }) == Errc::parse_error);
    CHECK(read_csv(h + "a,b,1,2,3,4,1,0,5,6\r\n").front().final_max_color == 6);
}

TEST_CASE("series fits skip censored medians")
{
    std::vector<RunRecord> rs;
    for (std::size_t n : {4u, 8u, 16u, 32u})
        for (int t = 0; t < 3; ++t) {
            RunRecord r;
            r.scenario = "s";
            r.algorithm = "a";
            r.n = n;
            r.iterations = n * n;
            r.censored = n == 32;
            rs.push_back(r);
        }
    const auto fits = fit_series(rs, Axis::n);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].points.size() == 4);
    REQUIRE(fits[0].fit);
    CHECK(fits[0].fit->points.size() == 3);
    CHECK(fits[0].fit->exponent == doctest::Approx(2.0));
}

TEST_CASE("invariant suite registry")
{
    CHECK(error_code([] { verify_invariant_suite("no_such_suite", 10); }) == Errc::unknown_suite);
    CHECK(error_code([] { sensitivity_fault("no_such_suite"); }) == Errc::unknown_suite);
    for (auto id : suite_ids()) {
        const SuiteReport empty = verify_invariant_suite(id, 0);
        CHECK(empty.vacuous());
        CHECK(empty.passed());
        CHECK(format_report(empty).find("0 cases executed") != std::string::npos);

        const SuiteReport ok = verify_invariant_suite(id, 3000, 5);
        CHECK(ok.cases == 3000);
        CHECK(ok.passed());

        const SuiteReport broken = verify_invariant_suite(id, 20000, 5, sensitivity_fault(id));
        CHECK_FALSE(broken.passed());
        bool serialized = false;
        for (const auto& inv : broken.invariants)
            serialized = serialized || (inv.gating && inv.violations > 0 && !inv.counterexample.empty());
        CHECK(serialized);
    }
    CHECK_FALSE(verify_invariant_suite("delta_monotone", 20000, 5, Fault::inverted).passed());
    CHECK(parse_fault("accept_all") == Fault::accept_all);
    CHECK_FALSE(parse_fault("bogus"));
}
