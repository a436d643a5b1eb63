#include "dyncolor/harness.hpp"

#include "dyncolor/error.hpp"
#include "dyncolor/oracles.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dyncolor {

std::string_view AlgorithmId::name() const noexcept
{
    return std::visit([](const auto& a) { return to_string(a); }, value);
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) noexcept
{
    if (auto b = parse_bounded_algorithm(name))
        return AlgorithmId{*b};
    if (auto u = parse_unbounded_algorithm(name))
        return AlgorithmId{*u};
    return std::nullopt;
}

namespace {

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(Errc::config_invalid, what);
}

template<class T>
T scalar(const YAML::Node& node, const std::string& where)
{
    if (!node.IsScalar())
        invalid(fmt::format("{}: expected a scalar", where));
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        invalid(fmt::format("{}: cannot read '{}'", where, node.Scalar()));
    }
}

template<class T>
T non_negative(const YAML::Node& node, const std::string& where)
{
    // yaml-cpp happily wraps "-1" into an unsigned type.
    if (node.IsScalar() && !node.Scalar().empty() && node.Scalar().front() == '-')
        invalid(fmt::format("{}: must not be negative", where));
    return scalar<T>(node, where);
}

template<class T>
std::vector<T> sequence(const YAML::Node& node, const std::string& where)
{
    if (!node.IsSequence())
        invalid(fmt::format("{}: expected a list", where));
    std::vector<T> out;
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(non_negative<T>(node[i], fmt::format("{}[{}]", where, i)));
    return out;
}

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where)
{
    if (!map.IsMap())
        invalid(fmt::format("{}: expected a mapping", where));
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            invalid(fmt::format("{}: unknown key '{}'", where, key));
    }
}

InstanceParams parse_params(const YAML::Node& node, const std::string& where)
{
    check_keys(node, {"edge_probability", "part_a", "rows", "cols", "colors", "file"}, where);
    InstanceParams p;
    if (node["edge_probability"]) {
        p.edge_probability = scalar<double>(node["edge_probability"], where + ".edge_probability");
        if (!(p.edge_probability >= 0.0 && p.edge_probability <= 1.0))
            invalid(where + ".edge_probability: must lie in [0, 1]");
    }
    if (node["part_a"])
        p.part_a = non_negative<std::size_t>(node["part_a"], where + ".part_a");
    if (node["rows"])
        p.rows = non_negative<std::size_t>(node["rows"], where + ".rows");
    if (node["cols"])
        p.cols = non_negative<std::size_t>(node["cols"], where + ".cols");
    if (node["colors"])
        p.colors = non_negative<Color>(node["colors"], where + ".colors");
    if (node["file"])
        p.file = scalar<std::string>(node["file"], where + ".file");
    return p;
}

ScenarioConfig parse_scenario(const YAML::Node& node, const std::string& where)
{
    check_keys(node,
               {"id", "family", "mode", "insertion", "sizes", "size_per_T", "T", "algorithms", "trials", "budget",
                "params", "independent_endpoints", "edges", "palette", "target_max_color"},
               where);
    ScenarioConfig sc;
    if (!node["id"])
        invalid(where + ": missing 'id'");
    sc.id = scalar<std::string>(node["id"], where + ".id");
    if (sc.id.empty() || sc.id.find_first_of(",\"\n") != std::string::npos)
        invalid(where + ".id: must be non-empty without commas, quotes or newlines");

    if (!node["family"])
        invalid(where + ": missing 'family'");
    const auto family = scalar<std::string>(node["family"], where + ".family");
    if (auto f = parse_family(family))
        sc.family = *f;
    else
        invalid(fmt::format("{}.family: unknown family '{}'", where, family));
    if (node["mode"]) {
        const auto mode = scalar<std::string>(node["mode"], where + ".mode");
        if (auto m = parse_coloring_mode(mode))
            sc.mode = *m;
        else
            invalid(fmt::format("{}.mode: unknown coloring mode '{}'", where, mode));
    }
    if (node["insertion"]) {
        const auto ins = scalar<std::string>(node["insertion"], where + ".insertion");
        if (auto i = parse_insertion(ins))
            sc.insertion = *i;
        else
            invalid(fmt::format("{}.insertion: unknown insertion '{}'", where, ins));
    }

    if (node["sizes"] && node["size_per_T"])
        invalid(where + ": 'sizes' and 'size_per_T' are mutually exclusive");
    if (node["sizes"]) {
        sc.sizes = sequence<std::size_t>(node["sizes"], where + ".sizes");
        if (sc.sizes.empty())
            invalid(where + ".sizes: must not be empty");
    } else if (node["size_per_T"]) {
        const auto ab = sequence<std::size_t>(node["size_per_T"], where + ".size_per_T");
        if (ab.size() != 2)
            invalid(where + ".size_per_T: expected [a, b] for n = a*T + b");
        sc.size_per_T = std::pair{ab[0], ab[1]};
    } else {
        invalid(where + ": one of 'sizes' or 'size_per_T' is required");
    }
    if (node["T"]) {
        sc.Ts = node["T"].IsSequence() ? sequence<std::size_t>(node["T"], where + ".T")
                                       : std::vector{non_negative<std::size_t>(node["T"], where + ".T")};
        if (sc.Ts.empty())
            invalid(where + ".T: must not be empty");
    }

    if (!node["algorithms"])
        invalid(where + ": missing 'algorithms'");
    if (!node["algorithms"].IsSequence() || node["algorithms"].size() == 0)
        invalid(where + ".algorithms: expected a non-empty list");
    for (std::size_t i = 0; i < node["algorithms"].size(); ++i) {
        const auto name = scalar<std::string>(node["algorithms"][i], fmt::format("{}.algorithms[{}]", where, i));
        auto a = parse_algorithm(name);
        if (!a)
            invalid(fmt::format("{}.algorithms[{}]: unknown algorithm '{}'", where, i, name));
        sc.algorithms.push_back(*a);
    }

    if (node["trials"])
        sc.trials = non_negative<std::size_t>(node["trials"], where + ".trials");
    if (node["budget"])
        sc.budget = non_negative<std::uint64_t>(node["budget"], where + ".budget");
    if (node["params"])
        sc.params = parse_params(node["params"], where + ".params");
    if (node["independent_endpoints"])
        sc.independent_endpoints = scalar<bool>(node["independent_endpoints"], where + ".independent_endpoints");
    if (node["palette"]) {
        sc.palette = non_negative<Color>(node["palette"], where + ".palette");
        if (sc.palette < 2)
            invalid(where + ".palette: must be at least 2");
    }
    if (node["target_max_color"])
        sc.target_max_color = non_negative<Color>(node["target_max_color"], where + ".target_max_color");
    if (node["edges"]) {
        const YAML::Node& list = node["edges"];
        if (!list.IsSequence())
            invalid(where + ".edges: expected a list of [u, v] pairs");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto uv = sequence<Vertex>(list[i], fmt::format("{}.edges[{}]", where, i));
            if (uv.size() != 2)
                invalid(fmt::format("{}.edges[{}]: expected [u, v]", where, i));
            sc.edges.push_back({uv[0], uv[1]});
        }
    }
    if (sc.insertion == Insertion::explicit_edges && sc.edges.empty())
        invalid(where + ": insertion 'explicit' needs 'edges'");
    return sc;
}

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        invalid(fmt::format("malformed YAML: {}", e.what()));
    }
    check_keys(root, {"seed", "scenarios"}, "config");
    ExperimentConfig cfg;
    if (root["seed"])
        cfg.seed = non_negative<std::uint64_t>(root["seed"], "seed");
    if (!root["scenarios"] || !root["scenarios"].IsSequence())
        invalid("config: 'scenarios' must be a list");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < root["scenarios"].size(); ++i) {
        cfg.scenarios.push_back(parse_scenario(root["scenarios"][i], fmt::format("scenarios[{}]", i)));
        if (!ids.insert(cfg.scenarios.back().id).second)
            invalid(fmt::format("scenarios[{}]: duplicate id '{}'", i, cfg.scenarios.back().id));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        invalid(fmt::format("cannot read '{}'", path));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::uint64_t run_seed(std::uint64_t master, std::string_view scenario, std::size_t n, std::size_t T,
                       std::size_t trial) noexcept
{
    std::uint64_t s = mix64(master);
    s = mix64(s ^ fnv1a64(scenario));
    s = mix64(s ^ n);
    s = mix64(s ^ T);
    return mix64(s ^ trial);
}

namespace {

std::size_t size_for(const ScenarioConfig& sc, std::size_t listed, std::size_t T)
{
    return sc.size_per_T ? sc.size_per_T->first * T + sc.size_per_T->second : listed;
}

/// Bounded runs need a palette of exactly `k` colors.
Coloring with_palette(const Coloring& c, Color k)
{
    std::vector<Color> v(c.values().begin(), c.values().end());
    for (Color x : v)
        if (x > k)
            throw Error(Errc::config_invalid,
                        fmt::format("initial coloring uses color {} beyond the palette size {}", x, k));
    return Coloring(std::move(v), Palette::of_size(k));
}

} // namespace

RunRecord run_single(const ScenarioConfig& sc, const AlgorithmId& algorithm, std::size_t n, std::size_t T,
                     std::uint64_t seed, bool wall_clock)
{
    ScenarioSpec spec;
    spec.base.family = sc.family;
    spec.base.n = n;
    spec.base.mode = sc.mode;
    spec.base.params = sc.params;
    spec.base.params.T = T;
    spec.insertion = sc.insertion;
    spec.T = T;
    spec.edges = sc.edges;
    spec.independent_endpoints = sc.independent_endpoints;

    // Instance and search use separate streams so that every algorithm of a
    // trial sees the same instance.
    Rng instance_rng(seed);
    const Scenario scenario = make_scenario(spec, instance_rng);
    Rng search_rng(mix64(seed ^ 0x5eedULL));

    StopRule stop;
    stop.target_conflicts = 0;
    stop.max_iterations = sc.budget ? sc.budget : default_budget;

    const Color target = sc.target_max_color.value_or(scenario.target_max_color);
    const auto started = std::chrono::steady_clock::now();
    RunOutcome out;
    if (algorithm.bounded()) {
        out = run_bounded(std::get<BoundedAlgorithm>(algorithm.value), scenario.graph,
                          with_palette(scenario.coloring, sc.palette), stop, std::move(search_rng));
    } else {
        const Coloring initial(std::vector<Color>(scenario.coloring.values().begin(), scenario.coloring.values().end()),
                               Palette::unbounded());
        out = run_unbounded(std::get<UnboundedAlgorithm>(algorithm.value), scenario.graph, initial, target, stop,
                            std::move(search_rng));
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;

    if (out.success) {
        const Recount check = recount_all(scenario.graph, out.final_coloring);
        bool valid = check.conflicts == 0;
        if (!algorithm.bounded())
            valid = valid && check.grundy && check.occurrence.max_color() <= target;
        if (!valid)
            throw std::logic_error(fmt::format("run {} / {} (seed {}) reported success but fails re-validation",
                                               sc.id, algorithm.name(), seed));
    }

    RunRecord r;
    r.scenario = sc.id;
    r.algorithm = std::string(algorithm.name());
    r.n = n;
    r.T = T;
    r.seed = seed;
    r.iterations = out.iterations;
    r.censored = !out.success;
    r.wall_ns = wall_clock
                    ? static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count())
                    : 0;
    r.final_conflicts = out.final_conflicts;
    r.final_max_color = out.final_max_color;
    r.work = out.work;
    r.max_iteration_work = out.max_iteration_work;
    r.edges = scenario.graph.edge_count();
    r.inserted = scenario.inserted.size();
    return r;
}

namespace {

struct Job {
    const ScenarioConfig* scenario;
    const AlgorithmId* algorithm;
    std::size_t n;
    std::size_t T;
    std::uint64_t seed;
};

} // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options)
{
    std::vector<Job> jobs;
    for (const auto& sc : config.scenarios) {
        const std::vector<std::size_t> listed = sc.size_per_T ? std::vector<std::size_t>{0} : sc.sizes;
        for (std::size_t size : listed)
            for (std::size_t T : sc.Ts) {
                const std::size_t n = size_for(sc, size, T);
                for (const auto& a : sc.algorithms)
                    for (std::size_t trial = 0; trial < sc.trials; ++trial)
                        jobs.push_back({&sc, &a, n, T, run_seed(config.seed, sc.id, n, T, trial)});
            }
    }

    std::vector<std::optional<RunRecord>> slots(jobs.size());
    std::mutex m;
    std::size_t emitted = 0;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size() || failed)
                return;
            try {
                const Job& j = jobs[i];
                RunRecord r = run_single(*j.scenario, *j.algorithm, j.n, j.T, j.seed, options.wall_clock);
                std::lock_guard lock(m);
                slots[i] = std::move(r);
                while (emitted < slots.size() && slots[emitted]) {
                    if (options.on_record)
                        options.on_record(*slots[emitted]);
                    ++emitted;
                }
            } catch (...) {
                std::lock_guard lock(m);
                if (!error)
                    error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    std::size_t threads = options.parallel ? options.parallel : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<RunRecord> out;
    out.reserve(slots.size());
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

std::string csv_row(const RunRecord& r)
{
    return fmt::format("{},{},{},{},{},{},{},{},{},{}", r.scenario, r.algorithm, r.n, r.T, r.seed, r.iterations,
                       r.censored ? 1 : 0, r.wall_ns, r.final_conflicts, r.final_max_color);
}

namespace {

template<class T>
T parse_field(std::string_view s, std::size_t line, const char* what)
{
    T value{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(Errc::parse_error, fmt::format("line {}: bad {} '{}'", line, what, s));
    return value;
}

} // namespace

std::vector<RunRecord> read_csv(std::string_view text)
{
    std::vector<RunRecord> out;
    std::size_t line_no = 0;
    bool header = false;
    while (!text.empty()) {
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!header) {
            if (line != csv_header)
                throw Error(Errc::parse_error, "unexpected CSV header");
            header = true;
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string_view> f;
        for (;;) {
            const auto comma = line.find(',');
            f.push_back(line.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            line.remove_prefix(comma + 1);
        }
        if (f.size() != 10)
            throw Error(Errc::parse_error, fmt::format("line {}: expected 10 fields, got {}", line_no, f.size()));
        RunRecord r;
        r.scenario = std::string(f[0]);
        r.algorithm = std::string(f[1]);
        r.n = parse_field<std::size_t>(f[2], line_no, "n");
        r.T = parse_field<std::size_t>(f[3], line_no, "T");
        r.seed = parse_field<std::uint64_t>(f[4], line_no, "seed");
        r.iterations = parse_field<std::uint64_t>(f[5], line_no, "iterations");
        const auto censored = parse_field<int>(f[6], line_no, "censored");
        if (censored != 0 && censored != 1)
            throw Error(Errc::parse_error, fmt::format("line {}: censored must be 0 or 1", line_no));
        r.censored = censored == 1;
        r.wall_ns = parse_field<std::uint64_t>(f[7], line_no, "wall_ns");
        r.final_conflicts = parse_field<std::size_t>(f[8], line_no, "final_conflicts");
        r.final_max_color = parse_field<Color>(f[9], line_no, "final_max_color");
        out.push_back(std::move(r));
    }
    if (!header)
        throw Error(Errc::parse_error, "missing CSV header");
    return out;
}

} // namespace dyncolor
