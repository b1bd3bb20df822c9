#include "romanov/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "romanov/errors.hpp"

#ifndef ROMANOV_VERSION
#define ROMANOV_VERSION "dev"
#endif

namespace romanov {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64_digits(const std::string& digits, std::string_view what)
{
    if (digits.size() > 19 && digits != "18446744073709551615")
        throw CapacityError(std::string(what) + " " + digits + " does not fit in 64 bits");
    try {
        return std::stoull(digits);
    } catch (const std::out_of_range&) {
        throw CapacityError(std::string(what) + " " + digits + " does not fit in 64 bits");
    }
}

std::uint64_t to_u64(const BigInt& v, std::string_view what)
{
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        throw ConfigError(std::string(what) + " must be a non-negative 64-bit integer, got " + v.get_str());
    return v.get_ui();
}

std::uint64_t parse_u64(std::string_view text, std::string_view what)
{
    return to_u64(parse_power_expr(text), what);
}

class Stopwatch {
public:
    double lap_ms()
    {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check_memory(std::uint64_t x, const Budgets& b)
{
    // Two bit arrays of x + 1 bits during the S1/S2 split.
    const std::uint64_t need = 2 * ((x + 64) / 64) * 8;
    if (need > b.memory_cap_bytes)
        throw CapacityError("enumeration to " + std::to_string(x) + " needs " + std::to_string(need) +
                            " bytes, memory cap is " + std::to_string(b.memory_cap_bytes));
}

const std::vector<std::string> kPipelines = {"paper-chain", "desk-density", "depolignac-audit",
                                             "open-question", "count-b", "sumset", "ratio-scan"};

std::vector<BigInt> parse_grid(const ExperimentConfig& c)
{
    std::vector<BigInt> out;
    for (const auto& s : c.x_grid)
        out.push_back(parse_power_expr(s, c.budgets.bit_budget));
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i] <= out[i - 1])
            throw ConfigError("x_grid must be strictly ascending");
    }
    return out;
}

std::vector<std::uint64_t> grid_u64(const std::vector<BigInt>& grid)
{
    std::vector<std::uint64_t> out;
    for (const auto& x : grid)
        out.push_back(to_u64(x, "grid value"));
    return out;
}

json sumset_row(std::uint64_t x, const BlockSet& set, const Budgets& b)
{
    check_memory(x, b);
    const std::size_t j = block_index(BigInt(static_cast<unsigned long>(x)), set.schedule());
    if (j < 2)
        return to_json(split_S1_S2(x, set, b.enumeration_cap));
    return to_json(c_upper_report(x, set, set.primes(), b.enumeration_cap));
}

json analytic_bounds(const BigInt& x, const BlockSet& set)
{
    const std::size_t j = block_index(x, set.schedule());
    json row = {{"x", to_json(x)}, {"j", j}};
    const S1Bound s1 = s1_bound(x, set, set.primes());
    row["s1_bound"] = to_json(s1.bound);
    row["s1_legendre"] = s1.legendre ? to_json(*s1.legendre) : json(nullptr);
    row["lower_bound"] = j >= 2 ? to_json(block_lower_bound(x, set)) : json(nullptr);
    if (j >= 2) {
        const ExactRational s2 = s2_bound(x, set, set.primes());
        row["s2_bound"] = to_json(s2);
        row["c_bound"] = to_json(s1.bound + s2);
    } else {
        row["s2_bound"] = nullptr;
        row["c_bound"] = nullptr;
    }
    row["sqrt_check"] = pow2(2 * j) <= x;
    if (set.schedule().kind() == ScheduleKind::paper && x >= 4)
        row["window"] = to_json(j_window_check(x, set.schedule()));
    return row;
}

json run_paper_chain(const ExperimentConfig& c, ResultRecord& rec, Stopwatch& sw)
{
    const auto grid = parse_grid(c);
    json rows = json::array();
    bool bound_all = true;
    bool ratio_all = true;
    if (!grid.empty()) {
        const BlockSet set = BlockSet::covering(c.schedule, grid.back());
        for (const auto& x : grid) {
            const BCountReport r = conjecture_ratio(x, set);
            json row = to_json(r);
            row["bounds"] = analytic_bounds(x, set);
            bound_all = bound_all && r.lower_bound_holds();
            ratio_all = ratio_all && r.ratio_exact > ExactRational(1);
            rows.push_back(row);
        }
    }
    rec.timing_ms["b_counts"] = sw.lap_ms();

    constexpr std::size_t kJMax = 10'000;
    const PrimeTable table = table_with_odd_primes(kJMax);
    std::uint64_t cheb_failures = 0;
    double min_margin = INFINITY;
    for (std::size_t j = 2; j <= kJMax; ++j) {
        const ChebyshevCheck ch = check_chebyshev(j, table);
        if (!(ch.theta <= ch.bound + 1e-9))
            ++cheb_failures;
        min_margin = std::min(min_margin, ch.bound - ch.theta);
    }
    rec.timing_ms["chebyshev"] = sw.lap_ms();

    const auto profile = mertens_profile(kJMax, table);
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t j = 100; j <= kJMax; ++j) {
        const double scaled = profile[j - 1] * std::log(static_cast<double>(table.odd_prime(j)));
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    rec.timing_ms["mertens"] = sw.lap_ms();

    return {{"rows", rows},
            {"chebyshev", {{"j_from", 2}, {"j_to", kJMax}, {"failures", cheb_failures}, {"min_margin", min_margin}}},
            {"mertens",
             {{"j_from", 100}, {"j_to", kJMax}, {"min_scaled", lo}, {"max_scaled", hi},
              {"in_range", lo >= 0.898 && hi <= 1.347}}},
            {"summary", {{"lower_bound_all_hold", bound_all}, {"ratio_all_above_one", ratio_all}}}};
}

json run_desk_density(const ExperimentConfig& c, ResultRecord& rec, Stopwatch& sw)
{
    const auto grid = grid_u64(parse_grid(c));
    json rows = json::array();
    bool partition = true, coprime = true, s1_ok = true, s2_ok = true, c_ok = true;
    std::vector<double> densities;
    if (!grid.empty()) {
        const BlockSet set = BlockSet::covering(c.schedule, BigInt(static_cast<unsigned long>(grid.back())));
        for (auto x : grid) {
            check_memory(x, c.budgets);
            const SumsetReport r = c_upper_report(x, set, set.primes(), c.budgets.enumeration_cap);
            partition = partition && r.partition_holds();
            coprime = coprime && r.s1_coprime_violations == 0;
            s1_ok = s1_ok && r.s1_within_legendre() && r.s1_within_bound();
            s2_ok = s2_ok && r.s2_within_bound();
            c_ok = c_ok && r.c_within_bound();
            densities.push_back(r.density);
            rows.push_back(to_json(r));
            rec.timing_ms["x=" + std::to_string(x)] = sw.lap_ms();
        }
    }
    // Compare exact counts: c_last / x_last < c_first / x_first.
    bool decline = false;
    if (rows.size() >= 2) {
        const auto& f = rows.front();
        const auto& l = rows.back();
        decline = ExactRational(BigInt(static_cast<unsigned long>(l["c_count"].get<std::uint64_t>())),
                                BigInt(static_cast<unsigned long>(l["x"].get<std::uint64_t>()))) <
                  ExactRational(BigInt(static_cast<unsigned long>(f["c_count"].get<std::uint64_t>())),
                                BigInt(static_cast<unsigned long>(f["x"].get<std::uint64_t>())));
    }
    return {{"rows", rows},
            {"summary",
             {{"partition_holds", partition},
              {"s1_coprime", coprime},
              {"s1_within_bound", s1_ok},
              {"s2_within_bound", s2_ok},
              {"c_within_bound", c_ok},
              {"density_declines", decline}}}};
}

json run_depolignac(const ExperimentConfig& c, ResultRecord& rec, Stopwatch& sw)
{
    const auto path = c.covering_system.empty() ? config_dir() / "erdos_covering.json"
                                                : std::filesystem::path(c.covering_system);
    const CoveringSystem system = load_covering_system(path);
    const CoverResult cover = covering_verify(system);
    json out = {{"covering", to_json(cover)}};
    if (cover.covers) {
        const APCertificate cert = crt_combine(system);
        out["certificate"] = to_json(cert);
        rec.timing_ms["crt"] = sw.lap_ms();
        out["ap_scan"] = to_json(ap_scan(cert, c.scan_limit));
        rec.timing_ms["ap_scan"] = sw.lap_ms();
    }
    json romanov = json::array();
    for (auto limit : grid_u64(parse_grid(c)))
        romanov.push_back(to_json(romanov_density_scan(limit)));
    rec.timing_ms["romanov"] = sw.lap_ms();
    out["romanov"] = romanov;
    return out;
}

json run_ratio(const ExperimentConfig& c, ResultRecord& rec, Stopwatch& sw)
{
    const auto grid = grid_u64(parse_grid(c));
    json rows = json::array();
    if (!grid.empty()) {
        check_memory(grid.back(), c.budgets);
        const BlockSet set = BlockSet::covering(c.schedule, BigInt(static_cast<unsigned long>(grid.back())));
        for (const auto& p : ratio_scan(grid, set, c.budgets.enumeration_cap)) {
            json row = to_json(p);
            // B(x) log x / x: bounded iff B(x) = O(x / log x) along the grid.
            row["b_log_density"] = (ExactRational(p.b_count) / ExactRational(BigInt(static_cast<unsigned long>(p.x))))
                                       .to_double() *
                                   std::log(static_cast<double>(p.x));
            row["ratio_approx"] = p.ratio ? json(p.ratio->to_double()) : json(nullptr);
            rows.push_back(row);
        }
    }
    rec.timing_ms["ratio_scan"] = sw.lap_ms();
    return {{"rows", rows}};
}

json run_count_b(const ExperimentConfig& c)
{
    const auto grid = parse_grid(c);
    json rows = json::array();
    if (!grid.empty()) {
        const BlockSet set = BlockSet::covering(c.schedule, grid.back());
        for (const auto& x : grid)
            rows.push_back(to_json(conjecture_ratio(x, set)));
    }
    return {{"rows", rows}};
}

json run_sumset(const ExperimentConfig& c)
{
    const auto grid = grid_u64(parse_grid(c));
    json rows = json::array();
    if (!grid.empty()) {
        const BlockSet set = BlockSet::covering(c.schedule, BigInt(static_cast<unsigned long>(grid.back())));
        for (auto x : grid)
            rows.push_back(sumset_row(x, set, c.budgets));
    }
    return {{"rows", rows}};
}

}  // namespace

BigInt parse_power_expr(std::string_view text, std::uint64_t max_bits)
{
    static const std::regex decimal(R"(\d+)");
    static const std::regex power(R"(2\^(\d+))");
    static const std::regex tower(R"(2\^\(2\^(\d+)\))");
    const std::string s = trim(text);
    std::smatch m;
    if (std::regex_match(s, decimal)) {
        BigInt v(s, 10);
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > max_bits)
            throw CapacityError("'" + s + "' exceeds the bit budget of " + std::to_string(max_bits));
        return v;
    }
    std::uint64_t exponent = 0;
    if (std::regex_match(s, m, power)) {
        exponent = parse_u64_digits(m[1].str(), "exponent");
    } else if (std::regex_match(s, m, tower)) {
        const std::uint64_t inner = parse_u64_digits(m[1].str(), "exponent");
        if (inner >= 64)
            throw CapacityError("'" + s + "' exceeds the bit budget of " + std::to_string(max_bits));
        exponent = std::uint64_t{1} << inner;
    } else {
        throw ConfigError("cannot parse '" + std::string(text) + "' as decimal, 2^N or 2^(2^N)");
    }
    if (exponent >= max_bits)
        throw CapacityError("'" + s + "' exceeds the bit budget of " + std::to_string(max_bits));
    return pow2(exponent);
}

Budgets default_budgets()
{
    Budgets b;
    if (const char* env = std::getenv("ROMANOV_ENUM_CAP"); env && *env) {
        b.enumeration_cap = parse_u64(env, "ROMANOV_ENUM_CAP");
        if (b.enumeration_cap == 0)
            throw ConfigError("ROMANOV_ENUM_CAP must be positive");
    }
    return b;
}

std::filesystem::path config_dir()
{
    if (const char* env = std::getenv("ROMANOV_CONFIG_DIR"); env && *env)
        return env;
#ifdef ROMANOV_SOURCE_CONFIG_DIR
    return ROMANOV_SOURCE_CONFIG_DIR;
#else
    return "configs";
#endif
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object())
        throw ConfigError("experiment config must be a JSON object");
    ExperimentConfig c;
    try {
        c.name = j.at("name").get<std::string>();
        c.pipeline = j.at("pipeline").get<std::string>();
        if (std::find(kPipelines.begin(), kPipelines.end(), c.pipeline) == kPipelines.end())
            throw ConfigError("unknown pipeline '" + c.pipeline + "'");
        c.schedule = j.contains("schedule") ? schedule_from_json(j.at("schedule"))
                                            : (c.pipeline == "paper-chain" || c.pipeline == "count-b"
                                                   ? GrowthSchedule::paper()
                                                   : GrowthSchedule::polynomial());
        for (const auto& x : j.value("x_grid", json::array()))
            c.x_grid.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        c.budgets = default_budgets();
        if (j.contains("budgets")) {
            const json& b = j.at("budgets");
            c.budgets.enumeration_cap = b.value("enumeration_cap", c.budgets.enumeration_cap);
            c.budgets.memory_cap_bytes = b.value("memory_cap_bytes", c.budgets.memory_cap_bytes);
            c.budgets.bit_budget = b.value("bit_budget", c.budgets.bit_budget);
            if (c.budgets.enumeration_cap == 0 || c.budgets.memory_cap_bytes == 0 || c.budgets.bit_budget == 0)
                throw ConfigError("budgets must be positive");
        }
        // The environment override wins over the file.
        if (std::getenv("ROMANOV_ENUM_CAP"))
            c.budgets.enumeration_cap = default_budgets().enumeration_cap;
        if (j.contains("output")) {
            c.output.format = j.at("output").value("format", std::string("json"));
            c.output.path = j.at("output").value("path", std::string());
            if (c.output.format != "json" && c.output.format != "csv")
                throw ConfigError("output format must be json or csv");
        }
        c.covering_system = j.value("covering_system", std::string());
        c.scan_limit = j.value("scan_limit", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed experiment config: ") + e.what());
    }
    parse_grid(c);
    return c;
}

json to_json(const ExperimentConfig& c)
{
    return {{"name", c.name},
            {"pipeline", c.pipeline},
            {"schedule", to_json(c.schedule)},
            {"x_grid", c.x_grid},
            {"budgets",
             {{"enumeration_cap", c.budgets.enumeration_cap},
              {"memory_cap_bytes", c.budgets.memory_cap_bytes},
              {"bit_budget", c.budgets.bit_budget}}},
            {"output", {{"format", c.output.format}, {"path", c.output.path}}},
            {"covering_system", c.covering_system},
            {"scan_limit", c.scan_limit}};
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path.string());
    try {
        return config_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

std::vector<std::string> builtin_experiment_names()
{
    return {"paper-chain", "desk-density", "depolignac-audit", "open-question"};
}

ExperimentConfig builtin_experiment(std::string_view name)
{
    ExperimentConfig c;
    c.name = std::string(name);
    c.budgets = default_budgets();
    if (name == "paper-chain") {
        c.pipeline = "paper-chain";
        c.schedule = GrowthSchedule::paper();
        c.x_grid = {"2^20", "2^100", "2^600", "2^1000"};
    } else if (name == "desk-density") {
        c.pipeline = "desk-density";
        c.schedule = GrowthSchedule::polynomial();
        c.x_grid = {"1000", "10000", "100000", "1000000"};
    } else if (name == "depolignac-audit") {
        c.pipeline = "depolignac-audit";
        c.schedule = GrowthSchedule::polynomial();
        c.x_grid = {"100000", "1000000"};
        c.scan_limit = 30'000'000;
    } else if (name == "open-question") {
        c.pipeline = "open-question";
        c.schedule = GrowthSchedule::polynomial();
        c.x_grid = {"1000", "10000", "100000", "1000000"};
    } else {
        throw ConfigError("unknown experiment '" + std::string(name) + "'");
    }
    return c;
}

json to_json(const ResultRecord& r)
{
    return {{"version", r.version},
            {"command", r.command},
            {"config", r.config},
            {"payload", r.payload},
            {"timing_ms", r.timing_ms}};
}

ResultRecord record_from_json(const json& j)
{
    try {
        ResultRecord r;
        r.version = j.at("version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.config = j.at("config");
        r.payload = j.at("payload");
        r.timing_ms = j.at("timing_ms").get<std::map<std::string, double>>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed result record: ") + e.what());
    }
}

ResultRecord run_experiment(const ExperimentConfig& config)
{
    ResultRecord rec;
    rec.version = ROMANOV_VERSION;
    rec.command = "experiment run " + config.name;
    rec.config = to_json(config);
    Stopwatch sw;
    const std::string& p = config.pipeline;
    if (p == "paper-chain")
        rec.payload = run_paper_chain(config, rec, sw);
    else if (p == "desk-density")
        rec.payload = run_desk_density(config, rec, sw);
    else if (p == "depolignac-audit")
        rec.payload = run_depolignac(config, rec, sw);
    else if (p == "open-question" || p == "ratio-scan")
        rec.payload = run_ratio(config, rec, sw);
    else if (p == "count-b")
        rec.payload = run_count_b(config);
    else if (p == "sumset")
        rec.payload = run_sumset(config);
    else
        throw ConfigError("unknown pipeline '" + p + "'");
    rec.timing_ms["total"] = sw.lap_ms();
    return rec;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct ScheduleOptions {
    std::string kind;
    unsigned degree = 2;
    std::vector<std::uint64_t> exponents;

    GrowthSchedule build() const
    {
        try {
            if (kind == "paper")
                return GrowthSchedule::paper();
            if (kind == "polynomial")
                return GrowthSchedule::polynomial(degree);
            return GrowthSchedule::custom(exponents);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid schedule: ") + e.what());
        }
    }
};

void add_schedule(CLI::App* cmd, ScheduleOptions& s, const std::string& default_kind)
{
    s.kind = default_kind;
    cmd->add_option("--schedule", s.kind, "Growth schedule")
        ->check(CLI::IsMember({"paper", "polynomial", "custom"}))
        ->capture_default_str();
    cmd->add_option("--degree", s.degree, "Polynomial schedule degree")->capture_default_str();
    cmd->add_option("--exponents", s.exponents, "Custom schedule exponents e(1), e(2), ...")->delimiter(',');
}

std::vector<std::uint64_t> parse_list(const std::string& text, std::string_view what)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!trim(item).empty())
            out.push_back(parse_u64(item, what));
    }
    return out;
}

CoveringSystem covering_from_option(const std::string& path)
{
    return load_covering_system(path.empty() ? config_dir() / "erdos_covering.json" : std::filesystem::path(path));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact audits of the 2^a + b block-set counterexample and related experiments", "romanov"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write the report to a file instead of stdout");

    std::string x_text;
    ScheduleOptions count_b_sched, bounds_sched, sumset_sched, ratio_sched;
    std::uint64_t cap = 0;

    auto* count_b = app.add_subcommand("count-b", "Exact B(x), the block lower bound and the conjecture ratio");
    add_schedule(count_b, count_b_sched, "paper");
    count_b->add_option("--x", x_text, "x (decimal, 2^N or 2^(2^N))")->required();

    auto* bounds = app.add_subcommand("bounds", "Analytic bound chain at x without enumeration");
    add_schedule(bounds, bounds_sched, "paper");
    bounds->add_option("--x", x_text, "x (decimal, 2^N or 2^(2^N))")->required();

    auto* sumset = app.add_subcommand("sumset", "Enumerate C(x), split S1/S2 and compare with the bounds");
    add_schedule(sumset, sumset_sched, "polynomial");
    sumset->add_option("--x", x_text, "x (enumeration scale)")->required();
    sumset->add_option("--cap", cap, "Enumeration cap (default 10^8 or ROMANOV_ENUM_CAP)");

    std::string grid_text;
    auto* ratio = app.add_subcommand("ratio-scan", "C(x)/B(x) along a grid");
    add_schedule(ratio, ratio_sched, "polynomial");
    ratio->add_option("--grid", grid_text, "Comma-separated ascending x values")->required();
    ratio->add_option("--cap", cap, "Enumeration cap");

    std::string primes_text;
    std::size_t j = 0;
    auto* sieve = app.add_subcommand("sieve-count", "Legendre count of c <= x coprime to a set of primes");
    sieve->add_option("--x", x_text, "x")->required();
    auto* primes_opt = sieve->add_option("--primes", primes_text, "Comma-separated distinct primes");
    auto* j_opt = sieve->add_option("--j", j, "Use the first j odd primes");
    primes_opt->excludes(j_opt);

    bool include_two = false;
    auto* mertens = app.add_subcommand("mertens", "Exact product of (1 - 1/p) over the first j odd primes");
    mertens->add_option("--j", j, "Number of odd primes")->required();
    mertens->add_flag("--include-two", include_two, "Also multiply by 1/2");

    auto* cheb = app.add_subcommand("chebyshev", "theta(p_j) against 2 j log j");
    cheb->add_option("--j", j, "Odd prime index")->required();

    std::string system_path;
    auto* covering = app.add_subcommand("covering", "Covering congruence systems");
    covering->require_subcommand(1);
    auto* cov_verify = covering->add_subcommand("verify", "Check that the system covers every residue");
    cov_verify->add_option("--system", system_path, "Covering system JSON (default: shipped Erdős system)");
    auto* cov_crt = covering->add_subcommand("crt", "Build the odd progression certificate");
    cov_crt->add_option("--system", system_path, "Covering system JSON (default: shipped Erdős system)");

    std::string limit_text;
    unsigned k_min = 1;
    auto* depol = app.add_subcommand("depolignac", "Progressions of odd numbers not of the form p + 2^k");
    depol->require_subcommand(1);
    auto* depol_scan = depol->add_subcommand("scan", "Brute-force audit of a certificate progression");
    depol_scan->add_option("--system", system_path, "Covering system JSON (default: shipped Erdős system)");
    depol_scan->add_option("--limit", limit_text, "Scan members up to this bound")->required();
    depol_scan->add_option("--k-min", k_min, "Smallest power of two exponent")->capture_default_str();

    auto* romanov = app.add_subcommand("romanov-density", "Fraction of odd n <= limit of the form p + 2^k");
    romanov->add_option("--limit", limit_text, "Upper bound")->required();
    romanov->add_option("--k-min", k_min, "Smallest power of two exponent")->capture_default_str();

    std::string experiment_target;
    auto* experiment = app.add_subcommand("experiment", "Named and file-based experiments");
    experiment->require_subcommand(1);
    auto* exp_run = experiment->add_subcommand("run", "Run a built-in experiment or a config file");
    exp_run->add_option("target", experiment_target, "Experiment name or config path")->required();
    auto* exp_list = experiment->add_subcommand("list", "List built-in experiments");

    std::vector<std::string> argv_store;
    argv_store.push_back("romanov");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        ResultRecord rec;
        rec.version = ROMANOV_VERSION;
        json echo = json::object();
        Stopwatch sw;
        Budgets budgets = default_budgets();
        if (cap)
            budgets.enumeration_cap = cap;

        if (exp_list->parsed()) {
            for (const auto& n : builtin_experiment_names())
                out << n << '\n';
            return 0;
        }

        if (count_b->parsed()) {
            rec.command = "count-b";
            const BigInt x = parse_power_expr(x_text);
            const BlockSet set = BlockSet::covering(count_b_sched.build(), x);
            echo = {{"schedule", to_json(set.schedule())}, {"x", x_text}};
            rec.payload = to_json(conjecture_ratio(x, set));
        } else if (bounds->parsed()) {
            rec.command = "bounds";
            const BigInt x = parse_power_expr(x_text);
            const BlockSet set = BlockSet::covering(bounds_sched.build(), x);
            echo = {{"schedule", to_json(set.schedule())}, {"x", x_text}};
            rec.payload = analytic_bounds(x, set);
        } else if (sumset->parsed()) {
            rec.command = "sumset";
            const std::uint64_t x = parse_u64(x_text, "x");
            const BlockSet set = BlockSet::covering(sumset_sched.build(), BigInt(static_cast<unsigned long>(x)));
            echo = {{"schedule", to_json(set.schedule())}, {"x", x_text}, {"cap", budgets.enumeration_cap}};
            rec.payload = sumset_row(x, set, budgets);
        } else if (ratio->parsed()) {
            rec.command = "ratio-scan";
            ExperimentConfig c;
            c.name = "ratio-scan";
            c.pipeline = "ratio-scan";
            c.schedule = ratio_sched.build();
            c.budgets = budgets;
            for (auto v : parse_list(grid_text, "grid value"))
                c.x_grid.push_back(std::to_string(v));
            echo = {{"schedule", to_json(c.schedule)}, {"grid", c.x_grid}, {"cap", budgets.enumeration_cap}};
            ResultRecord inner;
            rec.payload = run_ratio(c, inner, sw);
        } else if (sieve->parsed()) {
            rec.command = "sieve-count";
            const BigInt x = parse_power_expr(x_text);
            std::vector<std::uint64_t> ps;
            if (*j_opt) {
                const PrimeTable t = table_with_odd_primes(j);
                auto span = t.first_odd(j);
                ps.assign(span.begin(), span.end());
            } else {
                ps = parse_list(primes_text, "prime");
                for (auto p : ps) {
                    if (!is_prime_u64(p))
                        throw ConfigError(std::to_string(p) + " is not prime");
                }
                auto sorted = ps;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    throw ConfigError("primes must be distinct");
            }
            echo = {{"x", x_text}, {"primes", ps}};
            rec.payload = {{"x", to_json(x)}, {"primes", ps}, {"count", to_json(legendre_count(x, ps))}};
        } else if (mertens->parsed()) {
            rec.command = "mertens";
            const PrimeTable t = table_with_odd_primes(j);
            const ExactRational q = mertens_product(j, t, include_two);
            echo = {{"j", j}, {"include_two", include_two}};
            rec.payload = {{"j", j},
                           {"p_j", t.odd_prime(j)},
                           {"include_two", include_two},
                           {"product", to_json(q)},
                           {"product_approx", q.to_double()},
                           {"scaled_by_log_p_j", q.to_double() * std::log(static_cast<double>(t.odd_prime(j)))}};
        } else if (cheb->parsed()) {
            rec.command = "chebyshev";
            const PrimeTable t = table_with_odd_primes(j);
            echo = {{"j", j}};
            rec.payload = to_json(check_chebyshev(j, t));
        } else if (cov_verify->parsed()) {
            rec.command = "covering verify";
            const CoveringSystem s = covering_from_option(system_path);
            echo = {{"system", to_json(s)}};
            rec.payload = to_json(covering_verify(s));
        } else if (cov_crt->parsed()) {
            rec.command = "covering crt";
            const CoveringSystem s = covering_from_option(system_path);
            echo = {{"system", to_json(s)}};
            rec.payload = to_json(crt_combine(s));
        } else if (depol_scan->parsed()) {
            rec.command = "depolignac scan";
            const CoveringSystem s = covering_from_option(system_path);
            const std::uint64_t limit = parse_u64(limit_text, "limit");
            const APCertificate cert = crt_combine(s);
            echo = {{"system", to_json(s)}, {"limit", limit}, {"k_min", k_min}};
            rec.payload = {{"certificate", to_json(cert)}, {"scan", to_json(ap_scan(cert, limit, k_min))}};
        } else if (romanov->parsed()) {
            rec.command = "romanov-density";
            const std::uint64_t limit = parse_u64(limit_text, "limit");
            echo = {{"limit", limit}, {"k_min", k_min}};
            rec.payload = to_json(romanov_density_scan(limit, k_min));
        } else if (exp_run->parsed()) {
            const auto names = builtin_experiment_names();
            const ExperimentConfig c = std::find(names.begin(), names.end(), experiment_target) != names.end()
                                           ? builtin_experiment(experiment_target)
                                           : load_config(experiment_target);
            rec = run_experiment(c);
            if (!app.get_option("--format")->count())
                format = c.output.format;
            if (out_path.empty())
                out_path = c.output.path;
        }
        if (!exp_run->parsed()) {
            rec.config = echo;
            rec.timing_ms["total"] = sw.lap_ms();
        }

        std::string text;
        if (format == "csv") {
            const json& p = rec.payload;
            text = to_csv(p.is_object() && p.contains("rows") ? p.at("rows") : p);
        } else {
            text = to_json(rec).dump(2) + "\n";
        }
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path);
            if (!f)
                throw ConfigError("cannot write " + out_path);
            f << text;
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace romanov
