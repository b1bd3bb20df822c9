#include "romanov/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "romanov/errors.hpp"

namespace romanov {

namespace {

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? to_json(*v) : json(nullptr);
}

std::optional<ExactRational> optional_rational(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return rational_from_json(j);
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename T>
T get(const json& j, const char* key)
{
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const BigInt& v) { return v.get_str(); }

BigInt bigint_from_json(const json& j)
{
    if (j.is_number_unsigned())
        return BigInt(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_integer())
        return BigInt(static_cast<long>(j.get<std::int64_t>()));
    if (!j.is_string())
        throw ConfigError("expected an integer or decimal string, got " + j.dump());
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        throw ConfigError("not a decimal integer: " + j.dump());
    return v;
}

json to_json(const ExactRational& q)
{
    return {{"num", q.numerator().get_str()}, {"den", q.denominator().get_str()}};
}

ExactRational rational_from_json(const json& j)
{
    return ExactRational(bigint_from_json(field(j, "num")), bigint_from_json(field(j, "den")));
}

json to_json(const GrowthSchedule& s)
{
    json j = {{"kind", to_string(s.kind())}};
    if (s.kind() == ScheduleKind::polynomial)
        j["degree"] = s.degree();
    if (s.kind() == ScheduleKind::custom)
        j["exponents"] = s.exponents();
    return j;
}

GrowthSchedule schedule_from_json(const json& j)
{
    const auto kind = get<std::string>(j, "kind");
    try {
        if (kind == "paper")
            return GrowthSchedule::paper();
        if (kind == "polynomial")
            return GrowthSchedule::polynomial(j.value("degree", 2u));
        if (kind == "custom")
            return GrowthSchedule::custom(get<std::vector<std::uint64_t>>(j, "exponents"));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid schedule: ") + e.what());
    }
    throw ConfigError("unknown schedule kind '" + kind + "'");
}

json to_json(const ChebyshevCheck& c)
{
    return {{"j", c.j}, {"theta", c.theta}, {"bound", c.bound}, {"holds", c.holds}};
}

json to_json(const WindowCheck& w)
{
    return {{"j", w.j}, {"lower", w.lower}, {"upper", w.upper}, {"holds", w.holds}};
}

json to_json(const BCountReport& r)
{
    return {{"x", to_json(r.x)},
            {"j", r.j},
            {"b_count", to_json(r.b_count)},
            {"lower_bound", optional_json(r.lower_bound)},
            {"lower_bound_holds", r.lower_bound_holds()},
            {"a_count", r.a_count},
            {"ratio_exact", to_json(r.ratio_exact)},
            {"conjecture_ratio", r.conjecture_ratio}};
}

BCountReport bcount_from_json(const json& j)
{
    BCountReport r;
    r.x = bigint_from_json(field(j, "x"));
    r.j = get<std::size_t>(j, "j");
    r.b_count = bigint_from_json(field(j, "b_count"));
    r.lower_bound = optional_rational(field(j, "lower_bound"));
    r.a_count = get<std::uint64_t>(j, "a_count");
    r.ratio_exact = rational_from_json(field(j, "ratio_exact"));
    r.conjecture_ratio = get<double>(j, "conjecture_ratio");
    return r;
}

json to_json(const SumsetReport& r)
{
    return {{"x", r.x},
            {"j", r.j},
            {"c_count", r.c_count},
            {"s1_count", r.s1_count},
            {"s2_count", r.s2_count},
            {"s1_overlap", r.s1_overlap},
            {"s1_coprime_violations", r.s1_coprime_violations},
            {"s1_legendre", optional_json(r.s1_legendre)},
            {"s1_bound", optional_json(r.s1_bound)},
            {"s2_bound", optional_json(r.s2_bound)},
            {"c_bound", optional_json(r.c_bound)},
            {"density", r.density},
            {"sqrt_check", r.sqrt_check}};
}

SumsetReport sumset_from_json(const json& j)
{
    SumsetReport r;
    r.x = get<std::uint64_t>(j, "x");
    r.j = get<std::size_t>(j, "j");
    r.c_count = get<std::uint64_t>(j, "c_count");
    r.s1_count = get<std::uint64_t>(j, "s1_count");
    r.s2_count = get<std::uint64_t>(j, "s2_count");
    r.s1_overlap = get<std::uint64_t>(j, "s1_overlap");
    r.s1_coprime_violations = get<std::uint64_t>(j, "s1_coprime_violations");
    if (!field(j, "s1_legendre").is_null())
        r.s1_legendre = bigint_from_json(j.at("s1_legendre"));
    r.s1_bound = optional_rational(field(j, "s1_bound"));
    r.s2_bound = optional_rational(field(j, "s2_bound"));
    r.c_bound = optional_rational(field(j, "c_bound"));
    r.density = get<double>(j, "density");
    r.sqrt_check = get<bool>(j, "sqrt_check");
    return r;
}

json to_json(const RatioPoint& r)
{
    return {{"x", r.x},
            {"b_count", to_json(r.b_count)},
            {"c_count", r.c_count},
            {"ratio", optional_json(r.ratio)}};
}

RatioPoint ratio_point_from_json(const json& j)
{
    RatioPoint r;
    r.x = get<std::uint64_t>(j, "x");
    r.b_count = bigint_from_json(field(j, "b_count"));
    r.c_count = get<std::uint64_t>(j, "c_count");
    r.ratio = optional_rational(field(j, "ratio"));
    return r;
}

json to_json(const CoveringSystem& s)
{
    json entries = json::array();
    for (const auto& e : s.entries)
        entries.push_back({{"residue", e.residue}, {"modulus", e.modulus}, {"prime", e.prime}});
    return {{"entries", entries}};
}

CoveringSystem covering_from_json(const json& j)
{
    CoveringSystem s;
    const json& entries = field(j, "entries");
    if (!entries.is_array())
        throw ConfigError("covering system 'entries' must be an array");
    for (const auto& e : entries) {
        s.entries.push_back({get<std::uint64_t>(e, "residue"), get<std::uint64_t>(e, "modulus"),
                             get<std::uint64_t>(e, "prime")});
    }
    return s;
}

CoveringSystem load_covering_system(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open covering system " + path.string());
    try {
        return covering_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

json to_json(const CoverResult& r)
{
    return {{"covers", r.covers}, {"lcm", r.lcm}, {"uncovered", r.uncovered}};
}

json to_json(const APCertificate& c)
{
    return {{"residue", to_json(c.residue)},
            {"modulus", to_json(c.modulus)},
            {"source", to_json(c.source)}};
}

APCertificate certificate_from_json(const json& j)
{
    return {bigint_from_json(field(j, "residue")), bigint_from_json(field(j, "modulus")),
            covering_from_json(field(j, "source"))};
}

json to_json(const ScanReport& r)
{
    json ex = json::array();
    for (const auto& e : r.exceptions)
        ex.push_back({{"n", e.n}, {"p", e.p}, {"k", e.k}});
    return {{"limit", r.limit},
            {"members_scanned", r.members_scanned},
            {"exceptions", ex},
            {"exception_count", r.exceptions.size()},
            {"cover_failures", r.cover_failures},
            {"representable", r.representable},
            {"representable_fraction",
             r.representable_fraction ? json(*r.representable_fraction) : json(nullptr)}};
}

ScanReport scan_from_json(const json& j)
{
    ScanReport r;
    r.limit = get<std::uint64_t>(j, "limit");
    r.members_scanned = get<std::uint64_t>(j, "members_scanned");
    for (const auto& e : field(j, "exceptions"))
        r.exceptions.push_back({get<std::uint64_t>(e, "n"), get<std::uint64_t>(e, "p"), get<unsigned>(e, "k")});
    r.cover_failures = get<std::uint64_t>(j, "cover_failures");
    r.representable = get<std::uint64_t>(j, "representable");
    if (!field(j, "representable_fraction").is_null())
        r.representable_fraction = j.at("representable_fraction").get<double>();
    return r;
}

namespace {

std::string format15(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Exact value of a "%g"-style decimal string.
ExactRational decimal_value(const std::string& s)
{
    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        exp10 = std::stol(s.substr(e + 1));
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    BigInt m(mant, 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? ExactRational(m, scale) : ExactRational(BigInt(m * scale));
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void flatten(const json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& cells, bool& lossy)
{
    if (v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den")) {
        const ExactRational q = rational_from_json(v);
        if (q.is_integer()) {
            cells.emplace_back(prefix, q.numerator().get_str());
            return;
        }
        const double d = q.to_double();
        const std::string s = format15(d);
        lossy = lossy || !std::isfinite(d) || !(decimal_value(s) == q);
        cells.emplace_back(prefix, s);
        return;
    }
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), cells, lossy);
        return;
    }
    if (v.is_array()) {
        // Arrays of scalars join with ';'; anything nested is reduced to its size.
        std::string joined;
        bool scalar = true;
        for (const auto& e : v)
            scalar = scalar && e.is_primitive();
        if (!scalar) {
            cells.emplace_back(prefix + ".size", std::to_string(v.size()));
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            joined += (i ? ";" : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
        cells.emplace_back(prefix, joined);
        return;
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        const std::string s = format15(d);
        lossy = lossy || std::stod(s) != d;
        cells.emplace_back(prefix, s);
        return;
    }
    if (v.is_string()) {
        cells.emplace_back(prefix, v.get<std::string>());
        return;
    }
    cells.emplace_back(prefix, v.is_null() ? "" : v.dump());
}

}  // namespace

std::string to_csv(const json& rows)
{
    const json list = rows.is_array() ? rows : json::array({rows});
    std::vector<std::string> header;
    std::vector<std::vector<std::pair<std::string, std::string>>> table;
    std::vector<bool> lossy;
    for (const auto& row : list) {
        std::vector<std::pair<std::string, std::string>> cells;
        bool l = false;
        flatten(row, "", cells, l);
        for (const auto& [k, _] : cells) {
            if (std::find(header.begin(), header.end(), k) == header.end())
                header.push_back(k);
        }
        table.push_back(std::move(cells));
        lossy.push_back(l);
    }
    std::ostringstream out;
    for (const auto& h : header)
        out << csv_escape(h) << ',';
    out << "lossy\n";
    for (std::size_t r = 0; r < table.size(); ++r) {
        for (const auto& h : header) {
            auto it = std::find_if(table[r].begin(), table[r].end(),
                                   [&](const auto& c) { return c.first == h; });
            if (it != table[r].end())
                out << csv_escape(it->second);
            out << ',';
        }
        out << (lossy[r] ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace romanov
