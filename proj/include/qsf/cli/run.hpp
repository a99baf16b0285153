#pragma once

// Configuration, check registry and run manifests for the qsf tool.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <qsf/five/checks.hpp>

namespace qsf::cli {

inline constexpr const char* tool_version = "1.0.0";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Format { text, json };

struct Config {
    int max_degree = 6;
    int series_order = 5;
    std::string setup = "both"; // 1, 2 or both
    std::string cache_dir;      // empty: tables stay in memory
    int jobs = 1;
    Format format = Format::text;
    std::vector<std::string> pairs{"1,0:0,1"};

    void validate() const
    {
        if (max_degree < 1 || max_degree > 10) throw UsageError("--max-deg must be in 1..10");
        if (series_order < 1 || series_order > max_degree) throw UsageError("--series-order must be in 1..max-deg");
        if (setup != "1" && setup != "2" && setup != "both") throw UsageError("--setup must be 1, 2 or both");
        if (jobs < 1) throw UsageError("--jobs must be positive");
    }

    std::vector<Setup> setups() const
    {
        if (setup == "1") return {Setup::one};
        if (setup == "2") return {Setup::two};
        return {Setup::one, Setup::two};
    }

    friend bool operator==(const Config&, const Config&) = default;
};

struct RunManifest {
    std::string version = tool_version;
    Config config;
    std::vector<CheckReport> checks;

    std::string status() const
    {
        for (const auto& c : checks) {
            if (c.error) return "error";
        }
        for (const auto& c : checks) {
            if (!c.pass) return "fail";
        }
        return "pass";
    }

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

// ---- JSON --------------------------------------------------------------

inline nlohmann::json to_json(const Mismatch& m)
{
    return {{"u_exp", m.u_exp}, {"v_exp", m.v_exp}, {"partition", to_string(m.partition)}, {"lhs", m.lhs}, {"rhs", m.rhs}};
}

inline Mismatch mismatch_from_json(const nlohmann::json& j)
{
    return {j.at("u_exp").get<int>(), j.at("v_exp").get<int>(), parse_partition(j.at("partition").get<std::string>()),
            j.at("lhs").get<std::string>(), j.at("rhs").get<std::string>()};
}

inline nlohmann::json to_json(const CheckReport& r)
{
    nlohmann::json mm = nlohmann::json::array();
    for (const auto& m : r.mismatches) mm.push_back(to_json(m));
    return {{"name", r.name}, {"params", r.params}, {"window", r.window},   {"status", r.status()},
            {"mismatches", mm}, {"millis", r.millis}, {"notes", r.notes}};
}

inline CheckReport report_from_json(const nlohmann::json& j)
{
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.window = j.at("window").get<int>();
    const std::string status = j.at("status").get<std::string>();
    if (status != "pass" && status != "fail" && status != "error") throw std::invalid_argument("bad status '" + status + "'");
    r.pass = status == "pass";
    r.error = status == "error";
    for (const auto& m : j.at("mismatches")) r.mismatches.push_back(mismatch_from_json(m));
    r.millis = j.at("millis").get<long long>();
    r.notes = j.value("notes", std::vector<std::string>{});
    return r;
}

inline nlohmann::json to_json(const Config& c)
{
    return {{"max_degree", c.max_degree}, {"series_order", c.series_order}, {"setup", c.setup}, {"cache_dir", c.cache_dir},
            {"jobs", c.jobs}, {"format", c.format == Format::json ? "json" : "text"}, {"pairs", c.pairs}};
}

inline Config config_from_json(const nlohmann::json& j)
{
    Config c;
    c.max_degree = j.at("max_degree").get<int>();
    c.series_order = j.at("series_order").get<int>();
    c.setup = j.at("setup").get<std::string>();
    c.cache_dir = j.at("cache_dir").get<std::string>();
    c.jobs = j.at("jobs").get<int>();
    c.format = j.at("format").get<std::string>() == "json" ? Format::json : Format::text;
    c.pairs = j.at("pairs").get<std::vector<std::string>>();
    return c;
}

inline nlohmann::json to_json(const RunManifest& m)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : m.checks) checks.push_back(to_json(r));
    return {{"version", m.version}, {"config", to_json(m.config)}, {"checks", checks}, {"status", m.status()}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j)
{
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.config = config_from_json(j.at("config"));
    for (const auto& r : j.at("checks")) m.checks.push_back(report_from_json(r));
    return m;
}

inline std::string format_json(const RunManifest& m) { return to_json(m).dump(2) + "\n"; }

inline RunManifest parse_json(const std::string& text) { return manifest_from_json(nlohmann::json::parse(text)); }

inline std::string format_text(const RunManifest& m)
{
    std::ostringstream os;
    for (const auto& r : m.checks) {
        os << r.name;
        for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
        os << ": " << r.status() << " (window " << r.window << ", " << r.mismatches.size() << " mismatches, " << r.millis << " ms)\n";
        for (const auto& n : r.notes) os << "  note: " << n << '\n';
        for (const auto& x : r.mismatches) {
            os << "  mismatch u^" << x.u_exp << " v^" << x.v_exp << " at " << to_string(x.partition) << "\n    lhs: " << x.lhs
               << "\n    rhs: " << x.rhs << '\n';
        }
    }
    os << "overall: " << m.status() << '\n';
    return os.str();
}

// ---- checks ------------------------------------------------------------

// One unit of work. Jobs share the workspace, whose caches are locked.
struct Job {
    std::string name;
    std::map<std::string, std::string> params;
    std::function<std::vector<CheckReport>(Workspace&, TBuilder&)> run;
};

inline const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"conj6",           "five-term",       "generating",  "w-props",  "polynomiality",
                                                "glue-commutators", "setup2-duality", "dn-calculus", "macdonald"};
    return names;
}

inline std::pair<std::pair<int, int>, std::pair<int, int>> parse_pair_spec(const std::string& s)
{
    int m, n, m2, n2;
    char c1, c2, c3;
    std::istringstream is(s);
    if (!(is >> m >> c1 >> n >> c2 >> m2 >> c3 >> n2) || c1 != ',' || c2 != ':' || c3 != ',' || !is.eof()) {
        throw UsageError("bad --pairs entry '" + s + "', expected m,n:m',n'");
    }
    if (m < 0 || n < 0 || m2 < 0 || n2 < 0 || m * n2 - m2 * n != 1) throw UsageError("--pairs entry '" + s + "' needs m n' - m' n = 1");
    return {{m, n}, {m2, n2}};
}

inline std::vector<Job> make_jobs(const std::string& name, const Config& cfg)
{
    const int N = cfg.max_degree, V = cfg.series_order;
    std::vector<Job> jobs;
    auto one = [&](std::string n, std::function<CheckReport(Workspace&, TBuilder&)> f, std::map<std::string, std::string> params = {}) {
        jobs.push_back({std::move(n), std::move(params), [f](Workspace& ws, TBuilder& tb) { return std::vector<CheckReport>{f(ws, tb)}; }});
    };
    if (name == "all") {
        for (const auto& n : check_names()) {
            auto more = make_jobs(n, cfg);
            jobs.insert(jobs.end(), more.begin(), more.end());
        }
    } else if (name == "conj6") {
        one(name, [N](Workspace& ws, TBuilder&) { return verify_conj6(ws, N); });
    } else if (name == "five-term") {
        for (const auto& spec : cfg.pairs) {
            const auto [a, b] = parse_pair_spec(spec);
            for (Setup s : cfg.setups()) {
                one(name, [a, b, s](Workspace&, TBuilder& tb) { return verify_five_term(tb, a.first, a.second, b.first, b.second, s); },
                    {{"pair", spec}, {"setup", std::to_string(static_cast<int>(s))}});
            }
        }
    } else if (name == "generating") {
        one(name, [](Workspace&, TBuilder& tb) { return verify_generating(tb); });
    } else if (name == "w-props") {
        one(name, [V](Workspace& ws, TBuilder&) { return verify_w_props(ws, std::min(4, V), std::min(3, V)); });
    } else if (name == "polynomiality") {
        const std::vector<std::pair<std::string, std::function<SymFunc<QtRat>(int)>>> fs{
            {"h1", [](int n) { return sym_h(1, n); }},
            {"h2", [](int n) { return sym_h(2, n); }},
            {"h3", [](int n) { return sym_h(3, n); }},
            {"e2", [](int n) { return sym_e(2, n); }}};
        for (const auto& [label, f] : fs) {
            const int d = label[1] - '0';
            if (d > V) continue;
            one(name, [label, f, N](Workspace& ws, TBuilder&) { return verify_polynomiality(ws, f(N), label); }, {{"F", label}});
        }
    } else if (name == "glue-commutators") {
        one(name, [V](Workspace&, TBuilder& tb) { return verify_glue_and_commutators(tb, std::min(3, V)); });
    } else if (name == "setup2-duality") {
        one(name, [](Workspace&, TBuilder& tb) { return verify_setup2_duality(tb); });
    } else if (name == "dn-calculus") {
        one(name, [](Workspace& ws, TBuilder&) { return verify_dn_calculus(ws); });
    } else if (name == "macdonald") {
        one(name, [](Workspace& ws, TBuilder&) { return verify_macdonald(ws); });
    } else {
        throw UsageError("unknown check '" + name + "'");
    }
    return jobs;
}

inline MacdonaldStore make_store(const Config& cfg)
{
    if (cfg.cache_dir.empty()) return MacdonaldStore();
    std::filesystem::create_directories(cfg.cache_dir);
    return MacdonaldStore(std::filesystem::path(cfg.cache_dir));
}

/// Runs the named check (or "all") with cfg.jobs workers. Reports come back in
/// job order whatever the schedule. A WindowError inside a job becomes an
/// error report naming the step.
inline RunManifest run_checks(const std::string& name, const Config& cfg, MacdonaldStore& store, Conventions conv = {})
{
    cfg.validate();
    const std::vector<Job> jobs = make_jobs(name, cfg);
    std::vector<std::vector<CheckReport>> out(jobs.size());
    std::atomic<std::size_t> next{0};
    Workspace ws(store, cfg.max_degree, cfg.series_order, conv);
    TBuilder tb(ws);
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                out[i] = jobs[i].run(ws, tb);
            } catch (const WindowError& e) {
                CheckReport r;
                r.name = jobs[i].name;
                r.params = jobs[i].params;
                r.error = true;
                r.notes.push_back(e.what());
                out[i] = {r};
            }
        }
    };
    const int threads = std::min<int>(cfg.jobs, static_cast<int>(jobs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    RunManifest m;
    m.config = cfg;
    for (auto& v : out) {
        for (auto& r : v) m.checks.push_back(std::move(r));
    }
    return m;
}

// ---- show --------------------------------------------------------------

inline Partition checked_partition(const std::string& s, int N)
{
    Partition l;
    try {
        l = parse_partition(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (l.size() > N) throw UsageError("partition " + s + " has size above --max-deg " + std::to_string(N));
    return l;
}

/// Expansion printed by `show`: macdonald and nabla take a partition, bstat a
/// partition, toperator a pair m,n.
inline std::string show(const std::string& object, const std::string& arg, Basis basis, const Config& cfg, MacdonaldStore& store)
{
    cfg.validate();
    const int N = cfg.max_degree;
    Workspace ws(store, N, cfg.series_order);
    if (object == "bstat") return format(QtRat(cell_stats(checked_partition(arg, N)).b_poly)) + "\n";
    if (object == "macdonald") {
        const Partition l = checked_partition(arg, N);
        return format(ws.from_htilde(SymFunc<QtRat>::element(Basis::htilde, l, N), basis)) + "\n";
    }
    if (object == "nabla") {
        const Partition l = checked_partition(arg, N);
        const auto f = SymFunc<QtRat>::element(Basis::schur, l, N);
        return format(ws.from_htilde(ws.to_htilde(ws.apply(ws.nabla(false), f)), basis)) + "\n";
    }
    if (object == "toperator") {
        int m, n;
        char comma;
        std::istringstream is(arg);
        if (!(is >> m >> comma >> n) || comma != ',' || !is.eof() || m < 0 || n < 0 || std::gcd(m, n) != 1) {
            throw UsageError("toperator needs a coprime pair m,n");
        }
        std::ostringstream os;
        for (Setup setup : cfg.setups()) {
            TBuilder tb(ws);
            const TSeries& t = tb.build(m, n, setup);
            os << "T_{" << m << "," << n << "} setup " << static_cast<int>(setup) << ", window " << t.trace.window;
            if (!t.trace.word.empty()) {
                os << ", from T_{" << t.trace.base.first << "," << t.trace.base.second << "} by";
                for (const auto& w : t.trace.word) os << ' ' << w;
            }
            os << '\n';
            for (const auto& [key, op] : t.series.coeffs()) {
                for (int d = 0; d <= N; ++d) {
                    if (!op.valid(d)) continue;
                    for (const auto& l : partitions_of(d)) {
                        const auto img = ws.apply(op, SymFunc<QtRat>::element(basis, l, N));
                        if (img.is_zero()) continue;
                        os << "u^" << key.first << " v^" << key.second << ": " << basis_letter(basis) << '[' << (l.empty() ? "" : to_string(l))
                           << "] -> " << format(img) << '\n';
                    }
                }
            }
        }
        return os.str();
    }
    throw UsageError("unknown object '" + object + "'");
}

inline int exit_code(const RunManifest& m)
{
    const std::string s = m.status();
    return s == "pass" ? 0 : s == "fail" ? 1 : 3;
}

} // namespace qsf::cli
