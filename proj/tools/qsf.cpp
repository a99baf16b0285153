#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <qsf/cli/run.hpp>

using namespace qsf;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, internal = 3 };

int emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return ok;
    }
    std::ofstream f(out, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "qsf: cannot write " << out << '\n';
        return internal;
    }
    return ok;
}

std::filesystem::path require_cache_dir(const cli::Config& cfg)
{
    if (cfg.cache_dir.empty()) throw cli::UsageError("cache commands need --cache-dir or QSF_CACHE_DIR");
    return cfg.cache_dir;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks of five-term relations for Delta operators on symmetric functions", "qsf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cli::tool_version);

    cli::Config cfg;
    std::string format = "text", out, basis_name = "schur";
    std::vector<std::string> pairs;
    app.add_option("--max-deg", cfg.max_degree, "Highest degree N of the truncated space")->capture_default_str();
    auto* order = app.add_option("--series-order", cfg.series_order, "Highest exponent V of u and v (default min(5, N))");
    app.add_option("--setup", cfg.setup, "Generators: 1, 2 or both")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "Directory of Macdonald tables (default $QSF_CACHE_DIR)");
    app.add_option("--jobs", cfg.jobs, "Worker threads for independent checks")->capture_default_str();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--out", out, "Write the report here instead of stdout");
    app.add_option("--pairs", pairs, "five-term pairs m,n:m',n' (repeatable)");
    app.add_option("--basis", basis_name, "Basis for show")->capture_default_str();

    std::string check;
    auto* verify = app.add_subcommand("verify", "Run a check, or all of them");
    verify->add_option("check", check, "Check name or all")->required();
    verify->fallthrough();

    std::string object, arg;
    auto* show = app.add_subcommand("show", "Print an expansion");
    show->add_option("object", object, "macdonald, nabla, bstat or toperator")->required();
    show->add_option("argument", arg, "Partition such as 2,1, or a pair m,n")->required();
    show->fallthrough();

    std::string action;
    auto* cache = app.add_subcommand("cache", "Manage the Macdonald table cache");
    cache->add_option("action", action, "build, verify or clear")->required()->check(CLI::IsMember({"build", "verify", "clear"}));
    cache->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    if (cfg.cache_dir.empty()) {
        if (const char* env = std::getenv("QSF_CACHE_DIR")) cfg.cache_dir = env;
    }
    if (order->count() == 0) cfg.series_order = std::min(cfg.series_order, cfg.max_degree);
    cfg.format = format == "json" ? cli::Format::json : cli::Format::text;
    if (!pairs.empty()) cfg.pairs = pairs;

    try {
        cfg.validate();
        if (verify->parsed()) {
            MacdonaldStore store = cli::make_store(cfg);
            const cli::RunManifest m = cli::run_checks(check, cfg, store);
            const int written = emit(cfg.format == cli::Format::json ? cli::format_json(m) : cli::format_text(m), out);
            if (written != ok) return written;
            for (const auto& r : m.checks) {
                if (r.error) {
                    for (const auto& n : r.notes) std::cerr << "qsf: " << r.name << ": " << n << '\n';
                }
            }
            return cli::exit_code(m);
        }
        if (show->parsed()) {
            MacdonaldStore store = cli::make_store(cfg);
            Basis basis;
            try {
                basis = parse_basis(basis_name);
            } catch (const std::invalid_argument& e) {
                throw cli::UsageError(e.what());
            }
            return emit(cli::show(object, arg, basis, cfg, store), out);
        }
        const auto dir = require_cache_dir(cfg);
        if (action == "build") {
            std::filesystem::create_directories(dir);
            cache_build(dir, cfg.max_degree);
            std::cout << "built degrees 0.." << cfg.max_degree << " in " << dir.string() << '\n';
        } else if (action == "verify") {
            const int n = cache_verify(dir, cfg.max_degree);
            std::cout << "verified " << n << " files\n";
        } else {
            const int n = cache_clear(dir);
            std::cout << "removed " << n << " files\n";
        }
        return ok;
    } catch (const cli::UsageError& e) {
        std::cerr << "qsf: " << e.what() << '\n';
        return usage;
    } catch (const CacheError& e) {
        std::cerr << "qsf: cache: " << e.what() << '\n';
        return internal;
    } catch (const WindowError& e) {
        std::cerr << "qsf: " << e.what() << '\n';
        return internal;
    } catch (const std::exception& e) {
        std::cerr << "qsf: internal error: " << e.what() << '\n';
        return internal;
    }
}
