#pragma once

// On-disk tables, one file per degree:
//
//   QSF1 degree=<d> basis=schur order=revlex
//   <lambda> : <mu> : <scalar>        (every entry, partitions in table order)

#include <array>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <qsf/mac/htilde.hpp>

namespace qsf {

struct CacheError : std::runtime_error {
    CacheError(std::string file_, std::size_t line_, const std::string& what)
        : std::runtime_error(file_ + ":" + std::to_string(line_) + ": " + what), file(std::move(file_)), line(line_)
    {
    }
    std::string file;
    std::size_t line;
};

inline std::string cache_file_name(int d) { return "htilde_d" + std::to_string(d) + ".qsf"; }

inline std::string cache_header(int d)
{
    return "QSF1 degree=" + std::to_string(d) + " basis=schur order=revlex";
}

inline std::string serialize_table(const MacdonaldTable& t)
{
    const auto& parts = partitions_of(t.degree);
    std::string out = cache_header(t.degree) + "\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
            out += to_string(parts[i]) + " : " + to_string(parts[j]) + " : " + format(t.to_schur(i, j)) + "\n";
        }
    }
    return out;
}

inline std::vector<std::string> split_lines(const std::string& text)
{
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

inline MacdonaldTable parse_table(const std::string& text, int d, const std::string& file)
{
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != cache_header(d)) throw CacheError(file, 1, "bad header");
    const auto& parts = partitions_of(d);
    const std::size_t n = parts.size();
    if (lines.size() != n * n + 1) throw CacheError(file, std::min(lines.size(), n * n + 1), "wrong number of entries");
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t ln = 1 + i * n + j;
            const std::string& line = lines[ln];
            const std::string prefix = to_string(parts[i]) + " : " + to_string(parts[j]) + " : ";
            if (line.compare(0, prefix.size(), prefix) != 0) throw CacheError(file, ln + 1, "unexpected partition labels");
            try {
                m(i, j) = parse_qt(line.substr(prefix.size()));
            } catch (const ParseError& e) {
                throw CacheError(file, ln + 1, e.what());
            }
        }
        if (!m(i, 0).is_one()) throw CacheError(file, 2 + i * n, "row is not normalized");
    }
    try {
        return finish_table(d, std::move(m));
    } catch (const SingularMatrix&) {
        throw CacheError(file, 2, "singular table");
    }
}

inline std::optional<std::string> read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Write to a temporary name in the same directory, then rename over the target.
inline void write_file_atomic(const std::filesystem::path& p, const std::string& content)
{
    std::filesystem::create_directories(p.parent_path());
    std::filesystem::path tmp = p;
    tmp += ".tmp" + std::to_string(std::hash<std::string>{}(content) & 0xffff);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

/// Tables for degrees 0..max, computed on first use and optionally cached on disk.
class MacdonaldStore
{
public:
    static constexpr int max_degree = 12;

    explicit MacdonaldStore(std::optional<std::filesystem::path> dir = std::nullopt) : dir_(std::move(dir)) {}

    const std::optional<std::filesystem::path>& cache_dir() const { return dir_; }

    const MacdonaldTable& table(int d)
    {
        if (d < 0 || d > max_degree) throw std::out_of_range("Macdonald table degree out of range");
        Slot& s = slots_[d];
        std::call_once(s.once, [&] { s.table = std::make_unique<MacdonaldTable>(load_or_compute(d)); });
        return *s.table;
    }

private:
    struct Slot {
        std::once_flag once;
        std::unique_ptr<MacdonaldTable> table;
    };
    std::optional<std::filesystem::path> dir_;
    std::array<Slot, max_degree + 1> slots_;

    MacdonaldTable load_or_compute(int d)
    {
        if (dir_) {
            const auto path = *dir_ / cache_file_name(d);
            if (auto text = read_file(path)) return parse_table(*text, d, path.string());
        }
        MacdonaldTable t = compute_htilde_table(d);
        if (dir_) write_file_atomic(*dir_ / cache_file_name(d), serialize_table(t));
        return t;
    }
};

/// Writes degree files 0..max_degree (recomputing them).
inline void cache_build(const std::filesystem::path& dir, int max_degree)
{
    for (int d = 0; d <= max_degree; ++d) write_file_atomic(dir / cache_file_name(d), serialize_table(compute_htilde_table(d)));
}

/// Recomputes every degree file present for 0..max_degree and compares byte for
/// byte; throws CacheError at the first differing line. Returns the number of files checked.
inline int cache_verify(const std::filesystem::path& dir, int max_degree)
{
    int checked = 0;
    for (int d = 0; d <= max_degree; ++d) {
        const auto path = dir / cache_file_name(d);
        const auto text = read_file(path);
        if (!text) throw CacheError(path.string(), 0, "missing");
        const auto want = split_lines(serialize_table(compute_htilde_table(d)));
        const auto have = split_lines(*text);
        for (std::size_t i = 0; i < std::max(want.size(), have.size()); ++i) {
            if (i >= want.size() || i >= have.size() || want[i] != have[i]) {
                throw CacheError(path.string(), i + 1, "differs from recomputed table");
            }
        }
        if (text->empty() || text->back() != '\n') throw CacheError(path.string(), have.size(), "missing final newline");
        ++checked;
    }
    return checked;
}

/// Removes every cache file in dir. Returns the number removed.
inline int cache_clear(const std::filesystem::path& dir)
{
    int removed = 0;
    if (!std::filesystem::exists(dir)) return 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("htilde_d", 0) == 0 && entry.path().extension() == ".qsf") {
            std::filesystem::remove(entry.path());
            ++removed;
        }
    }
    return removed;
}

} // namespace qsf
