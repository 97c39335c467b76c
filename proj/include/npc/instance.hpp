#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace npc {

using dist_t = std::int64_t;

inline constexpr dist_t dist_inf = std::numeric_limits<dist_t>::max() / 4;

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Customers are rows, facilities are columns. Benchmark loaders always
// produce the square case (every point is both).
struct Instance {
    std::string name;
    int m = 0;
    int n = 0;
    std::vector<dist_t> d;
    std::vector<dist_t> distinct;
    // per customer: facility ids sorted by (distance, id)
    std::vector<int> order;

    dist_t operator()(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
    const int* sorted_facilities(int i) const { return order.data() + static_cast<std::size_t>(i) * n; }
    bool square() const { return m == n; }
    dist_t max_distance() const { return distinct.empty() ? 0 : distinct.back(); }

    // -1 when v is not a distance of this instance
    int index_of(dist_t v) const {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), v);
        if (it == distinct.end() || *it != v) return -1;
        return static_cast<int>(it - distinct.begin());
    }
};

inline Instance make_instance(std::string name, int m, int n, std::vector<dist_t> d) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("instance needs at least one customer and one facility");
    if (d.size() != static_cast<std::size_t>(m) * n) throw std::invalid_argument("distance matrix has wrong size");
    for (dist_t v : d)
        if (v < 0) throw std::invalid_argument("negative distance");
    Instance inst;
    inst.name = std::move(name);
    inst.m = m;
    inst.n = n;
    inst.d = std::move(d);
    inst.distinct = inst.d;
    std::sort(inst.distinct.begin(), inst.distinct.end());
    inst.distinct.erase(std::unique(inst.distinct.begin(), inst.distinct.end()), inst.distinct.end());
    inst.order.resize(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        int* row = inst.order.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] = j;
        std::stable_sort(row, row + n, [&](int a, int b) { return inst(i, a) < inst(i, b); });
    }
    return inst;
}

inline Instance make_instance(std::string name, const std::vector<std::vector<dist_t>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty distance matrix");
    int m = static_cast<int>(rows.size());
    int n = static_cast<int>(rows.front().size());
    std::vector<dist_t> flat;
    flat.reserve(static_cast<std::size_t>(m) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw std::invalid_argument("ragged distance matrix");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return make_instance(std::move(name), m, n, std::move(flat));
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class T>
std::optional<T> to_number(std::string_view tok) {
    T v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    return v;
}

}  // namespace detail

struct Edge {
    int u;
    int v;
    dist_t w;
};

struct Graph {
    int n = 0;
    std::vector<Edge> edges;
};

struct PmedFile {
    Graph graph;
    int n = 0;
    int p_file = 0;
};

inline PmedFile parse_pmed(std::string_view text) {
    auto lines = detail::split_lines(text);
    std::size_t li = 0;
    auto next_nonblank = [&]() -> std::optional<std::size_t> {
        while (li < lines.size() && detail::trim(lines[li]).empty()) ++li;
        if (li == lines.size()) return std::nullopt;
        return li++;
    };

    auto hdr = next_nonblank();
    if (!hdr) throw parse_error(1, "malformed header: empty file");
    int hline = static_cast<int>(*hdr) + 1;
    auto ht = detail::tokens(lines[*hdr]);
    if (ht.size() != 3) throw parse_error(hline, "malformed header: expected `n m p`");
    auto n = detail::to_number<long long>(ht[0]);
    auto m = detail::to_number<long long>(ht[1]);
    auto p = detail::to_number<long long>(ht[2]);
    if (!n || !m || !p || *n <= 0 || *m < 0 || *p <= 0 || *n > 1000000)
        throw parse_error(hline, "malformed header: expected positive integers `n m p`");

    PmedFile out;
    out.n = static_cast<int>(*n);
    out.p_file = static_cast<int>(*p);
    out.graph.n = out.n;
    out.graph.edges.reserve(static_cast<std::size_t>(*m));
    for (long long e = 0; e < *m; ++e) {
        auto idx = next_nonblank();
        if (!idx) throw parse_error(static_cast<int>(lines.size()), "unexpected end of file: missing edges");
        int ln = static_cast<int>(*idx) + 1;
        auto t = detail::tokens(lines[*idx]);
        if (t.size() != 3) throw parse_error(ln, "malformed edge: expected `i j cost`");
        auto a = detail::to_number<long long>(t[0]);
        auto b = detail::to_number<long long>(t[1]);
        if (!a || !b) throw parse_error(ln, "malformed edge: non-integer vertex id");
        auto c = detail::to_number<long long>(t[2]);
        if (!c) throw parse_error(ln, "non-integer cost");
        if (*a < 1 || *a > *n || *b < 1 || *b > *n) throw parse_error(ln, "vertex id out of range");
        if (*c <= 0) throw parse_error(ln, "non-positive cost");
        out.graph.edges.push_back({static_cast<int>(*a - 1), static_cast<int>(*b - 1), static_cast<dist_t>(*c)});
    }
    return out;
}

struct Point {
    double x = 0;
    double y = 0;
};

inline std::vector<Point> parse_tsplib(std::string_view text) {
    auto lines = detail::split_lines(text);
    std::optional<long long> dimension;
    std::size_t li = 0;
    bool coord_section = false;
    for (; li < lines.size(); ++li) {
        std::string_view line = detail::trim(lines[li]);
        if (line.empty()) continue;
        if (line.rfind("NODE_COORD_SECTION", 0) == 0) {
            coord_section = true;
            ++li;
            break;
        }
        if (line == "EOF") break;
        auto colon = line.find(':');
        std::string_view key = detail::trim(line.substr(0, colon));
        std::string_view val = colon == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(colon + 1));
        int ln = static_cast<int>(li) + 1;
        if (key == "EDGE_WEIGHT_TYPE") {
            if (val != "EUC_2D") throw parse_error(ln, "unsupported edge-weight type " + std::string(val));
        } else if (key == "DIMENSION") {
            dimension = detail::to_number<long long>(val);
            if (!dimension || *dimension <= 0) throw parse_error(ln, "malformed DIMENSION");
        } else if (key.find("_SECTION") != std::string_view::npos) {
            throw parse_error(ln, "unsupported section " + std::string(key));
        }
    }
    if (!coord_section) throw parse_error(static_cast<int>(lines.size()), "missing NODE_COORD_SECTION");

    std::vector<Point> pts;
    for (; li < lines.size(); ++li) {
        std::string_view line = detail::trim(lines[li]);
        if (line.empty()) continue;
        if (line == "EOF") break;
        auto t = detail::tokens(line);
        int ln = static_cast<int>(li) + 1;
        if (t.size() != 3) {
            if (!t.empty() && !detail::to_number<long long>(t[0])) break;  // next keyword section
            throw parse_error(ln, "malformed coordinate line");
        }
        auto x = detail::to_number<double>(t[1]);
        auto y = detail::to_number<double>(t[2]);
        if (!detail::to_number<long long>(t[0]) || !x || !y) throw parse_error(ln, "malformed coordinate line");
        pts.push_back({*x, *y});
    }
    if (pts.empty()) throw parse_error(static_cast<int>(lines.size()), "empty NODE_COORD_SECTION");
    if (dimension && static_cast<long long>(pts.size()) != *dimension)
        throw parse_error(static_cast<int>(lines.size()), "DIMENSION does not match number of coordinates");
    return pts;
}

// ---------------------------------------------------------------- builders

inline Instance build_graph_distances(const Graph& g, int n, std::string name = "graph") {
    if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
    std::vector<dist_t> d(static_cast<std::size_t>(n) * n, dist_inf);
    auto at = [&](int i, int j) -> dist_t& { return d[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) at(i, i) = 0;
    for (const Edge& e : g.edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw std::invalid_argument("vertex id out of range");
        if (e.u == e.v) continue;
        dist_t w = std::min(at(e.u, e.v), e.w);  // duplicates keep the lighter edge
        at(e.u, e.v) = w;
        at(e.v, e.u) = w;
    }
    // Floyd-Warshall
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            dist_t dik = at(i, k);
            if (dik >= dist_inf) continue;
            dist_t* row = &at(i, 0);
            const dist_t* krow = &at(k, 0);
            for (int j = 0; j < n; ++j)
                if (dik + krow[j] < row[j]) row[j] = dik + krow[j];
        }
    for (dist_t v : d)
        if (v >= dist_inf) throw std::runtime_error("graph is disconnected");
    return make_instance(std::move(name), n, n, std::move(d));
}

// TSPLIB nint: half-up
inline dist_t euc_2d(const Point& a, const Point& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return static_cast<dist_t>(std::floor(std::sqrt(dx * dx + dy * dy) + 0.5));
}

inline Instance build_euclidean_distances(const std::vector<Point>& pts, std::string name = "euclidean") {
    if (pts.empty()) throw std::invalid_argument("no coordinates");
    int n = static_cast<int>(pts.size());
    std::vector<dist_t> d(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = euc_2d(pts[i], pts[j]);
    return make_instance(std::move(name), n, n, std::move(d));
}

// ---------------------------------------------------------------- files

enum class Format { pmed, tsplib };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Format guess_format(std::string_view text) {
    if (text.find("NODE_COORD_SECTION") != std::string_view::npos || text.find("EDGE_WEIGHT_TYPE") != std::string_view::npos ||
        text.find("DIMENSION") != std::string_view::npos)
        return Format::tsplib;
    return Format::pmed;
}

inline std::string stem_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

struct LoadedInstance {
    Instance inst;
    Format format = Format::tsplib;
    std::optional<int> p_file;
};

inline LoadedInstance load_instance(const std::string& path, std::optional<Format> fmt = std::nullopt) {
    std::string text = read_file(path);
    LoadedInstance out;
    out.format = fmt ? *fmt : guess_format(text);
    std::string name = stem_of(path);
    if (out.format == Format::pmed) {
        PmedFile f = parse_pmed(text);
        out.inst = build_graph_distances(f.graph, f.n, name);
        out.p_file = f.p_file;
    } else {
        out.inst = build_euclidean_distances(parse_tsplib(text), name);
    }
    return out;
}

// ---------------------------------------------------------------- evaluation

inline dist_t eval_radius(const Instance& inst, const std::vector<int>& facilities) {
    if (facilities.empty()) throw std::invalid_argument("eval_radius: empty facility set");
    dist_t r = 0;
    for (int i = 0; i < inst.m; ++i) {
        dist_t best = dist_inf;
        for (int j : facilities) best = std::min(best, inst(i, j));
        r = std::max(r, best);
    }
    return r;
}

struct Schedule {
    std::vector<int> p;
    int H() const { return static_cast<int>(p.size()); }
};

inline void validate_schedule(const Schedule& s, int n_facilities) {
    if (s.p.empty()) throw std::invalid_argument("schedule needs at least one period");
    for (std::size_t h = 0; h < s.p.size(); ++h) {
        if (s.p[h] <= 0) throw std::invalid_argument("facility counts must be positive");
        if (h > 0 && s.p[h] < s.p[h - 1]) throw std::invalid_argument("facility counts must be non-decreasing");
    }
    if (s.p.back() > n_facilities) throw std::invalid_argument("p^H exceeds the number of facilities");
}

inline Schedule parse_schedule(std::string_view text) {
    Schedule s;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto v = detail::to_number<int>(detail::trim(text.substr(pos, comma - pos)));
        if (!v) throw std::invalid_argument("malformed schedule '" + std::string(text) + "'");
        s.p.push_back(*v);
        pos = comma + 1;
    }
    return s;
}

inline std::string schedule_string(const Schedule& s, char sep = ',') {
    std::string out;
    for (std::size_t h = 0; h < s.p.size(); ++h) {
        if (h) out += sep;
        out += std::to_string(s.p[h]);
    }
    return out;
}

struct Chain {
    std::vector<std::vector<int>> sets;
    std::vector<dist_t> radii;

    dist_t sum() const {
        dist_t s = 0;
        for (dist_t r : radii) s += r;
        return s;
    }
    bool operator==(const Chain&) const = default;
};

inline Chain make_chain(const Instance& inst, std::vector<std::vector<int>> sets) {
    Chain c;
    for (auto& s : sets) std::sort(s.begin(), s.end());
    c.sets = std::move(sets);
    for (const auto& s : c.sets) c.radii.push_back(eval_radius(inst, s));
    return c;
}

// Empty optional when the chain satisfies every structural invariant.
inline std::optional<std::string> chain_error(const Instance& inst, const Schedule& s, const Chain& c) {
    if (c.sets.size() != s.p.size() || c.radii.size() != s.p.size()) return "period count mismatch";
    for (std::size_t h = 0; h < c.sets.size(); ++h) {
        const auto& set = c.sets[h];
        if (static_cast<int>(set.size()) != s.p[h]) return "period " + std::to_string(h + 1) + " has wrong cardinality";
        for (std::size_t k = 0; k < set.size(); ++k) {
            if (set[k] < 0 || set[k] >= inst.n) return "facility id out of range";
            if (k && set[k] <= set[k - 1]) return "period " + std::to_string(h + 1) + " is not a sorted set";
        }
        if (h > 0 && !std::includes(set.begin(), set.end(), c.sets[h - 1].begin(), c.sets[h - 1].end()))
            return "nesting violated at period " + std::to_string(h + 1);
        if (c.radii[h] != eval_radius(inst, set)) return "radius of period " + std::to_string(h + 1) + " is stale";
        if (h > 0 && c.radii[h] > c.radii[h - 1]) return "radii increase";
    }
    return std::nullopt;
}

}  // namespace npc
