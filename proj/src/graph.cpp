#include "aonpg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace aonpg {

ParseError::ParseError(std::size_t line, std::string const& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what)
    , line_(line)
{
}

Graph Graph::from_edges(std::size_t n, std::span<Edge const> edges,
                        std::optional<std::vector<Point>> positions)
{
    if (positions && positions->size() != n)
    {
        throw std::invalid_argument("positions size does not match n");
    }
    std::vector<std::size_t> degree(n, 0);
    for (auto [u, v] : edges)
    {
        if (u >= n || v >= n)
        {
            throw std::invalid_argument("edge (" + std::to_string(u) + ", "
                                        + std::to_string(v)
                                        + ") has an out-of-range endpoint");
        }
        if (u == v)
        {
            throw std::invalid_argument("self-loop at vertex "
                                        + std::to_string(u));
        }
        ++degree[u];
        ++degree[v];
    }

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
    {
        g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    }
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges)
    {
        g.targets_[cursor[u]++] = v;
        g.targets_[cursor[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        auto first = g.targets_.begin() + g.offsets_[i];
        auto last = g.targets_.begin() + g.offsets_[i + 1];
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
        {
            throw std::invalid_argument("duplicate edge at vertex "
                                        + std::to_string(i));
        }
    }
    g.positions_ = std::move(positions);
    return g;
}

std::span<Vertex const> Graph::neighbors(Vertex v) const
{
    if (v >= size())
    {
        throw std::out_of_range("vertex " + std::to_string(v)
                                + " out of range for graph of size "
                                + std::to_string(size()));
    }
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < size(); ++u)
    {
        for (Vertex v : neighbors(u))
        {
            if (u < v)
                out.emplace_back(u, v);
        }
    }
    return out;
}

Graph geometric_graph(std::vector<Point> positions, double radius)
{
    double const r2 = radius * radius;
    std::vector<Edge> edges;
    auto const n = positions.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            double const dx = positions[i].x - positions[j].x;
            double const dy = positions[i].y - positions[j].y;
            if (dx * dx + dy * dy < r2)
            {
                edges.emplace_back(static_cast<Vertex>(i),
                                   static_cast<Vertex>(j));
            }
        }
    }
    return Graph::from_edges(n, edges, std::move(positions));
}

Graph random_geometric(std::size_t n, double radius, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("random geometric graph needs n >= 1");
    if (!(radius > 0.0 && radius < 1.0))
    {
        throw std::invalid_argument("r_g must lie in (0, 1), got "
                                    + std::to_string(radius));
    }
    std::vector<Point> pts(n);
    for (auto& p : pts)
    {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    return geometric_graph(std::move(pts), radius);
}

SampledGraph connected_random_geometric(std::size_t n, double radius,
                                        Rng& rng, std::size_t max_attempts)
{
    if (max_attempts < 1)
        throw std::invalid_argument("max_attempts must be at least 1");
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt)
    {
        Graph g = random_geometric(n, radius, rng);
        if (is_connected(g))
            return {std::move(g), attempt};
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "no connected random geometric graph with n = %zu, "
                  "r_g = %g after %zu attempts (radius too small for n?)",
                  n, radius, max_attempts);
    throw GraphGenerationError(buf);
}

Graph circulant(std::size_t n, std::size_t l)
{
    if (l % 2 != 0)
    {
        throw std::invalid_argument("l must be even, got "
                                    + std::to_string(l));
    }
    if (l < 2 || l + 1 > n)
    {
        throw std::invalid_argument("l must satisfy 2 <= l <= n-1, got l = "
                                    + std::to_string(l) + ", n = "
                                    + std::to_string(n));
    }
    std::vector<Edge> edges;
    edges.reserve(n * l / 2);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t s = 1; s <= l / 2; ++s)
        {
            auto const j = (i + s) % n;
            edges.emplace_back(static_cast<Vertex>(std::min(i, j)),
                               static_cast<Vertex>(std::max(i, j)));
        }
    }
    // l = n-1 with n even makes offset n/2 appear twice.
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(n, edges);
}

bool is_connected(Graph const& g)
{
    auto const n = g.size();
    if (n <= 1)
        return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty())
    {
        Vertex const u = stack.back();
        stack.pop_back();
        for (Vertex v : g.neighbors(u))
        {
            if (!seen[v])
            {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

std::vector<Vertex> closed_neighborhood(Graph const& g, Vertex v)
{
    auto nb = g.neighbors(v);
    std::vector<Vertex> out;
    out.reserve(nb.size() + 1);
    auto split = std::lower_bound(nb.begin(), nb.end(), v);
    out.insert(out.end(), nb.begin(), split);
    out.push_back(v);
    out.insert(out.end(), split, nb.end());
    return out;
}

std::uint64_t count_triangles(Graph const& g)
{
    std::uint64_t total = 0;
    for (Vertex u = 0; u < g.size(); ++u)
    {
        auto nu = g.neighbors(u);
        for (Vertex v : nu)
        {
            if (v <= u)
                continue;
            auto nv = g.neighbors(v);
            // common neighbors w > v
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end())
            {
                if (*a < *b)
                    ++a;
                else if (*b < *a)
                    ++b;
                else
                {
                    ++total;
                    ++a;
                    ++b;
                }
            }
        }
    }
    return total;
}

GraphMetrics compute_metrics(Graph const& g)
{
    GraphMetrics m;
    m.edge_count = g.edge_count();
    m.mean_degree = g.size() == 0 ? 0.0
                                  : 2.0 * static_cast<double>(m.edge_count)
                                        / static_cast<double>(g.size());
    for (Vertex v = 0; v < g.size(); ++v)
    {
        m.max_degree = std::max(m.max_degree, g.degree(v));
    }
    m.triangle_count = count_triangles(g);
    m.connected = is_connected(g);
    return m;
}

void save_edge_list(Graph const& g, std::ostream& out)
{
    out << "n " << g.size() << '\n';
    for (auto [u, v] : g.edges())
    {
        out << u << ' ' << v << '\n';
    }
}

namespace {

// Splits a line into whitespace-separated tokens; '#' starts a comment.
std::vector<std::string> tokenize(std::string const& line)
{
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;)
        tokens.push_back(std::move(tok));
    return tokens;
}

template<class T>
T parse_number(std::string const& tok, std::size_t line)
{
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(),
                                     value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
    {
        throw ParseError(line, "invalid number '" + tok + "'");
    }
    return value;
}

double parse_real(std::string const& tok, std::size_t line)
{
    try
    {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used == tok.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ParseError(line, "invalid real '" + tok + "'");
}

}  // namespace

Graph load_edge_list(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line))
    {
        ++lineno;
        auto tok = tokenize(line);
        if (tok.empty())
            continue;
        if (!n)
        {
            if (tok.size() != 2 || tok[0] != "n")
                throw ParseError(lineno, "expected header 'n <count>'");
            n = parse_number<std::size_t>(tok[1], lineno);
            continue;
        }
        if (tok.size() != 2)
            throw ParseError(lineno, "expected 'u v'");
        auto u = parse_number<std::uint64_t>(tok[0], lineno);
        auto v = parse_number<std::uint64_t>(tok[1], lineno);
        if (u >= *n || v >= *n)
            throw ParseError(lineno, "vertex id out of range");
        if (u >= v)
            throw ParseError(lineno, "edge must satisfy u < v");
        Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!seen.insert(e).second)
            throw ParseError(lineno, "duplicate edge " + tok[0] + " " + tok[1]);
        edges.push_back(e);
    }
    if (!n)
        throw ParseError(lineno, "missing header 'n <count>'");

    return Graph::from_edges(*n, edges);
}

void save_positions(std::vector<Point> const& positions, std::ostream& out)
{
    char buf[96];
    for (std::size_t v = 0; v < positions.size(); ++v)
    {
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", v,
                      positions[v].x, positions[v].y);
        out << buf;
    }
}

std::vector<Point> load_positions(std::istream& in, std::size_t n)
{
    std::vector<Point> pts(n);
    std::vector<char> seen(n, 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto tok = tokenize(line);
        if (tok.empty())
            continue;
        if (tok.size() != 3)
            throw ParseError(lineno, "expected 'v x y'");
        auto v = parse_number<std::uint64_t>(tok[0], lineno);
        if (v >= n)
            throw ParseError(lineno, "vertex id out of range");
        if (seen[v])
            throw ParseError(lineno, "duplicate vertex");
        seen[v] = 1;
        pts[v] = {parse_real(tok[1], lineno), parse_real(tok[2], lineno)};
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw ParseError(lineno, "positions missing for some vertices");
    return pts;
}

}  // namespace aonpg
