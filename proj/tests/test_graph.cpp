#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aonpg/graph.hpp"

using namespace aonpg;

namespace {

std::uint64_t brute_force_triangles(Graph const& g)
{
    std::uint64_t count = 0;
    auto const n = static_cast<Vertex>(g.size());
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c)
                count += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
    return count;
}

Graph complete(std::size_t n)
{
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

Graph path(std::size_t n)
{
    std::vector<Edge> e;
    for (Vertex u = 0; u + 1 < n; ++u)
        e.emplace_back(u, u + 1);
    return Graph::from_edges(n, e);
}

void check_simple_symmetric(Graph const& g)
{
    for (Vertex u = 0; u < g.size(); ++u)
    {
        auto nb = g.neighbors(u);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
        for (Vertex v : nb)
        {
            CHECK(v != u);
            CHECK(g.has_edge(v, u));
        }
    }
}

}  // namespace

TEST_CASE("from_edges rejects malformed input")
{
    std::vector<Edge> loop{{0, 0}};
    CHECK_THROWS_AS(Graph::from_edges(2, loop), std::invalid_argument);
    std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(Graph::from_edges(2, dup), std::invalid_argument);
    std::vector<Edge> out{{0, 5}};
    CHECK_THROWS_AS(Graph::from_edges(2, out), std::invalid_argument);
}

TEST_CASE("random_geometric")
{
    Rng rng(1);
    SUBCASE("single vertex")
    {
        auto g = random_geometric(1, 0.5, rng);
        CHECK(g.size() == 1);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("forced positions")
    {
        auto g = geometric_graph({{0.0, 0.0}, {0.0, 0.1}}, 0.15);
        CHECK(g.edge_count() == 1);
        // strict inequality
        auto h = geometric_graph({{0.0, 0.0}, {0.0, 0.5}}, 0.5);
        CHECK(h.edge_count() == 0);
    }
    SUBCASE("edge relation matches stored positions")
    {
        for (int trial = 0; trial < 20; ++trial)
        {
            auto g = random_geometric(40, 0.2, rng);
            check_simple_symmetric(g);
            auto const& p = *g.positions();
            for (Vertex u = 0; u < g.size(); ++u)
            {
                CHECK(p[u].x >= 0.0);
                CHECK(p[u].x < 1.0);
                for (Vertex v = u + 1; v < g.size(); ++v)
                {
                    double const d = std::hypot(p[u].x - p[v].x, p[u].y - p[v].y);
                    // hypot vs squared compare may disagree within one ulp
                    if (std::abs(d - 0.2) > 1e-12)
                        CHECK(g.has_edge(u, v) == (d < 0.2));
                }
            }
        }
    }
    SUBCASE("mean degree at n = 50, r = 0.3")
    {
        // Expected degree is (n-1) times the mean clipped disc area, which
        // for r = 0.3 is pi r^2 - 8 r^3 / 3 + r^4 / 2 = 0.2148.
        double const r = 0.3;
        double const area = M_PI * r * r - 8.0 * r * r * r / 3.0 + r * r * r * r / 2.0;
        double const expected = 49.0 * area;
        CHECK(expected == doctest::Approx(10.525).epsilon(0.001));
        double total = 0;
        for (int i = 0; i < 200; ++i)
            total += compute_metrics(random_geometric(50, r, rng)).mean_degree;
        double const mean = total / 200;
        CHECK(mean >= 9.0);
        CHECK(mean <= 13.0);
        CHECK(mean == doctest::Approx(expected).epsilon(0.03));
    }
    CHECK_THROWS_AS(random_geometric(10, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_geometric(10, 0.0, rng), std::invalid_argument);
}

TEST_CASE("connected_random_geometric")
{
    Rng rng(3);
    for (int i = 0; i < 20; ++i)
    {
        auto s = connected_random_geometric(50, 0.3, rng, 100);
        CHECK(is_connected(s.graph));
        CHECK(s.attempts >= 1);
        CHECK(s.attempts <= 100);
    }
    try
    {
        connected_random_geometric(50, 0.01, rng, 10);
        FAIL("expected failure");
    }
    catch (GraphGenerationError const& e)
    {
        std::string const what = e.what();
        CHECK(what.find("0.01") != std::string::npos);
        CHECK(what.find("10 attempts") != std::string::npos);
    }
}

TEST_CASE("circulant")
{
    auto c2 = circulant(50, 2);
    CHECK(c2.edge_count() == 50);
    CHECK(count_triangles(c2) == 0);

    for (std::size_t l : {2u, 4u, 6u, 8u})
    {
        auto g = circulant(50, l);
        check_simple_symmetric(g);
        CHECK(is_connected(g));
        for (Vertex v = 0; v < 50; ++v)
        {
            CHECK(g.degree(v) == l);
            CHECK(closed_neighborhood(g, v).size() == l + 1);
        }
    }
    auto c4 = circulant(50, 4);
    CHECK(count_triangles(c4) == brute_force_triangles(c4));
    CHECK(count_triangles(c4) == 50);

    auto k5 = circulant(5, 4);
    CHECK(k5.edge_count() == 10);
    CHECK(count_triangles(k5) == 10);
    CHECK(brute_force_triangles(k5) == 10);

    auto k6 = circulant(6, 4);
    CHECK(k6.edge_count() == 12);

    CHECK_THROWS_AS(circulant(50, 3), std::invalid_argument);
    CHECK_THROWS_AS(circulant(50, 0), std::invalid_argument);
    CHECK_THROWS_AS(circulant(5, 6), std::invalid_argument);
}

TEST_CASE("is_connected")
{
    std::vector<Edge> two{{0, 1}, {2, 3}};
    CHECK_FALSE(is_connected(Graph::from_edges(4, two)));
    CHECK(is_connected(circulant(50, 2)));
    CHECK(is_connected(path(10)));
    CHECK(is_connected(Graph::from_edges(1, {})));
    CHECK(is_connected(Graph{}));
}

TEST_CASE("closed_neighborhood")
{
    // The eight-player example: vertex 6 with neighbors 5, 7, 8 (1-based
    // labels shifted to 0-based: 5 -> 4, 6 -> 5, 7 -> 6, 8 -> 7).
    std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {5, 7}, {6, 7}};
    auto g = Graph::from_edges(8, e);
    CHECK(closed_neighborhood(g, 5) == std::vector<Vertex>{4, 5, 6, 7});

    std::vector<Edge> none;
    auto iso = Graph::from_edges(3, none);
    CHECK(closed_neighborhood(iso, 2) == std::vector<Vertex>{2});

    auto k5 = complete(5);
    for (Vertex v = 0; v < 5; ++v)
        CHECK(closed_neighborhood(k5, v) == std::vector<Vertex>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(closed_neighborhood(k5, 5), std::out_of_range);
}

TEST_CASE("compute_metrics")
{
    auto k3 = compute_metrics(complete(3));
    CHECK(k3.mean_degree == 2.0);
    CHECK(k3.triangle_count == 1);
    CHECK(k3.max_degree == 2);
    CHECK(k3.edge_count == 3);
    CHECK(k3.connected);

    // Randomized oracle: neighbor-intersection count equals brute force.
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t const n = 1 + rng.below(12);
        double const p = rng.uniform();
        std::vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.uniform() < p)
                    e.emplace_back(u, v);
        auto g = Graph::from_edges(n, e);
        auto m = compute_metrics(g);
        CHECK(m.triangle_count == brute_force_triangles(g));
        CHECK(m.mean_degree == doctest::Approx(2.0 * e.size() / n));
    }
}

TEST_CASE("edge list round trip and parse errors")
{
    std::ostringstream out;
    save_edge_list(complete(3), out);
    CHECK(out.str() == "n 3\n0 1\n0 2\n1 2\n");

    std::istringstream single("n 1\n");
    auto g1 = load_edge_list(single);
    CHECK(g1.size() == 1);
    CHECK(g1.edge_count() == 0);

    Rng rng(8);
    for (int i = 0; i < 10; ++i)
    {
        auto g = random_geometric(50, 0.2, rng);
        std::stringstream s;
        save_edge_list(g, s);
        auto back = load_edge_list(s);
        CHECK(back.same_structure(g));

        std::stringstream ps;
        save_positions(*g.positions(), ps);
        CHECK(load_positions(ps, g.size()) == *g.positions());
    }

    auto expect_line = [](std::string const& text, std::size_t line) {
        std::istringstream in(text);
        try
        {
            load_edge_list(in);
            FAIL("expected parse error for: " << text);
        }
        catch (ParseError const& e)
        {
            CHECK(e.line() == line);
        }
    };
    expect_line("n 3\n0 1\n0 x\n", 3);
    expect_line("n 3\n0 1\n0 3\n", 3);
    expect_line("n 3\n0 1\n1 2\n0 1\n", 4);
    expect_line("n 3\n1 0\n", 2);
    expect_line("0 1\n", 1);
    expect_line("n 3\n0 1 2\n", 2);
}
