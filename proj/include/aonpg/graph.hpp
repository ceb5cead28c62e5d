#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aonpg/rng.hpp"

namespace aonpg {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

struct Point
{
    double x;
    double y;

    friend bool operator==(Point const&, Point const&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * Immutable undirected simple graph on vertices 0..n-1.
 *
 * Adjacency is stored in compressed sparse row form with each neighbor list
 * sorted ascending. Geometric graphs additionally carry vertex positions.
 */
class Graph
{
  public:
    Graph() = default;

    /*!
     * Build from an edge list. Endpoints may come in either order; self
     * loops, duplicates and out-of-range ids throw std::invalid_argument.
     */
    static Graph from_edges(std::size_t n, std::span<Edge const> edges,
                            std::optional<std::vector<Point>> positions
                            = std::nullopt);

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    std::span<Vertex const> neighbors(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    //! Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    std::optional<std::vector<Point>> const& positions() const noexcept
    {
        return positions_;
    }

    //! Structural equality; positions are ignored.
    bool same_structure(Graph const& other) const noexcept
    {
        return offsets_ == other.offsets_ && targets_ == other.targets_;
    }

  private:
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::optional<std::vector<Point>> positions_;
};

struct GraphMetrics
{
    double mean_degree = 0;
    std::uint64_t triangle_count = 0;
    std::size_t max_degree = 0;
    std::size_t edge_count = 0;
    bool connected = true;
};

//! Raised when rejection sampling cannot produce a connected graph.
class GraphGenerationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Raised for malformed edge-list or positions input; carries the line.
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, std::string const& what);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

//! Geometric graph on given points: edge iff Euclidean distance < radius.
Graph geometric_graph(std::vector<Point> positions, double radius);

//! n iid uniform points in the unit square (no wrapping).
Graph random_geometric(std::size_t n, double radius, Rng& rng);

struct SampledGraph
{
    Graph graph;
    std::size_t attempts;
};

inline constexpr std::size_t default_max_attempts = 1000000;

//! Redraw random_geometric until connected; throws GraphGenerationError.
SampledGraph connected_random_geometric(std::size_t n, double radius,
                                        Rng& rng,
                                        std::size_t max_attempts
                                        = default_max_attempts);

//! Ring of n vertices, each joined to offsets 1..l/2 on both sides.
Graph circulant(std::size_t n, std::size_t l);

bool is_connected(Graph const& g);

//! N[v] = adj(v) + {v}, ascending.
std::vector<Vertex> closed_neighborhood(Graph const& g, Vertex v);

GraphMetrics compute_metrics(Graph const& g);

//! Triangles via sorted neighbor-list intersection on u < v < w.
std::uint64_t count_triangles(Graph const& g);

// Edge-list format: "n <count>" header, then "u v" lines with u < v.
void save_edge_list(Graph const& g, std::ostream& out);
Graph load_edge_list(std::istream& in);

// Positions format: one "v x y" line per vertex.
void save_positions(std::vector<Point> const& positions, std::ostream& out);
std::vector<Point> load_positions(std::istream& in, std::size_t n);

}  // namespace aonpg
