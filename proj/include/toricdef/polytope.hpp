#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricdef/linalg.hpp"

namespace toricdef {

/// Lattice point or dual lattice vector with machine-integer coordinates.
using Point = std::vector<std::int64_t>;

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
std::string format_point(std::span<const std::int64_t> p);

struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    Point vector;     // head - tail
    Point primitive;  // vector / length
    std::int64_t length = 0;
};

struct FaceEdge {
    std::size_t edge = 0;
    int sign = 1;  // orientation of the edge inside the face, +1 or -1
};

using TwoFace = std::vector<FaceEdge>;

/// A walk through the 1-skeleton, recorded as signed edge multiplicities.
struct Path {
    std::vector<int> steps;  // +1 / -1 / 0 per edge
    std::size_t start = 0;
    std::size_t end = 0;

    bool empty() const;
};

/// Lattice polytope with its oriented 1-skeleton and oriented 2-faces.
/// Vertex 0 is the origin. Immutable after construction.
class Polytope {
public:
    Polytope(std::size_t dim, std::vector<Point> vertices,
             const std::vector<std::pair<std::size_t, std::size_t>>& edges,
             std::vector<TwoFace> two_faces);

    std::size_t dim() const { return dim_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<TwoFace>& two_faces() const { return faces_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    /// Edge indices incident to a vertex, ascending.
    const std::vector<std::size_t>& incident(std::size_t vertex) const { return incident_[vertex]; }

    std::int64_t pairing(std::size_t vertex, std::span<const std::int64_t> c) const;
    std::int64_t max_edge_length() const;

    /// For polygons: vertices and edges of the boundary walked counterclockwise from vertex 0.
    const std::vector<std::size_t>& ccw_vertices() const { return ccw_vertices_; }
    const std::vector<std::size_t>& ccw_edges() const { return ccw_edges_; }

    /// Rows: one per (2-face, coordinate); columns: edges. Kernel is the space T(P).
    IntMatrix face_relation_matrix() const;

    /// Signed sum of edge vectors along a path.
    Point displacement(const Path& path) const;

private:
    void validate();
    void build_cycle();

    std::size_t dim_;
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<TwoFace> faces_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<std::size_t> ccw_vertices_;
    std::vector<std::size_t> ccw_edges_;
};

/// Builds a lattice polygon from 2D points; orders counterclockwise starting at the first
/// input point and translates it to the origin. Collinear boundary points are dropped.
Polytope polygon_from_vertices(const std::vector<Point>& points);

/// The 1-dimensional polytope [0, m].
Polytope interval(std::int64_t m);

struct HilbertGenerator {
    Point c;
    std::int64_t eta = 0;
};

struct SummandEdgeLength {
    std::size_t summand = 0;
    std::size_t edge = 0;  // 0-based
    std::int64_t length = 0;
};

/// Everything a polytope file may carry.
struct PolytopeFile {
    Polytope polytope;
    std::optional<std::vector<HilbertGenerator>> hilbert;
    std::optional<std::vector<SummandEdgeLength>> minkowski;
};

PolytopeFile parse_polytope_file(std::string_view text);
Polytope load_polytope(std::string_view text);
PolytopeFile read_polytope_file(const std::string& path);

/// Smallest vertex index minimising <v, c>.
std::size_t min_vertex(const Polytope& p, std::span<const std::int64_t> c);

/// Deterministic path from vertex 0 to v.
Path path_lambda(const Polytope& p, std::size_t v);

/// Path from v to min_vertex(p, c) along which <., c> never increases.
Path path_mu(const Polytope& p, std::size_t v, std::span<const std::int64_t> c);

/// max <v, c> - min <v, c> over vertices.
std::int64_t width(const Polytope& p, std::span<const std::int64_t> c);

/// Coordinate bound B' such that every c with width(p, c) <= bound has |c_j| <= B'.
/// Requires dim(P) == dim(N).
std::int64_t width_box(const Polytope& p, std::int64_t bound);

/// Enumerates all c in [-box, box]^dim in lexicographic order.
std::vector<Point> box_points(std::size_t dim, std::int64_t box);

}  // namespace toricdef
