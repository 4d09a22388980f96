// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "kp/subset.hpp"

namespace kp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

enum class VertexKind { Boundary, Black, White, Crossing };

struct PlabicVertex {
    VertexKind kind = VertexKind::Black;
    /// Boundary label in [1, n]; 0 for internal vertices.
    int label = 0;
    /// Drawing position; only used to derive rotations and for rendering.
    Point2 pos;
    /// Incident edge ids in counterclockwise order.
    std::vector<int> rotation;
};

struct PlabicEdge {
    int u = 0;
    int v = 0;
};

/// Directed traversal of an edge: from edge.u to edge.v when `forward`.
struct Dart {
    int edge = 0;
    bool forward = true;

    Dart reversed() const { return {edge, !forward}; }
    int index() const { return 2 * edge + (forward ? 0 : 1); }
    friend bool operator==(Dart, Dart) = default;
};

/// Bicolored graph embedded in a disk. Crossing vertices have degree four and
/// pair opposite entries of their rotation; trips pass straight through them.
class GeneralizedPlabicGraph {
public:
    int add_vertex(VertexKind kind, Point2 pos, int label = 0);
    /// Appends the edge to both rotation lists; call sort_rotations() or
    /// arrange rotations explicitly afterwards.
    int add_edge(int u, int v);

    /// Orders every rotation counterclockwise by the angle of the neighbor.
    void sort_rotations();
    /// Orders the boundary counterclockwise around `center`, starting just
    /// after the direction `start_angle` (radians).
    void sort_boundary(Point2 center, double start_angle);
    void set_boundary_order(std::vector<int> order) { boundary_ = std::move(order); }

    const std::vector<PlabicVertex>& vertices() const { return vertices_; }
    const std::vector<PlabicEdge>& edges() const { return edges_; }
    PlabicVertex& vertex(int v) { return vertices_[v]; }
    const PlabicVertex& vertex(int v) const { return vertices_[v]; }
    const PlabicEdge& edge(int e) const { return edges_[e]; }
    /// Boundary vertex ids in counterclockwise order.
    const std::vector<int>& boundary_order() const { return boundary_; }
    int boundary_count() const { return static_cast<int>(boundary_.size()); }
    int degree(int v) const { return static_cast<int>(vertices_[v].rotation.size()); }
    int tail(Dart d) const { return d.forward ? edges_[d.edge].u : edges_[d.edge].v; }
    int head(Dart d) const { return d.forward ? edges_[d.edge].v : edges_[d.edge].u; }
    int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
    int boundary_vertex(int label) const;
    bool has_crossings() const;

    /// Throws InvalidArgument when a structural invariant fails.
    void validate() const;

    /// Removes internal degree-2 vertices and, optionally, merges adjacent
    /// internal vertices of equal color. Ids are compacted.
    GeneralizedPlabicGraph normalized(bool contract_unicolored = false) const;

    /// Replaces edge `old_edge` at vertex v by `new_edge` in v's rotation.
    void replace_in_rotation(int v, int old_edge, int new_edge);
    /// Detaches edge e from `from` and appends it to the rotation of `to`.
    void move_edge_end(int e, int from, int to);

private:
    std::vector<PlabicVertex> vertices_;
    std::vector<PlabicEdge> edges_;
    std::vector<int> boundary_;
};

struct Trip {
    int start = 0;
    int end = 0;
    std::vector<Dart> darts;
};

struct TripDecomposition {
    /// trips[i-1] starts at boundary label i.
    std::vector<Trip> trips;
    /// permutation[i-1] = label where T_i ends.
    std::vector<int> permutation;
};

/// Rules of the road: right at black, left at white, straight through crossings.
TripDecomposition trips(const GeneralizedPlabicGraph& g);

/// Faces of the disk embedding. Boundary arcs between consecutive boundary
/// vertices close the unbounded regions.
struct FaceStructure {
    /// Face to the left of each dart, indexed by Dart::index().
    std::vector<int> left_face;
    int face_count = 0;
    /// boundary_face[i] lies between boundary_order[i] and boundary_order[i+1].
    std::vector<int> boundary_face;
    /// Real darts bounding each face.
    std::vector<std::vector<Dart>> face_darts;
};

FaceStructure faces(const GeneralizedPlabicGraph& g);

struct FaceLabeling {
    FaceStructure faces;
    /// Labels of trips traversing each edge (at most two).
    std::vector<Subset> edge_labels;
    /// {i : face lies left of T_i}.
    std::vector<Subset> region_labels;
};

FaceLabeling label(const GeneralizedPlabicGraph& g);
FaceLabeling label(const GeneralizedPlabicGraph& g, const TripDecomposition& t);

struct HeuristicResult {
    bool pass = true;
    std::string reason;
};

/// Necessary conditions for reducedness: no closed trips, no trip through an
/// edge twice, no pair of trips sharing two edges in the same order.
HeuristicResult reduced_heuristic(const GeneralizedPlabicGraph& g);

/// Replaces every path that runs straight through crossings by a single edge.
/// The result may not be planar, but it keeps the rotation at every other
/// vertex, so it is unchanged when a crossing slides past a trivalent vertex.
GeneralizedPlabicGraph resolve_crossings(const GeneralizedPlabicGraph& g);

/// Rooted planar isomorphism preserving colors, boundary labels and rotations.
bool label_isomorphic(const GeneralizedPlabicGraph& a, const GeneralizedPlabicGraph& b,
                      bool contract_unicolored = false);

}  // namespace kp
