// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kp/grassmann.hpp"
#include "kp/plabic.hpp"
#include "kp/positroid.hpp"

namespace kp {

/// log|tau| and the sign of tau, evaluated with the largest exponent factored out.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;
};

LogValue log_tau(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t);
double tau(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t);

/// u = 2 d^2/dx^2 ln tau, from the analytic x-derivatives of each exponential.
double kp_u(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t);

/// l_J = ln(D_J K_J) + (sum k) x + (sum k^2) y + (sum k^3) t.
struct TropicalTerm {
    Subset basis;
    double c0 = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    double ct = 0.0;

    double operator()(double x, double y, double t) const { return c0 + cx * x + cy * y + ct * t; }
};

struct TropicalField {
    int k = 0;
    int n = 0;
    KappaParams kappa;
    /// One term per basis, lexicographic order.
    std::vector<TropicalTerm> terms;

    /// f_A = max_J l_J.
    double max_value(double x, double y, double t) const;
    int dominant(double x, double y, double t) const;
};

/// Terms for the bases of a TNN point (signs normalized by classify).
TropicalField tropical_field(const GrassmannPoint& point, const KappaParams& kappa, double tol = kDefaultTol);

struct BBox {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;

    double diameter() const;
    /// Counterclockwise arc length from the lower left corner.
    double perimeter_param(Point2 p) const;
    Point2 perimeter_point(double s) const;
};

/// Box around all vertices of the plot at time t, widened by 20% plus one unit.
BBox auto_bbox(const TropicalField& field, double t);

enum class VertexClass { Black, White, XCrossing, Degenerate, Exit };

struct ContourVertex {
    Point2 pos;
    VertexClass cls = VertexClass::Degenerate;
    std::vector<int> edges;
};

/// Line-soliton of type [i, j] (i < j) between the regions of I (containing i)
/// and J (containing j).
struct ContourEdge {
    int i = 0;
    int j = 0;
    Subset I;
    Subset J;
    int v0 = -1;
    int v1 = -1;
    /// Segment ends on the soliton line. They match the vertex positions
    /// except at an X-crossing whose phase-shift segment was collapsed.
    Point2 p0;
    Point2 p1;
    /// End at vertex v and the opposite end.
    Point2 end_at(int v) const { return v == v0 ? p0 : p1; }
    Point2 far_from(int v) const { return v == v0 ? p1 : p0; }
};

struct ContourRegion {
    Subset basis;
    /// Counterclockwise cell of the region inside the box.
    std::vector<Point2> polygon;
};

struct ContourPlot {
    double time = 0.0;
    int k = 0;
    int n = 0;
    KappaParams kappa;
    BBox bbox;
    std::vector<ContourRegion> regions;
    std::vector<ContourEdge> edges;
    std::vector<ContourVertex> vertices;
    bool generic = true;
    std::vector<std::string> issues;
    /// Short segments between regions differing in two indices, each collapsed
    /// to an X-crossing vertex (phase shifts are not modeled).
    std::vector<std::pair<Point2, Point2>> phase_shifts;

    /// Region on the left of the edge traversed from vertex `from` to `to`.
    Subset left_of(int edge, int from) const;
};

ContourPlot contour_plot(const TropicalField& field, double t, std::optional<BBox> box = std::nullopt);

/// Combinatorial shadow of a generic contour plot. Boundary vertex of the
/// unbounded soliton [a, b] is labeled b at the top and a at the bottom.
struct SolitonGraph {
    GeneralizedPlabicGraph graph;
    /// (i, j) per graph edge.
    std::vector<std::pair<int, int>> edge_types;
    FaceStructure faces;
    /// Dominant basis per face.
    std::vector<Subset> region_labels;
    /// Graph vertex -> contour vertex.
    std::vector<int> contour_vertex;
};

SolitonGraph soliton_graph(const ContourPlot& cp);
GeneralizedPlabicGraph plabic_from_soliton_graph(const SolitonGraph& c);

struct Asymptotics {
    /// Left to right.
    std::vector<std::pair<int, int>> top;
    std::vector<std::pair<int, int>> bottom;
    Subset left_region;
    /// Unbounded regions counterclockwise from the x << 0 region.
    std::vector<Subset> unbounded_regions;
};

Asymptotics predict_asymptotics(const Derangement& d, const KappaParams& kappa);
/// Asymptotics as observed on a plot: unbounded solitons and regions.
Asymptotics observed_asymptotics(const ContourPlot& cp);

Derangement read_derangement(const ContourPlot& cp);
GrassmannNecklace necklace_check(const ContourPlot& cp);

struct AutoTime {
    double t = 0.0;
    ContourPlot plot;
    SolitonGraph graph;
};

/// Doubles |t| from t = -1 until two successive soliton graphs agree.
AutoTime auto_t_negative(const TropicalField& field, double limit = 1048576.0);

struct InvariantReport {
    bool adjacency = true;
    double line_residual = 0.0;
    double slope_residual = 0.0;
    double balance_residual = 0.0;
    int trivalent = 0;
    int crossings = 0;
};

/// Adjacency (one-element basis change), line position, slope and balancing.
/// Residuals are scaled by max(1, |coordinates|).
InvariantReport check_invariants(const ContourPlot& cp, const TropicalField& field);

}  // namespace kp
