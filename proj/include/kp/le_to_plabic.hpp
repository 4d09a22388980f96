// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "kp/grassmann.hpp"
#include "kp/plabic.hpp"
#include "kp/positroid.hpp"

namespace kp {

/// Pipe dream of a Le-diagram: 0 -> cross, + -> elbow. Border steps are
/// labeled 1..n along the southeast border starting at the northeast corner;
/// the northwest steps carry the label of the row or column they close.
struct PipeGrid {
    int k = 0;
    int n = 0;
    /// Tile (r, c) is an elbow; same shape as the diagram.
    std::vector<std::vector<bool>> elbow;
    /// destination[i-1]: northwest step reached by the pipe entering at i.
    std::vector<int> destination;
    /// Visited tiles (r, c) of each pipe, in order.
    std::vector<std::vector<std::pair<int, int>>> paths;
};

PipeGrid pipe_grid(const LeDiagram& le);

/// G_-(L): elbows become a white/black pair joined by an edge, the straight
/// lead-in of every southeast pipe is erased, and degree-2 vertices are
/// contracted. Boundary vertices sit on the northwest border; the vertex at
/// the end of the pipe starting at label i carries label i.
GeneralizedPlabicGraph build_g_minus(const LeDiagram& le);

/// Predicted t << 0 soliton graph: G_-(L) with X-crossings inserted near the
/// boundary so that the unbounded edges appear in slope order.
GeneralizedPlabicGraph predict_graph_t_neg(const LeDiagram& le, const KappaParams& kappa);

/// Boundary labels of the t << 0 soliton graph of d in counterclockwise order,
/// starting just after the x << 0 region: the bottom solitons left to right,
/// then the top solitons right to left.
std::vector<int> asymptotic_boundary_order(const Derangement& d, const KappaParams& kappa);

/// Debug rendering of the pipe grid.
std::string pipe_grid_svg(const LeDiagram& le);

}  // namespace kp
