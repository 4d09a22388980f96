// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "kp/grassmann.hpp"
#include "kp/plabic.hpp"
#include "kp/positroid.hpp"
#include "kp/soliton.hpp"

namespace kp {

/// One line-soliton of type [i, j] separating the regions I (contains i) and
/// J (contains j), seen at `point`. `length` weights its equation.
struct ObservedEdge {
    int i = 0;
    int j = 0;
    Subset I;
    Subset J;
    Point2 point;
    double length = 1.0;
};

struct ObservedContour {
    double time = 0.0;
    int k = 0;
    int n = 0;
    /// Label of the region at x << 0; fixes the additive constant.
    Subset left_region;
    std::vector<ObservedEdge> edges;
};

/// Midpoint and length of every edge of a computed plot.
ObservedContour observe(const ContourPlot& cp);

/// ln D_I - ln D_J = rhs for each observed edge.
struct LogEquation {
    int a = 0;  // index of I in unknowns
    int b = 0;  // index of J in unknowns
    double rhs = 0.0;
    double weight = 1.0;
};

struct LogPlueckerSystem {
    std::vector<Subset> unknowns;
    std::vector<LogEquation> equations;
    int anchor = 0;
    /// Largest discrepancy of a non-tree equation against tree potentials.
    double cycle_residual = 0.0;
};

/// Builds the difference equations from the line-soliton positions. Throws
/// InconsistentLabels when an edge's labels do not differ by {i} -> {j} and
/// InconsistentCycle when a cycle of equations misses closure by more than
/// `cycle_tol` (absolute, in log units).
LogPlueckerSystem offsets_to_ratios(const ObservedContour& oc, const KappaParams& kappa, double cycle_tol = 1e-6);

struct LogSolution {
    std::map<Subset, double> logs;
    Subset anchor;
    /// Weighted root-mean-square equation residual.
    double residual = 0.0;
};

/// Weighted least squares with ln D_anchor = 0. Throws Disconnected or
/// RankDeficient.
LogSolution solve_logs(const LogPlueckerSystem& sys);

struct Reconstruction {
    GrassmannPoint point;
    /// 1: closed form from three-term relations and RREF; 2: fitted Le-network weights.
    int tier = 1;
    /// Largest |ln(D_I/D_anchor)(A) - observed| over the observed labels.
    double residual = 0.0;
    /// Chamber minors that the three-term closure could not produce.
    std::vector<Subset> missing;
    /// Rank of the fit Jacobian against the cell dimension (tier 2 only).
    int jacobian_rank = 0;
    int cell_dimension = 0;
};

/// Chamber minors of the RREF with pivot set `pivots` that are bases of m.
std::vector<Subset> chamber_minors(Subset pivots, const PositroidMatroid& m);

/// Completes positive values on the bases of m with three-term Pluecker
/// relations D_Sac D_Sbd = D_Sab D_Scd + D_Sad D_Sbc. Values outside m are
/// zero and unknowns are left out of the result.
std::map<Subset, double> pluecker_closure(std::map<Subset, double> known, const PositroidMatroid& m);

/// Point of the cell of d whose Pluecker ratios match the solved logs. Uses
/// the closed form when every chamber minor is observed or implied, and
/// otherwise fits the Le-network weights (Levenberg-Marquardt, deterministic
/// starts). Throws InsufficientLabels when the labels cannot pin down a point
/// and NoConvergence when no start reaches `fit_tol`. With `closed_form`
/// false the fit is used even when the closed form would apply.
Reconstruction reconstruct(const LogSolution& logs, const Derangement& d, double fit_tol = 1e-8,
                           bool closed_form = true);

/// Largest relative difference of D_I / D_ref between two points, over the
/// bases of a, with ref the largest coordinate of a.
double max_ratio_error(const GrassmannPoint& a, const GrassmannPoint& b);

}  // namespace kp
