// SPDX-License-Identifier: Apache-2.0
#include "kp/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "kp/error.hpp"

namespace kp {

ObservedContour observe(const ContourPlot& cp) {
    ObservedContour oc;
    oc.time = cp.time;
    oc.k = cp.k;
    oc.n = cp.n;
    oc.left_region = observed_asymptotics(cp).left_region;
    for (const ContourEdge& e : cp.edges) {
        const Point2 p = e.p0;
        const Point2 q = e.p1;
        oc.edges.push_back({e.i, e.j, e.I, e.J, {(p.x + q.x) / 2, (p.y + q.y) / 2}, std::hypot(q.x - p.x, q.y - p.y)});
    }
    return oc;
}

LogPlueckerSystem offsets_to_ratios(const ObservedContour& oc, const KappaParams& kappa, double cycle_tol) {
    LogPlueckerSystem sys;
    std::map<Subset, int> index;
    auto id = [&](Subset s) {
        auto [it, fresh] = index.emplace(s, static_cast<int>(sys.unknowns.size()));
        if (fresh) sys.unknowns.push_back(s);
        return it->second;
    };
    sys.anchor = id(oc.left_region);

    std::vector<double> lengths;
    for (const ObservedEdge& e : oc.edges) lengths.push_back(e.length);
    std::sort(lengths.begin(), lengths.end());
    const double typical = lengths.empty() ? 1.0 : std::max(lengths[lengths.size() / 2], 1e-300);

    const double t = oc.time;
    for (const ObservedEdge& e : oc.edges) {
        if (e.i < 1 || e.j > kappa.n() || e.i >= e.j || e.I - e.J != Subset::of({e.i}) || e.J - e.I != Subset::of({e.j})) {
            throw Error(ErrorCode::InconsistentLabels, "edge [" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                                           "] does not separate " + e.I.to_string() + " from " +
                                                           e.J.to_string());
        }
        const double ki = kappa[e.i], kj = kappa[e.j];
        const double phase = e.point.x + (ki + kj) * e.point.y + (ki * ki + ki * kj + kj * kj) * t;
        const double rhs = (kj - ki) * phase - std::log(kappa.vandermonde(e.I)) + std::log(kappa.vandermonde(e.J));
        sys.equations.push_back({id(e.I), id(e.J), rhs, std::min(1.0, e.length / typical)});
    }

    // Tree potentials from the anchor; every other equation closes a cycle.
    const int m = static_cast<int>(sys.unknowns.size());
    std::vector<std::vector<int>> incident(m);
    for (int q = 0; q < static_cast<int>(sys.equations.size()); ++q) {
        incident[sys.equations[q].a].push_back(q);
        incident[sys.equations[q].b].push_back(q);
    }
    std::vector<std::optional<double>> phi(m);
    phi[sys.anchor] = 0.0;
    std::queue<int> queue;
    queue.push(sys.anchor);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int q : incident[u]) {
            const LogEquation& eq = sys.equations[q];
            const int w = eq.a == u ? eq.b : eq.a;
            if (phi[w]) continue;
            phi[w] = eq.a == u ? *phi[u] - eq.rhs : *phi[u] + eq.rhs;
            queue.push(w);
        }
    }
    for (const LogEquation& eq : sys.equations) {
        if (phi[eq.a] && phi[eq.b]) {
            sys.cycle_residual = std::max(sys.cycle_residual, std::abs(*phi[eq.a] - *phi[eq.b] - eq.rhs));
        }
    }
    if (sys.cycle_residual > cycle_tol) {
        throw Error(ErrorCode::InconsistentCycle,
                    "ratio equations fail to close around a cycle by " + std::to_string(sys.cycle_residual));
    }
    return sys;
}

LogSolution solve_logs(const LogPlueckerSystem& sys) {
    const int m = static_cast<int>(sys.unknowns.size());
    // Connectivity of the region adjacency graph.
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const LogEquation& eq : sys.equations) parent[find(eq.a)] = find(eq.b);
    for (int i = 0; i < m; ++i) {
        if (find(i) != find(sys.anchor)) {
            throw Error(ErrorCode::Disconnected, "region " + sys.unknowns[i].to_string() + " is not linked to " +
                                                     sys.unknowns[sys.anchor].to_string());
        }
    }
    // Unknowns other than the anchor, which is pinned to zero.
    std::vector<int> column(m, -1);
    int cols = 0;
    for (int i = 0; i < m; ++i)
        if (i != sys.anchor) column[i] = cols++;
    const int rows = static_cast<int>(sys.equations.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (int q = 0; q < rows; ++q) {
        const LogEquation& eq = sys.equations[q];
        const double w = std::sqrt(eq.weight);
        if (column[eq.a] >= 0) a(q, column[eq.a]) += w;
        if (column[eq.b] >= 0) a(q, column[eq.b]) -= w;
        rhs(q) = w * eq.rhs;
    }
    LogSolution out;
    out.anchor = sys.unknowns[sys.anchor];
    out.logs[out.anchor] = 0.0;
    if (cols == 0) return out;
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < cols) throw Error(ErrorCode::RankDeficient, "log system does not determine every region");
    const Eigen::VectorXd x = qr.solve(rhs);
    for (int i = 0; i < m; ++i)
        if (column[i] >= 0) out.logs[sys.unknowns[i]] = x(column[i]);
    out.residual = rows ? (a * x - rhs).norm() / std::sqrt(static_cast<double>(rows)) : 0.0;
    return out;
}

std::vector<Subset> chamber_minors(Subset pivots, const PositroidMatroid& m) {
    std::vector<Subset> out{pivots};
    for (int p : pivots.elements())
        for (int j = 1; j <= m.n; ++j)
            if (!pivots.contains(j) && m.contains(pivots.without(p).with(j))) out.push_back(pivots.without(p).with(j));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<Subset, double> pluecker_closure(std::map<Subset, double> known, const PositroidMatroid& m) {
    if (m.k < 2) return known;
    struct Relation {
        Subset l1, l2, r1, r2, r3, r4;
    };
    std::vector<Relation> relations;
    for (Subset s : k_subsets(m.n, m.k - 2)) {
        std::vector<int> free;
        for (int i = 1; i <= m.n; ++i)
            if (!s.contains(i)) free.push_back(i);
        const int f = static_cast<int>(free.size());
        for (int ia = 0; ia < f; ++ia)
            for (int ib = ia + 1; ib < f; ++ib)
                for (int ic = ib + 1; ic < f; ++ic)
                    for (int id = ic + 1; id < f; ++id) {
                        const int a = free[ia], b = free[ib], c = free[ic], d = free[id];
                        relations.push_back({s.with(a).with(c), s.with(b).with(d), s.with(a).with(b), s.with(c).with(d),
                                             s.with(a).with(d), s.with(b).with(c)});
                    }
    }
    auto value = [&](Subset x) -> std::optional<double> {
        if (!m.contains(x)) return 0.0;
        auto it = known.find(x);
        if (it == known.end()) return std::nullopt;
        return it->second;
    };
    // Division-only solves first; subtraction only when those are exhausted.
    for (bool allow_subtraction = false;;) {
        bool progress = false;
        for (const Relation& rel : relations) {
            const std::array<Subset, 6> sets{rel.l1, rel.l2, rel.r1, rel.r2, rel.r3, rel.r4};
            std::array<std::optional<double>, 6> v;
            int unknown = -1, count = 0;
            for (int q = 0; q < 6; ++q) {
                v[q] = value(sets[q]);
                if (!v[q]) {
                    unknown = q;
                    ++count;
                }
            }
            if (count != 1) continue;
            const int partner = unknown ^ 1;
            if (!(*v[partner] > 0)) continue;
            double x;
            if (unknown < 2) {
                x = (*v[2] * *v[3] + *v[4] * *v[5]) / *v[partner];
            } else {
                if (!allow_subtraction) continue;
                const int other = unknown < 4 ? 4 : 2;
                x = (*v[0] * *v[1] - *v[other] * *v[other + 1]) / *v[partner];
            }
            if (!(x > 0) || !std::isfinite(x)) continue;
            known[sets[unknown]] = x;
            progress = true;
        }
        if (progress) {
            allow_subtraction = false;
            continue;
        }
        if (allow_subtraction) break;
        allow_subtraction = true;
    }
    return known;
}

namespace {

PositroidMatroid cell_matroid(const LeDiagram& le) {
    const std::vector<double> ones(le.plus_count(), 1.0);
    return matroid_of(le_network_point(le, ones).pluecker());
}

double log_residual(const GrassmannPoint& a, const LogSolution& logs) {
    const auto& pl = a.pluecker();
    const double ref = std::log(std::abs(pl[logs.anchor]));
    double worst = 0.0;
    for (const auto& [s, v] : logs.logs) {
        const double d = std::abs(pl[s]);
        worst = std::max(worst, d > 0 ? std::abs(std::log(d) - ref - v) : INFINITY);
    }
    return worst;
}

struct FitFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const LeDiagram* le;
    std::vector<std::pair<Subset, double>> targets;
    Subset anchor;

    int inputs() const { return le->plus_count(); }
    int values() const { return static_cast<int>(targets.size()); }

    int operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& f) const {
        std::vector<double> w(theta.size());
        for (int i = 0; i < theta.size(); ++i) w[i] = std::exp(std::clamp(theta(i), -50.0, 50.0));
        const GrassmannPoint a = le_network_point(*le, w);
        const auto& pl = a.pluecker();
        const double ref = std::log(std::abs(pl[anchor]));
        for (std::size_t q = 0; q < targets.size(); ++q) {
            f(q) = std::log(std::max(std::abs(pl[targets[q].first]), 1e-300)) - ref - targets[q].second;
        }
        return 0;
    }
};

}  // namespace

Reconstruction reconstruct(const LogSolution& logs, const Derangement& d, double fit_tol, bool closed_form) {
    const int n = d.n();
    const int k = d.k();
    const LeDiagram le = lediagram_from_derangement(d, k, n);
    const PositroidMatroid m = cell_matroid(le);
    for (const auto& [s, v] : logs.logs) {
        if (s.size() != k || !m.contains(s)) {
            throw Error(ErrorCode::InconsistentLabels, "label " + s.to_string() + " is not a basis of the cell");
        }
    }

    // Tier 1: closed form.
    std::map<Subset, double> values;
    for (const auto& [s, v] : logs.logs) values[s] = std::exp(v);
    values = pluecker_closure(std::move(values), m);
    const Subset pivots = m.bases.front();
    Reconstruction out{GrassmannPoint(1, 1, {1.0}), 1, 0.0, {}, 0, le.plus_count()};
    for (Subset s : chamber_minors(pivots, m))
        if (!values.count(s)) out.missing.push_back(s);
    if (out.missing.empty() && closed_form) {
        const std::vector<int> p = pivots.elements();
        std::vector<double> a(static_cast<std::size_t>(k) * n, 0.0);
        const double dp = values.at(pivots);
        for (int r = 0; r < k; ++r) {
            for (int j = 1; j <= n; ++j) {
                if (j == p[r]) {
                    a[r * n + j - 1] = 1.0;
                } else if (!pivots.contains(j)) {
                    const Subset q = pivots.without(p[r]).with(j);
                    if (m.contains(q)) a[r * n + j - 1] = between_sign(pivots, p[r], j) * values.at(q) / dp;
                }
            }
        }
        out.point = GrassmannPoint(k, n, std::move(a));
        out.residual = log_residual(out.point, logs);
        return out;
    }

    // Tier 2: fit the Le-network weights.
    out.tier = 2;
    FitFunctor fn{&le, {}, logs.anchor};
    for (const auto& [s, v] : logs.logs)
        if (s != logs.anchor) fn.targets.emplace_back(s, v);
    const int dim = le.plus_count();
    auto missing_text = [&] {
        std::string text;
        for (Subset s : out.missing) text += (text.empty() ? "" : ",") + s.to_string(n);
        return text;
    };
    if (static_cast<int>(fn.targets.size()) < dim) {
        throw Error(ErrorCode::InsufficientLabels, std::to_string(fn.targets.size()) + " independent labels for a " +
                                                       std::to_string(dim) + "-dimensional cell; missing minors " +
                                                       missing_text());
    }
    Eigen::NumericalDiff<FitFunctor> numeric(fn);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> start(-3.0, 3.0);
    Eigen::VectorXd best;
    double best_norm = INFINITY;
    for (int trial = 0; trial < 16 && best_norm > fit_tol; ++trial) {
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
        if (trial > 0)
            for (int i = 0; i < dim; ++i) theta(i) = start(rng);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FitFunctor>> lm(numeric);
        lm.parameters.maxfev = 4000;
        lm.parameters.xtol = 1e-15;
        lm.parameters.ftol = 1e-15;
        lm.minimize(theta);
        Eigen::VectorXd f(fn.values());
        fn(theta, f);
        const double norm = f.lpNorm<Eigen::Infinity>();
        if (norm < best_norm) {
            best_norm = norm;
            best = theta;
        }
    }
    if (best_norm > fit_tol) {
        throw Error(ErrorCode::NoConvergence, "Le-network fit stalled at residual " + std::to_string(best_norm));
    }
    Eigen::MatrixXd jac(fn.values(), dim);
    numeric.df(best, jac);
    out.jacobian_rank = static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(jac).rank());
    if (out.jacobian_rank < dim) {
        throw Error(ErrorCode::InsufficientLabels, "observed labels leave " + std::to_string(dim - out.jacobian_rank) +
                                                       " directions free; missing minors " + missing_text());
    }
    std::vector<double> w(dim);
    for (int i = 0; i < dim; ++i) w[i] = std::exp(best(i));
    out.point = le_network_point(le, w);
    out.residual = log_residual(out.point, logs);
    return out;
}

double max_ratio_error(const GrassmannPoint& a, const GrassmannPoint& b) {
    const auto& pa = a.pluecker();
    const auto& pb = b.pluecker();
    if (pa.k() != pb.k() || pa.n() != pb.n()) throw Error(ErrorCode::InvalidArgument, "points of different Grassmannians");
    const auto& va = pa.values();
    const std::size_t ref = std::max_element(va.begin(), va.end(), [](double x, double y) {
                                return std::abs(x) < std::abs(y);
                            }) - va.begin();
    const Subset rs = pa.subsets()[ref];
    const double cut = kDefaultTol * std::abs(va[ref]);
    double worst = 0.0;
    for (Subset s : pa.subsets()) {
        const double ra = pa[s] / pa[rs];
        const double rb = pb[s] / pb[rs];
        worst = std::max(worst, std::abs(pa[s]) > cut ? std::abs(ra - rb) / std::abs(ra) : std::abs(rb));
    }
    return worst;
}

}  // namespace kp
