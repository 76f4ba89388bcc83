#include "ldecm/optim.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "ldecm/errors.hpp"

namespace ldecm {

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::line_search_failed: return "line_search_failed";
        case SolveStatus::diverged_nonfinite: return "diverged_nonfinite";
    }
    return "unknown";
}

namespace {

Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi) {
    return x.cwiseMax(lo).cwiseMin(hi);
}

/// Gradient with components pointing out of the box at active bounds zeroed.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                                   const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd pg = g;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if ((x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0)) {
            pg[i] = 0.0;
        }
    }
    return pg;
}

struct Pair {
    Eigen::VectorXd s;
    Eigen::VectorXd y;
    double rho = 0.0;
};

Eigen::VectorXd two_loop_direction(const std::deque<Pair>& pairs, const Eigen::VectorXd& g) {
    Eigen::VectorXd q = -g;
    if (pairs.empty()) {
        return q;
    }
    std::vector<double> alpha(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
        alpha[i] = pairs[i].rho * pairs[i].s.dot(q);
        q -= alpha[i] * pairs[i].y;
    }
    const Pair& last = pairs.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double beta = pairs[i].rho * pairs[i].y.dot(q);
        q += (alpha[i] - beta) * pairs[i].s;
    }
    return q;
}

}  // namespace

SolveReport minimize_box(const Objective& objective, Eigen::VectorXd& x,
                         const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                         const SolveOptions& options) {
    if (x.size() != lower.size() || x.size() != upper.size()) {
        throw InternalError("minimize_box: bound sizes do not match x");
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(lower[i] <= upper[i])) {
            throw InternalError("minimize_box: lower bound above upper bound");
        }
    }

    SolveReport report;
    x = clamp_to_box(x, lower, upper);
    Eigen::VectorXd g(x.size());
    double f = objective(x, g);
    ++report.evaluations;
    if (!std::isfinite(f)) {
        report.status = SolveStatus::diverged_nonfinite;
        report.objective = f;
        return report;
    }

    std::deque<Pair> pairs;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        report.iterations = iter;
        const Eigen::VectorXd pg = projected_gradient(x, g, lower, upper);
        const double pg_norm = pg.size() ? pg.cwiseAbs().maxCoeff() : 0.0;
        report.grad_norm = pg_norm;
        report.objective = f;
        if (pg_norm < options.grad_tol) {
            report.status = SolveStatus::converged;
            return report;
        }

        bool tried_reset = pairs.empty();
        Eigen::VectorXd d = two_loop_direction(pairs, g);
        // Components that would push into an active bound cannot move; drop
        // them so the directional derivative test below is meaningful.
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if ((x[i] <= lower[i] && d[i] < 0.0) || (x[i] >= upper[i] && d[i] > 0.0)) {
                d[i] = 0.0;
            }
        }
        if (!(d.dot(g) < 0.0)) {
            pairs.clear();
            tried_reset = true;
            d = -pg;
        }

        // Backtracking search along the projection arc.
        double step = 1.0;
        Eigen::VectorXd x_new;
        Eigen::VectorXd g_new(x.size());
        double f_new = std::numeric_limits<double>::quiet_NaN();
        bool accepted = false;
        for (int ls = 0; ls < options.max_line_search; ++ls) {
            x_new = clamp_to_box(x + step * d, lower, upper);
            const double pred = g.dot(x_new - x);
            if (pred >= 0.0) {
                // Projection removed all descent; shrinking cannot fix that
                // for a gradient-like direction, so fall through to failure.
                if ((x_new - x).cwiseAbs().maxCoeff() == 0.0) {
                    break;
                }
                step *= 0.5;
                continue;
            }
            f_new = objective(x_new, g_new);
            ++report.evaluations;
            if (std::isfinite(f_new) && f_new <= f + options.armijo_c * pred) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }

        if (!accepted) {
            if (!tried_reset) {
                // Quasi-Newton memory may be stale; retry from steepest descent.
                pairs.clear();
                continue;
            }
            report.status = SolveStatus::line_search_failed;
            return report;
        }

        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd yv = g_new - g;
        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            pairs.push_back({s, yv, 1.0 / sy});
            if (pairs.size() > static_cast<std::size_t>(options.memory)) {
                pairs.pop_front();
            }
        }
        x = x_new;
        f = f_new;
        g = g_new;
        if (options.on_iteration) {
            const Eigen::VectorXd pg_acc = projected_gradient(x, g, lower, upper);
            options.on_iteration(iter + 1, f,
                                 pg_acc.size() ? pg_acc.cwiseAbs().maxCoeff() : 0.0);
        }
    }
    report.iterations = options.max_iter;
    report.objective = f;
    const Eigen::VectorXd pg = projected_gradient(x, g, lower, upper);
    report.grad_norm = pg.size() ? pg.cwiseAbs().maxCoeff() : 0.0;
    report.status = SolveStatus::max_iterations;
    return report;
}

}  // namespace ldecm
