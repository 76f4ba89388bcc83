#pragma once

#include <functional>
#include <string_view>

#include <Eigen/Core>

namespace ldecm {

/// Objective callback: fills grad (same size as x) and returns the value.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

enum class SolveStatus {
    converged,           ///< projected gradient below tolerance
    max_iterations,
    line_search_failed,  ///< no acceptable step along any tried direction
    diverged_nonfinite,  ///< objective not finite and no recovery possible
};

std::string_view to_string(SolveStatus s);

struct SolveOptions {
    int max_iter = 500;
    double grad_tol = 1e-6;  ///< infinity norm of the projected gradient
    int memory = 10;
    double armijo_c = 1e-4;
    int max_line_search = 40;
    /// Called after every accepted iterate.
    std::function<void(int iter, double f, double pg_norm)> on_iteration;
};

struct SolveReport {
    SolveStatus status = SolveStatus::max_iterations;
    int iterations = 0;
    int evaluations = 0;
    double objective = 0.0;
    double grad_norm = 0.0;
};

/// Projected quasi-Newton minimization over a box. Directions come from an
/// L-BFGS two-loop recursion restricted to the free variables; steps are
/// backtracked along the projection arc with an Armijo condition, so every
/// accepted iterate is feasible and the objective never increases.
SolveReport minimize_box(const Objective& objective, Eigen::VectorXd& x,
                         const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                         const SolveOptions& options);

}  // namespace ldecm
