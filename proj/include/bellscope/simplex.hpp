#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

// Small dense linear programming: two-phase primal simplex with Dantzig
// pricing and a Bland's-rule anti-cycling fallback.
namespace bellscope {

// maximize objective . x
//   subject to  eq_mat x = eq_rhs,  ineq_mat x <= ineq_rhs,
//   x_j >= 0 unless free_var[j].
struct LinearProgram {
    Eigen::VectorXd objective;
    Eigen::MatrixXd eq_mat;
    Eigen::VectorXd eq_rhs;
    Eigen::MatrixXd ineq_mat;
    Eigen::VectorXd ineq_rhs;
    std::vector<bool> free_var;  // empty means all nonnegative

    int num_vars() const { return int(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

// On Optimal the duals satisfy the max-LP convention:
//   objective_j - dual_eq . eq_col_j - dual_ineq . ineq_col_j <= 0,
//   dual_ineq >= 0, value = dual_eq . eq_rhs + dual_ineq . ineq_rhs
// (bound multipliers for x_j >= 0 absorb the slack in the first line).
struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double value = 0;
    Eigen::VectorXd x;
    Eigen::VectorXd dual_eq;
    Eigen::VectorXd dual_ineq;

    double feasibility_residual = 0;
    double complementarity_residual = 0;
};

LpOutcome solve_lp(const LinearProgram& lp);

constexpr double kLpFeasTol = 1e-9;

}  // namespace bellscope
