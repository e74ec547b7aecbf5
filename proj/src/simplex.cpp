#include "bellscope/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellscope {

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

constexpr double kPivotTol = 1e-10;

// Dense tableau simplex over min c.z, A z = b, z >= 0 with b >= 0 maintained.
struct Tableau {
    Eigen::MatrixXd a;   // m x n
    Eigen::VectorXd b;   // m
    Eigen::VectorXd c;   // n
    std::vector<int> basis;
    int barred_from = -1;  // columns >= this may not enter (artificials in phase 2)

    int m() const { return int(a.rows()); }
    int n() const { return int(a.cols()); }

    // returns false when unbounded
    bool run() {
        const int limit_degenerate = 10 * n();
        int degenerate_streak = 0;
        bool bland = false;
        // reduced costs maintained directly in c (c_B components kept at 0)
        for (long iter = 0;; ++iter) {
            if (iter > 200000) throw std::runtime_error("simplex: iteration limit");
            int enter = -1;
            if (!bland) {
                double best = -kPivotTol;
                for (int j = 0; j < n(); ++j) {
                    if (barred_from >= 0 && j >= barred_from) continue;
                    if (c(j) < best) {
                        best = c(j);
                        enter = j;
                    }
                }
            } else {
                for (int j = 0; j < n(); ++j) {
                    if (barred_from >= 0 && j >= barred_from) continue;
                    if (c(j) < -kPivotTol) {
                        enter = j;
                        break;
                    }
                }
            }
            if (enter < 0) return true;

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m(); ++i) {
                if (a(i, enter) > kPivotTol) {
                    double ratio = b(i) / a(i, enter);
                    if (ratio < best_ratio - 1e-12 ||
                        (bland && ratio < best_ratio + 1e-12 &&
                         (leave < 0 || basis[i] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded direction

            if (best_ratio < 1e-12) {
                if (++degenerate_streak > limit_degenerate) bland = true;
            } else {
                degenerate_streak = 0;
                bland = false;
            }
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        const double p = a(row, col);
        a.row(row) /= p;
        b(row) /= p;
        for (int i = 0; i < m(); ++i) {
            if (i == row) continue;
            const double f = a(i, col);
            if (f != 0.0) {
                a.row(i) -= f * a.row(row);
                b(i) -= f * b(row);
            }
        }
        const double fc = c(col);
        if (fc != 0.0) c -= fc * a.row(row).transpose();
        basis[row] = col;
        b(row) = std::max(b(row), 0.0);
    }
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    const int nv = lp.num_vars();
    const int n_eq = int(lp.eq_rhs.size());
    const int n_in = int(lp.ineq_rhs.size());
    if ((n_eq && lp.eq_mat.cols() != nv) || (n_in && lp.ineq_mat.cols() != nv))
        throw std::invalid_argument("solve_lp: dimension mismatch");
    if (!lp.free_var.empty() && int(lp.free_var.size()) != nv)
        throw std::invalid_argument("solve_lp: free_var size mismatch");

    auto is_free = [&](int j) { return !lp.free_var.empty() && lp.free_var[j]; };
    int n_free = 0;
    for (int j = 0; j < nv; ++j) n_free += is_free(j);

    // standard-form columns: x+ for all vars, then x- for free vars, then
    // slacks for the inequality rows, then artificials.
    const int n_std = nv + n_free + n_in;
    const int m = n_eq + n_in;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n_std + m);
    Eigen::VectorXd b(m);
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_std + m);

    std::vector<int> neg_col(nv, -1);
    {
        int k = nv;
        for (int j = 0; j < nv; ++j)
            if (is_free(j)) neg_col[j] = k++;
    }
    for (int i = 0; i < n_eq; ++i) {
        for (int j = 0; j < nv; ++j) {
            a(i, j) = lp.eq_mat(i, j);
            if (neg_col[j] >= 0) a(i, neg_col[j]) = -lp.eq_mat(i, j);
        }
        b(i) = lp.eq_rhs(i);
    }
    for (int i = 0; i < n_in; ++i) {
        const int r = n_eq + i;
        for (int j = 0; j < nv; ++j) {
            a(r, j) = lp.ineq_mat(i, j);
            if (neg_col[j] >= 0) a(r, neg_col[j]) = -lp.ineq_mat(i, j);
        }
        a(r, nv + n_free + i) = 1.0;  // slack
        b(r) = lp.ineq_rhs(i);
    }
    for (int j = 0; j < nv; ++j) {
        cost(j) = -lp.objective(j);  // maximize -> minimize
        if (neg_col[j] >= 0) cost(neg_col[j]) = lp.objective(j);
    }

    std::vector<int> row_sign(m, 1);
    for (int i = 0; i < m; ++i)
        if (b(i) < 0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
            row_sign[i] = -1;
        }
    for (int i = 0; i < m; ++i) a(i, n_std + i) = 1.0;

    Tableau t;
    t.a = a;
    t.b = b;
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) t.basis[i] = n_std + i;

    // phase 1: minimize the artificial sum
    t.c = Eigen::VectorXd::Zero(n_std + m);
    for (int i = 0; i < m; ++i) t.c(n_std + i) = 1.0;
    double phase1_shift = 0;
    for (int i = 0; i < m; ++i) {
        t.c -= t.a.row(i).transpose();
        phase1_shift += t.b(i);
    }
    t.barred_from = -1;
    if (!t.run()) throw std::runtime_error("solve_lp: phase 1 unbounded");
    double infeas = phase1_shift;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= n_std) infeas = infeas;  // artificial may be basic at 0
    {
        // current phase-1 objective value = sum of basic artificial values
        double val = 0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= n_std) val += t.b(i);
        infeas = val;
    }
    LpOutcome out;
    if (infeas > kLpFeasTol) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n_std) continue;
        int col = -1;
        for (int j = 0; j < n_std; ++j)
            if (std::abs(t.a(i, j)) > 1e-8) {
                col = j;
                break;
            }
        if (col >= 0) t.pivot(i, col);
        // a fully-zero row is redundant; the artificial stays basic at 0
    }

    // phase 2
    t.c = cost;
    for (int i = 0; i < m; ++i) {
        const int j = t.basis[i];
        const double cj = t.c(j);
        if (cj != 0.0) t.c -= cj * t.a.row(i).transpose();
    }
    t.barred_from = n_std;
    if (!t.run()) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n_std + m);
    for (int i = 0; i < m; ++i) z(t.basis[i]) = t.b(i);
    out.x = Eigen::VectorXd(nv);
    for (int j = 0; j < nv; ++j)
        out.x(j) = z(j) - (neg_col[j] >= 0 ? z(neg_col[j]) : 0.0);
    out.value = lp.objective.dot(out.x);
    out.status = LpStatus::Optimal;

    // duals from the artificial columns' reduced costs: rc(art_i) = c_i - y_i
    // with phase-2 artificial cost 0, so y_i = -rc; undo the row negations.
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) y(i) = -t.c(n_std + i) * row_sign[i];
    out.dual_eq = Eigen::VectorXd(n_eq);
    out.dual_ineq = Eigen::VectorXd(n_in);
    for (int i = 0; i < n_eq; ++i) out.dual_eq(i) = -y(i);
    for (int i = 0; i < n_in; ++i) out.dual_ineq(i) = -y(n_eq + i);

    // contract diagnostics
    double feas = 0;
    if (n_eq) feas = std::max(feas, (lp.eq_mat * out.x - lp.eq_rhs).cwiseAbs().maxCoeff());
    if (n_in) feas = std::max(feas, (lp.ineq_mat * out.x - lp.ineq_rhs).maxCoeff());
    for (int j = 0; j < nv; ++j)
        if (!is_free(j)) feas = std::max(feas, -out.x(j));
    out.feasibility_residual = std::max(feas, 0.0);

    double comp = 0;
    for (int i = 0; i < n_in; ++i)
        comp = std::max(comp, std::abs(out.dual_ineq(i) *
                                       (lp.ineq_rhs(i) - lp.ineq_mat.row(i).dot(out.x))));
    out.complementarity_residual = comp;
    return out;
}

}  // namespace bellscope
