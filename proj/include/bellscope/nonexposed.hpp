#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellscope/catalog.hpp"
#include "bellscope/correlation.hpp"
#include "bellscope/simplex.hpp"
#include "bellscope/strategy.hpp"

// Local-polytope membership, no-signaling feasibility of zero patterns, and
// the primal/dual non-exposedness certificates.
namespace bellscope {

struct LocalMembership {
    bool inside = false;
    std::optional<std::array<double, 16>> weights;     // over deterministic points
    std::optional<BellFunctional> separating;          // B.c > 0 >= B.P_dj
};

LocalMembership local_membership(const Correlation& c);

// feasibility of {p >= 0, normalized, no-signaling, p|pattern = 0}
bool ns_zero_feasibility(const ZeroPattern& pattern);

struct TVector {
    std::array<double, 16> t{};
    PureState phi;

    double dot(std::span<const double> v) const {
        double s = 0;
        for (int i = 0; i < 16; ++i) s += t[i] * v[i];
        return s;
    }
};

// T(a,b|x,y) = Re <phi| M^A_{a|x} (x) M^B_{b|y} |psi> for phi orthogonal to
// the strategy's state.
TVector t_vector(const Strategy& s, const PureState& phi, double tol = 1e-10);

struct NonExposedPrimal {
    LpStatus status = LpStatus::Infeasible;
    double value = 0;
    BellFunctional maximizer;
    std::vector<int> saturating;  // deterministic points with B.P_dj ~ 1
};

// max B.c s.t. B.T_i = 0, B.P_dj <= 1. Certifies non-exposedness when the
// value is 1 and some deterministic point saturates its constraint.
NonExposedPrimal nonexposed_primal(const Correlation& c, std::span<const TVector> ts);

struct DualCheck {
    bool feasible = false;
    double value = 0;
    double residual = 0;
};

// checks y >= 0 and sum_j y_j P_dj + sum_i z_i T_i = c; value = sum_j y_j
DualCheck nonexposed_dual_check(const Correlation& c, std::span<const TVector> ts,
                                std::span<const double> y, std::span<const double> z,
                                double tol = 1e-9);

struct NonExposedCertificate {
    std::string point;
    std::vector<TVector> t_vectors;
    std::array<double, 16> y{};
    std::vector<double> z;
    double primal_value = 0;
    double dual_value = 0;
    double residual = 0;
    std::vector<int> saturating;
    bool analytic_dual = true;  // false when the dual was solved numerically
};

// Builds the appendix certificate for {Hardy, Q, Q2, Q3, Cabello, Q4}; the
// Hardy dual has no published closed form and is derived by solving the dual
// linear program (flagged analytic_dual = false).
NonExposedCertificate certify_nonexposed(NamedPoint name);

}  // namespace bellscope
