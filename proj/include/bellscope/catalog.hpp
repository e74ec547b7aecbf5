#pragma once

#include <optional>
#include <string>

#include "bellscope/correlation.hpp"
#include "bellscope/strategy.hpp"

// The per-class strategy families and the named boundary correlations, with
// their closed-form constants.
namespace bellscope {

// Angles in radians. theta/alpha/beta parameterize the state and the two
// tilted observables. For the one- and two-zero families built on the
// four-parameter template, phi is the second state angle; for the other
// classes phi is the state phase and gamma/omega are the measurement
// phases (they enter the correlation only through their sum per party).
struct StrategyParams {
    double theta = 0;
    double alpha = 0;
    double beta = 0;
    double phi = 0;
    double gamma_a = 0;
    double gamma_b = 0;
    double omega_a = 0;
    double omega_b = 0;
};

struct NamedConstants {
    double nu;           // sqrt(5) - 2
    double hardy_angle;  // (1/2) atan(-2 sqrt(sqrt(5)+2))

    double tau;  // cbrt(17 + 3 sqrt(33))
    double theta0, alpha0;
    double kappa1, kappa2, kappa3;

    double xi1, xi2, xi3;  // smallest positive roots of p1, p2, p3

    double mu1, mu2, mu3, mu_plus, mu_minus;
    double k1, k2, k3;
    double alpha_2c;

    double zeta1, zeta2, zeta3;  // smallest positive roots of q1, q2, q3
};

const NamedConstants& named_constants();

// Per-class strategy family. Parameters must satisfy the class constraint
// (the built strategy is required to show the class's zero cells within
// 1e-9) and stay away from the degenerate angles n*pi/2.
Strategy family(ClassLabel label, const StrategyParams& params);

enum class NamedPoint { Hardy, Q, Q2, Q3, Cabello, Q4, PR, PR2, CHSH, CHSH2, Uniform };

std::optional<NamedPoint> parse_named_point(const std::string& name);
std::string to_string(NamedPoint p);

struct NamedPointData {
    std::optional<Strategy> strategy;
    Correlation correlation;
};

NamedPointData named_point(NamedPoint name);

// Class-2a Bell-state strategy with Alice's first POVM element scaled by
// (1-eps); the resulting behavior keeps exactly one zero (Class 1).
Strategy noisy_class2a(double eps);

// Zero-pattern cells each class requires (reference table orientation).
std::vector<Cell> class_zero_cells(ClassLabel label);

}  // namespace bellscope
