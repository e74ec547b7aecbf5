#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bellscope/correlation.hpp"
#include "bellscope/strategy.hpp"

// Constrained CHSH maxima per zero class, grid-scan oracles, the Class-2b
// success-probability identity, and the maximally-entangled-state bounds.
namespace bellscope {

struct CubicPoly {
    // c3 x^3 + c2 x^2 + c1 x + c0, c3 != 0
    double c3, c2, c1, c0;

    double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
    double deriv(double x) const { return (3 * c3 * x + 2 * c2) * x + c1; }
};

// All real roots (Cardano plus a Newton polish), ascending.
std::vector<double> cubic_roots(const CubicPoly& p);
double smallest_positive_root(const CubicPoly& p);

struct ClassOptimum {
    ClassLabel label;
    double value;
    Strategy strategy;
    // derived diagnostics: stationarity residuals, defining-relation checks
    std::vector<std::pair<std::string, double>> trace;
};

// Closed-form constrained maximum for labels 3a, 3b, 2a, 2b, 2c, 1.
// Throws for 4a (not quantum realizable) and 4b (local, max 2).
ClassOptimum max_chsh_class(ClassLabel label);

struct ScanResult {
    double scan_max = 0;
    double gap = 0;  // closed form minus scan maximum
    long long points = 0;
};

// Exhaustive midpoint-offset grid over the class family's free parameters,
// phases collapsed to the zeta = +-1 branches. grid_n is the per-axis count
// for the 2- and 3-parameter classes; Class 1 spreads the same budget
// (grid_n^3 points) over its four axes.
ScanResult scan_verify(ClassLabel label, int grid_n);

// Coarse scan landscape as CSV: params..., S, class_ok.
void scan_landscape_csv(ClassLabel label, int grid_n, std::ostream& os);

// D = P(1,1|1,1) - P(1,1|0,1) for behaviors with the Class-2b zeros;
// S = 4D + 2 on that class.
double success_probability_D(const Correlation& c, double tol = 1e-8);

// 2 sqrt(2) (d-1)/d + 2/d for odd d, 2 sqrt(2) for even d.
double max_chsh_mes(int d);

struct BlockStrategy {
    Strategy strategy;  // measurements block diagonal, state |Phi+_d>
    std::vector<std::pair<double, Correlation>> decomposition;
};

// floor(d/2) CHSH-optimal qubit blocks plus a deterministic scalar block
// when d is odd; born_mes attains max_chsh_mes(d).
BlockStrategy construct_block_strategy(int d);

}  // namespace bellscope
