#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Behaviors in the CHSH scenario: the 16 joint conditional probabilities
// P(a,b|x,y), their validity/no-signaling checks, correlators, the CHSH
// functional, canonical points, the relabeling group, and zero-class
// classification.
namespace bellscope {

// Flat cell index. All 16-vectors in the library use this order.
constexpr int cell_index(int a, int b, int x, int y) {
    return a + 2 * b + 4 * x + 8 * y;
}

struct Cell {
    int a, b, x, y;
    bool operator==(const Cell&) const = default;
};

constexpr Cell cell_of(int idx) {
    return Cell{idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, (idx >> 3) & 1};
}

struct Correlation {
    std::array<double, 16> p{};

    double& operator()(int a, int b, int x, int y) { return p[cell_index(a, b, x, y)]; }
    double operator()(int a, int b, int x, int y) const { return p[cell_index(a, b, x, y)]; }
};

struct BellFunctional {
    std::array<double, 16> coeff{};

    double& operator()(int a, int b, int x, int y) { return coeff[cell_index(a, b, x, y)]; }
    double operator()(int a, int b, int x, int y) const { return coeff[cell_index(a, b, x, y)]; }

    double dot(const Correlation& c) const {
        double s = 0;
        for (int i = 0; i < 16; ++i) s += coeff[i] * c.p[i];
        return s;
    }
};

struct ValidityReport {
    bool nonneg = false;
    bool normalized = false;
    bool no_signaling = false;

    bool all() const { return nonneg && normalized && no_signaling; }
};

// One element of the 128-element relabeling group. Action on a table:
// party swap first (transpose), then setting swaps, then outcome flips
// indexed by the setting as seen after the swaps.
struct Relabeling {
    std::array<int, 2> a_flip{0, 0};
    std::array<int, 2> b_flip{0, 0};
    int x_swap = 0;
    int y_swap = 0;
    int party_swap = 0;

    // perm[i] = source cell for destination cell i: out.p[i] = in.p[perm[i]].
    std::array<int, 16> cell_permutation() const;
};

// All 128 group elements, fixed enumeration order.
const std::vector<Relabeling>& relabeling_group();

// Set of table cells below the zero tolerance, stored as a 16-bit mask in
// cell_index order.
struct ZeroPattern {
    std::uint16_t mask = 0;

    bool contains(int a, int b, int x, int y) const {
        return mask >> cell_index(a, b, x, y) & 1;
    }
    void add(int a, int b, int x, int y) { mask |= std::uint16_t(1) << cell_index(a, b, x, y); }
    int count() const;
    std::vector<Cell> cells() const;
};

enum class ClassLabel {
    None,
    C1,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C4a,
    C4b,
    LocalByLemma1,
    Unphysical,
};

std::string to_string(ClassLabel label);

constexpr double kDefaultZeroTol = 1e-9;

ValidityReport validate(const Correlation& c, double tol);

// <A_x B_y> = sum (-1)^(a+b) P(a,b|x,y).
double correlator(const Correlation& c, int x, int y);

// sum (-1)^(xy+a+b+1) P(a,b|x,y) = -<A0B0>-<A0B1>-<A1B0>+<A1B1>.
double chsh_value(const Correlation& c);

// P(a,b|x,y) = 1/2 delta_{a xor b, xy xor alpha x xor beta y xor gamma}.
Correlation pr_box(int alpha, int beta, int gamma);

// The 16 local deterministic behaviors, j in 0..15:
// a = (j mod 2) x xor bit1(j), b = bit2(j) y xor bit3(j).
Correlation deterministic_point(int j);

Correlation uniform_point();

// Convex combination; weights must be nonnegative and sum to 1 within tol.
Correlation mix(std::span<const std::pair<double, Correlation>> terms,
                double tol = 1e-9);

Correlation apply_relabeling(const Correlation& c, const Relabeling& r);

ZeroPattern zero_pattern(const Correlation& c, double tol = kDefaultZeroTol);

// Lexicographically smallest bitmask over the 128-element relabeling orbit.
ZeroPattern canonical_pattern(ZeroPattern pat);

// Reference zero pattern of each class (the paper's table orientation).
ZeroPattern class_reference_pattern(ClassLabel label);

ClassLabel classify_zero_pattern(ZeroPattern pat);

ClassLabel classify_zero_class(const Correlation& c, double tol = kDefaultZeroTol);

}  // namespace bellscope
