#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "bellscope/correlation.hpp"

// Quantum strategies: states, dichotomic observables and POVMs, Born rule,
// maximally-entangled-state correlations, local-unitary equivalence, Jordan
// block decomposition, the SWAP isometry check and entanglement of formation.
namespace bellscope {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct PureState {
    Vector amps;  // product basis |i>_A|j>_B, index i*dim_b + j
    int dim_a = 2;
    int dim_b = 2;

    cdouble amp(int i, int j) const { return amps(i * dim_b + j); }
    // amplitude matrix C with psi = sum_ij C(i,j) |i>|j>
    Matrix amp_matrix() const;
};

PureState make_pure_state(const Vector& amps, int dim_a, int dim_b,
                          double tol = 1e-12);

// Dichotomic observable: Hermitian, squares to identity.
bool is_observable(const Matrix& m, double tol = 1e-10);

struct Povm {
    std::vector<Matrix> elements;

    int dim() const { return elements.empty() ? 0 : int(elements[0].rows()); }
};

bool is_valid_povm(const Povm& m, double sum_tol = 1e-10, double psd_floor = -1e-12);

// {(1+O)/2, (1-O)/2}
Povm povm_from_observable(const Matrix& obs);
// M_0 - M_1
Matrix observable_from_povm(const Povm& m);

// Dichotomic-measurement strategy; storage is POVM-first so noisy
// (non-projective) strategies are first-class.
struct Strategy {
    PureState state;
    std::array<Povm, 2> meas_a;
    std::array<Povm, 2> meas_b;

    Matrix observable_a(int x) const { return observable_from_povm(meas_a[x]); }
    Matrix observable_b(int y) const { return observable_from_povm(meas_b[y]); }
    bool projective(double tol = 1e-9) const;
};

Strategy make_qubit_strategy(const Vector& amps,
                             const std::array<Matrix, 2>& obs_a,
                             const std::array<Matrix, 2>& obs_b);

// P(a,b|x,y) = <psi| M^A_{a|x} (x) M^B_{b|y} |psi>
Correlation born(const Strategy& s);

// P(a,b|x,y) = tr(E^T_{a|x} F_{b|y}) / d for the maximally entangled state.
Correlation born_mes(int d, const std::array<Povm, 2>& meas_a,
                     const std::array<Povm, 2>& meas_b);

// |Phi^+_d>
PureState mes_state(int d);

// Local-unitary transport per the d-equivalence definition, decided through
// a Schmidt canonical form. States are compared up to global phase (by
// fidelity); measurement transport is checked factor-wise on each party.
std::optional<std::pair<Matrix, Matrix>> local_unitary_equivalent(
    const Strategy& s1, const Strategy& s2, double tol = 1e-9);

struct BlockDecomposition {
    Matrix basis;            // unitary; columns are the adapted basis
    std::vector<int> sizes;  // block sizes in order, each 1 or 2
};

// Simultaneous block diagonalization of two Hermitian projectors, blocks of
// size 1 or 2 (Jordan's two-projection lemma). Eigenvalues of (P-Q)^2 are
// clustered at tolerance 1e-8 to keep near-degenerate pairs together.
BlockDecomposition jordan_blocks(const Matrix& p, const Matrix& q);

// Fidelity of the swapped-out state against the reference state, using the
// SWAP circuit built from the tested strategy's own observables with the
// reference angles. Requires qubit projective strategies; the reference
// observables must lie in the sigma_x / sigma_z plane.
double swap_isometry_check(const Strategy& s, const Strategy& ref);

// Binary entropy of the reduced-state spectrum (base 2).
double entanglement_of_formation(const PureState& psi);

// Lemma-3 style check: given tr(E^T F)/d below tol, asserts the commutator
// [E^T, F] is small (Frobenius bound 2 sqrt(d tol)) and returns the
// simultaneous-diagonalizability verdict.
bool lemma3_check(const Matrix& e, const Matrix& f, double tol);

}  // namespace bellscope
