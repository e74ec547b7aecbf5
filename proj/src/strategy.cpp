#include "bellscope/strategy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellscope {

namespace {

const Matrix& pauli_x() {
    static const Matrix m = [] {
        Matrix s(2, 2);
        s << 0, 1, 1, 0;
        return s;
    }();
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Matrix PureState::amp_matrix() const {
    Matrix c(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) c(i, j) = amp(i, j);
    return c;
}

PureState make_pure_state(const Vector& amps, int dim_a, int dim_b, double tol) {
    if (amps.size() != Eigen::Index(dim_a) * dim_b)
        throw std::invalid_argument("make_pure_state: dimension mismatch");
    if (std::abs(amps.norm() - 1.0) > tol)
        throw std::invalid_argument("make_pure_state: state not normalized");
    return PureState{amps, dim_a, dim_b};
}

bool is_observable(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    if ((m - m.adjoint()).norm() > tol) return false;
    return (m * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

bool is_valid_povm(const Povm& m, double sum_tol, double psd_floor) {
    if (m.elements.empty()) return false;
    const int d = m.dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : m.elements) {
        if (e.rows() != d || e.cols() != d) return false;
        if ((e - e.adjoint()).norm() > sum_tol) return false;
        Eigen::SelfAdjointEigenSolver<Matrix> es(e);
        if (es.eigenvalues().minCoeff() < psd_floor) return false;
        sum += e;
    }
    return (sum - Matrix::Identity(d, d)).norm() <= sum_tol;
}

Povm povm_from_observable(const Matrix& obs) {
    const Matrix id = Matrix::Identity(obs.rows(), obs.cols());
    return Povm{{(id + obs) / 2.0, (id - obs) / 2.0}};
}

Matrix observable_from_povm(const Povm& m) {
    if (m.elements.size() != 2) throw std::invalid_argument("observable_from_povm: need 2 elements");
    return m.elements[0] - m.elements[1];
}

bool Strategy::projective(double tol) const {
    for (const auto* side : {&meas_a, &meas_b})
        for (const auto& povm : *side)
            for (const auto& e : povm.elements)
                if ((e * e - e).norm() > tol) return false;
    return true;
}

Strategy make_qubit_strategy(const Vector& amps, const std::array<Matrix, 2>& obs_a,
                             const std::array<Matrix, 2>& obs_b) {
    for (const auto& o : obs_a)
        if (!is_observable(o)) throw std::invalid_argument("make_qubit_strategy: invalid A observable");
    for (const auto& o : obs_b)
        if (!is_observable(o)) throw std::invalid_argument("make_qubit_strategy: invalid B observable");
    Strategy s;
    s.state = make_pure_state(amps, 2, 2);
    s.meas_a = {povm_from_observable(obs_a[0]), povm_from_observable(obs_a[1])};
    s.meas_b = {povm_from_observable(obs_b[0]), povm_from_observable(obs_b[1])};
    return s;
}

Correlation born(const Strategy& s) {
    const int da = s.state.dim_a, db = s.state.dim_b;
    for (const auto& povm : s.meas_a)
        if (povm.dim() != da) throw std::invalid_argument("born: A dimension mismatch");
    for (const auto& povm : s.meas_b)
        if (povm.dim() != db) throw std::invalid_argument("born: B dimension mismatch");

    // <psi| E (x) F |psi> = tr(C^dag E C F^T) with C the amplitude matrix
    const Matrix c = s.state.amp_matrix();
    Correlation out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Matrix& e = s.meas_a[x].elements[a];
                    const Matrix& f = s.meas_b[y].elements[b];
                    out(a, b, x, y) = std::real((c.adjoint() * e * c * f.transpose()).trace());
                }
    return out;
}

Correlation born_mes(int d, const std::array<Povm, 2>& meas_a,
                     const std::array<Povm, 2>& meas_b) {
    if (d < 2) throw std::invalid_argument("born_mes: d must be >= 2");
    for (const auto& povm : meas_a)
        if (povm.dim() != d) throw std::invalid_argument("born_mes: A dimension mismatch");
    for (const auto& povm : meas_b)
        if (povm.dim() != d) throw std::invalid_argument("born_mes: B dimension mismatch");
    Correlation out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out(a, b, x, y) = std::real(
                        (meas_a[x].elements[a].transpose() * meas_b[y].elements[b]).trace()) / d;
    return out;
}

PureState mes_state(int d) {
    if (d < 2) throw std::invalid_argument("mes_state: d must be >= 2");
    Vector v = Vector::Zero(Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i) v(Eigen::Index(i) * d + i) = 1.0 / std::sqrt(double(d));
    return PureState{v, d, d};
}

namespace {

// Schmidt form of a two-qubit state: unitaries (wa, wb) with
// wa * C * wb^T = diag(s0, s1), s0 >= s1 >= 0.
struct SchmidtForm {
    Matrix wa, wb;
    double s0, s1;
};

SchmidtForm schmidt_form(const PureState& psi) {
    Eigen::JacobiSVD<Matrix> svd(psi.amp_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtForm f;
    f.wa = svd.matrixU().adjoint();
    f.wb = svd.matrixV().transpose();
    f.s0 = svd.singularValues()(0);
    f.s1 = svd.singularValues()(1);
    return f;
}

// Diagonal-phase transport: find delta with D P_x D^dag = Q_x for
// D = diag(1, e^{i delta}). Returns {found, constrained, delta}.
struct PhaseSolve {
    bool ok = false;
    bool constrained = false;
    double delta = 0.0;
};

PhaseSolve solve_diagonal_phase(const std::vector<Matrix>& ps, const std::vector<Matrix>& qs,
                                double tol) {
    PhaseSolve r;
    r.ok = true;
    for (size_t k = 0; k < ps.size(); ++k) {
        const Matrix& p = ps[k];
        const Matrix& q = qs[k];
        if (std::abs(p(0, 0) - q(0, 0)) > tol || std::abs(p(1, 1) - q(1, 1)) > tol) {
            r.ok = false;
            return r;
        }
        const double mag_p = std::abs(p(0, 1)), mag_q = std::abs(q(0, 1));
        if (std::abs(mag_p - mag_q) > tol) {
            r.ok = false;
            return r;
        }
        if (mag_p > tol) {
            // q01 = e^{-i delta} p01
            double delta = std::arg(p(0, 1)) - std::arg(q(0, 1));
            if (r.constrained) {
                double diff = std::remainder(delta - r.delta, 2 * std::numbers::pi);
                if (std::abs(diff) > 1e2 * tol) {
                    r.ok = false;
                    return r;
                }
            } else {
                r.constrained = true;
                r.delta = delta;
            }
        }
    }
    return r;
}

// Unitary with u P_x u^dag = Q_x for a pair of (generically noncommuting)
// Hermitian dichotomic observables; up to global phase.
std::optional<Matrix> align_observable_pair(const std::vector<Matrix>& ps,
                                            const std::vector<Matrix>& qs, double tol) {
    // pick the first non-scalar observable to set the eigenbasis
    int pivot = -1;
    for (size_t k = 0; k < ps.size(); ++k)
        if ((ps[k] - ps[k](0, 0) * Matrix::Identity(2, 2)).norm() > tol) {
            pivot = int(k);
            break;
        }
    if (pivot < 0) return Matrix::Identity(2, 2);

    Eigen::SelfAdjointEigenSolver<Matrix> ep(ps[pivot]), eq(qs[pivot]);
    if ((ep.eigenvalues() - eq.eigenvalues()).norm() > 1e2 * tol) return std::nullopt;
    const Matrix vp = ep.eigenvectors(), vq = eq.eigenvectors();
    // residual freedom: diag phases between the eigenbases
    std::vector<Matrix> ps2, qs2;
    for (size_t k = 0; k < ps.size(); ++k) {
        ps2.push_back(vp.adjoint() * ps[k] * vp);
        qs2.push_back(vq.adjoint() * qs[k] * vq);
    }
    PhaseSolve ph = solve_diagonal_phase(ps2, qs2, tol);
    if (!ph.ok) return std::nullopt;
    Matrix d = Matrix::Identity(2, 2);
    d(1, 1) = std::exp(cdouble(0, ph.delta));
    return vq * d * vp.adjoint();
}

double transport_residual(const Matrix& u, const std::vector<Matrix>& ps,
                          const std::vector<Matrix>& qs) {
    double r = 0;
    for (size_t k = 0; k < ps.size(); ++k) r = std::max(r, (u * ps[k] * u.adjoint() - qs[k]).norm());
    return r;
}

double state_fidelity(const Matrix& ua, const Matrix& ub, const PureState& s1,
                      const PureState& s2) {
    const Matrix mapped = ua * s1.amp_matrix() * ub.transpose();
    cdouble ov = (s2.amp_matrix().adjoint() * mapped).trace();
    return std::abs(ov);
}

}  // namespace

std::optional<std::pair<Matrix, Matrix>> local_unitary_equivalent(const Strategy& s1,
                                                                  const Strategy& s2,
                                                                  double tol) {
    if (s1.state.dim_a != 2 || s1.state.dim_b != 2 || s2.state.dim_a != 2 || s2.state.dim_b != 2)
        throw std::invalid_argument("local_unitary_equivalent: qubit strategies only");
    if (!s1.projective() || !s2.projective())
        throw std::invalid_argument("local_unitary_equivalent: projective strategies only");

    std::vector<Matrix> a1 = {s1.observable_a(0), s1.observable_a(1)};
    std::vector<Matrix> a2 = {s2.observable_a(0), s2.observable_a(1)};
    std::vector<Matrix> b1 = {s1.observable_b(0), s1.observable_b(1)};
    std::vector<Matrix> b2 = {s2.observable_b(0), s2.observable_b(1)};

    auto accept = [&](const Matrix& ua, const Matrix& ub)
        -> std::optional<std::pair<Matrix, Matrix>> {
        if (transport_residual(ua, a1, a2) > 1e2 * tol) return std::nullopt;
        if (transport_residual(ub, b1, b2) > 1e2 * tol) return std::nullopt;
        if (1.0 - state_fidelity(ua, ub, s1.state, s2.state) > 1e2 * tol) return std::nullopt;
        return std::make_pair(ua, ub);
    };

    SchmidtForm f1 = schmidt_form(s1.state), f2 = schmidt_form(s2.state);
    if (std::abs(f1.s0 - f2.s0) > tol || std::abs(f1.s1 - f2.s1) > tol) return std::nullopt;

    const Matrix c1 = s1.state.amp_matrix(), c2 = s2.state.amp_matrix();
    if (f1.s0 - f1.s1 <= 1e-7) {
        // maximally entangled: align one party by its measurements, then the
        // partner unitary is forced by the (invertible) amplitude matrices.
        if (auto ua = align_observable_pair(a1, a2, tol)) {
            const Matrix ubt = 2.0 * c1.adjoint() * ua->adjoint() * c2;
            if (auto res = accept(*ua, ubt.transpose())) return res;
        }
        if (auto ub = align_observable_pair(b1, b2, tol)) {
            const Matrix ua = 2.0 * c2 * ub->conjugate() * c1.adjoint();
            if (auto res = accept(ua, *ub)) return res;
        }
        return std::nullopt;
    }

    // Non-degenerate Schmidt spectrum: residual freedom after the Schmidt
    // reduction is a diagonal phase per party, with the phases tied through
    // the state unless the second Schmidt coefficient vanishes.
    std::vector<Matrix> pa, qa, pb, qb;
    for (int x = 0; x < 2; ++x) {
        pa.push_back(f1.wa * a1[x] * f1.wa.adjoint());
        qa.push_back(f2.wa * a2[x] * f2.wa.adjoint());
    }
    for (int y = 0; y < 2; ++y) {
        pb.push_back(f1.wb * b1[y] * f1.wb.adjoint());
        qb.push_back(f2.wb * b2[y] * f2.wb.adjoint());
    }
    PhaseSolve pha = solve_diagonal_phase(pa, qa, tol);
    PhaseSolve phb = solve_diagonal_phase(pb, qb, tol);
    if (!pha.ok || !phb.ok) return std::nullopt;

    if (f1.s1 > tol) {
        // state transport needs delta_a + delta_b = 0 (mod 2 pi)
        if (pha.constrained && phb.constrained) {
            double diff = std::remainder(pha.delta + phb.delta, 2 * std::numbers::pi);
            if (std::abs(diff) > 1e3 * tol) return std::nullopt;
        } else if (pha.constrained) {
            phb.delta = -pha.delta;
        } else if (phb.constrained) {
            pha.delta = -phb.delta;
        }
    }
    Matrix da = Matrix::Identity(2, 2), db = Matrix::Identity(2, 2);
    da(1, 1) = std::exp(cdouble(0, pha.delta));
    db(1, 1) = std::exp(cdouble(0, phb.delta));
    return accept(f2.wa.adjoint() * da * f1.wa, f2.wb.adjoint() * db * f1.wb);
}

BlockDecomposition jordan_blocks(const Matrix& p, const Matrix& q) {
    const Eigen::Index d = p.rows();
    if (q.rows() != d || p.cols() != d || q.cols() != d)
        throw std::invalid_argument("jordan_blocks: dimension mismatch");
    auto is_projector = [](const Matrix& m) {
        return (m - m.adjoint()).norm() <= 1e-9 && (m * m - m).norm() <= 1e-9;
    };
    if (!is_projector(p) || !is_projector(q))
        throw std::invalid_argument("jordan_blocks: inputs must be Hermitian projectors");

    constexpr double kClusterTol = 1e-8;
    const Matrix diff = p - q;
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff * diff);
    const auto& evs = es.eigenvalues();
    const Matrix& vecs = es.eigenvectors();

    BlockDecomposition out;
    out.basis = Matrix::Zero(d, d);
    Eigen::Index col = 0;

    Eigen::Index i = 0;
    while (i < d) {
        Eigen::Index j = i;
        while (j + 1 < d && evs(j + 1) - evs(i) < kClusterTol) ++j;
        const Eigen::Index m = j - i + 1;
        const double s = evs.segment(i, m).mean();
        Matrix sub = vecs.middleCols(i, m);

        if (s < kClusterTol || s > 1.0 - kClusterTol) {
            // P and Q commute on this eigenspace; co-diagonalize.
            Eigen::SelfAdjointEigenSolver<Matrix> ep(Matrix(sub.adjoint() * p * sub));
            Matrix w = sub * ep.eigenvectors();
            // within each P-eigenvalue class, Q is already diagonalizable;
            // diagonalize Q restricted to the sub-blocks of equal P-eigenvalue
            Eigen::Index k = 0;
            while (k < m) {
                Eigen::Index l = k;
                while (l + 1 < m && ep.eigenvalues()(l + 1) - ep.eigenvalues()(k) < kClusterTol) ++l;
                Matrix wk = w.middleCols(k, l - k + 1);
                Eigen::SelfAdjointEigenSolver<Matrix> eq(Matrix(wk.adjoint() * q * wk));
                Matrix wq = wk * eq.eigenvectors();
                for (Eigen::Index c = 0; c < wq.cols(); ++c) {
                    out.basis.col(col++) = wq.col(c);
                    out.sizes.push_back(1);
                }
                k = l + 1;
            }
        } else {
            // genuine 2x2 blocks: pick the P-fixed vectors u in the cluster
            // eigenspace and pair each with (1-P) Q u.
            Eigen::SelfAdjointEigenSolver<Matrix> ep(Matrix(sub.adjoint() * p * sub));
            std::vector<Eigen::Index> ones;
            for (Eigen::Index k = 0; k < m; ++k)
                if (ep.eigenvalues()(k) > 0.5) ones.push_back(k);
            if (2 * Eigen::Index(ones.size()) != m)
                throw std::runtime_error("jordan_blocks: unbalanced principal-angle cluster");
            for (Eigen::Index k : ones) {
                Vector u = sub * ep.eigenvectors().col(k);
                Vector v = (Matrix::Identity(d, d) - p) * (q * u);
                double n = v.norm();
                if (n < 1e-12) throw std::runtime_error("jordan_blocks: degenerate pairing");
                v /= n;
                out.basis.col(col++) = u;
                out.sizes.push_back(2);
                out.basis.col(col++) = v;
            }
        }
        i = j + 1;
    }
    return out;
}

namespace {

// angle of a reference observable A = cos(t) sigma_x + sin(t) sigma_z;
// throws when A has a sigma_y component or is not in the real plane.
double reference_angle(const Matrix& a) {
    const double cx = std::real(a(0, 1));
    const double cz = std::real(a(0, 0));
    if (std::abs(std::imag(a(0, 1))) > 1e-9 || std::abs(std::imag(a(0, 0))) > 1e-9)
        throw std::invalid_argument("swap_isometry_check: reference observable not in the x-z plane");
    return std::atan2(cz, cx);
}

}  // namespace

double swap_isometry_check(const Strategy& s, const Strategy& ref) {
    if (s.state.dim_a != 2 || s.state.dim_b != 2)
        throw std::invalid_argument("swap_isometry_check: qubit strategies only");
    if (ref.state.dim_a != 2 || ref.state.dim_b != 2)
        throw std::invalid_argument("swap_isometry_check: qubit reference only");

    const double ta0 = reference_angle(ref.observable_a(0));
    const double ta1 = reference_angle(ref.observable_a(1));
    const double tb0 = reference_angle(ref.observable_b(0));
    const double tb1 = reference_angle(ref.observable_b(1));

    auto local_phi = [](const Matrix& o0, const Matrix& o1, double t0, double t1) {
        const double den = std::sin(t0) * std::cos(t1) - std::cos(t0) * std::sin(t1);
        if (std::abs(den) < 1e-9)
            throw std::invalid_argument("swap_isometry_check: singular reference angles");
        const Matrix xt = (-std::sin(t1) * o0 + std::sin(t0) * o1) / den;
        const Matrix zt = (std::cos(t1) * o0 - std::cos(t0) * o1) / den;
        const Matrix id = Matrix::Identity(2, 2);
        Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
        p0(0, 0) = 1;
        p1(1, 1) = 1;
        const Matrix u = kron(id, p0) + kron(xt, p1);
        const Matrix v = kron((id + zt) / 2.0, id) + kron((id - zt) / 2.0, pauli_x());
        return Matrix(u * v * u);
    };

    const Matrix phi_a = local_phi(s.observable_a(0), s.observable_a(1), ta0, ta1);
    const Matrix phi_b = local_phi(s.observable_b(0), s.observable_b(1), tb0, tb1);

    // system order A, A', B, B'; ancillas start in |0>
    Vector full = Vector::Zero(16);
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib) full(((ia * 2 + 0) * 2 + ib) * 2 + 0) = s.state.amp(ia, ib);
    const Vector out = kron(phi_a, phi_b) * full;

    // rho_swap on (A', B'), tracing out A and B
    Matrix rho = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    cdouble sum = 0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            sum += out(((a * 2 + i) * 2 + b) * 2 + j) *
                                   std::conj(out(((a * 2 + k) * 2 + b) * 2 + l));
                    rho(i * 2 + j, k * 2 + l) = sum;
                }
    const Vector& refv = ref.state.amps;
    return std::real((refv.adjoint() * rho * refv)(0, 0));
}

double entanglement_of_formation(const PureState& psi) {
    const Matrix c = psi.amp_matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(c * c.adjoint());
    double e = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l > 1e-15) e -= l * std::log2(l);
    }
    return e;
}

bool lemma3_check(const Matrix& e, const Matrix& f, double tol) {
    const Eigen::Index d = e.rows();
    if (f.rows() != d || e.cols() != d || f.cols() != d)
        throw std::invalid_argument("lemma3_check: dimension mismatch");
    auto valid_element = [](const Matrix& m) {
        if ((m - m.adjoint()).norm() > 1e-9) return false;
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        return es.eigenvalues().minCoeff() >= -1e-9 && es.eigenvalues().maxCoeff() <= 1 + 1e-9;
    };
    if (!valid_element(e) || !valid_element(f))
        throw std::invalid_argument("lemma3_check: inputs must be POVM elements");
    const double overlap = std::real((e.transpose() * f).trace()) / double(d);
    if (overlap > tol) throw std::invalid_argument("lemma3_check: tr(E^T F)/d above tolerance");

    const Matrix et = e.transpose();
    const double comm = (et * f - f * et).norm();
    return comm <= 2.0 * std::sqrt(double(d) * std::max(overlap, 0.0)) + 1e-9;
}

}  // namespace bellscope
