#include "bellscope/optima.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "bellscope/catalog.hpp"

namespace bellscope {

namespace {

using std::cos;
using std::sin;
using std::sqrt;
constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<double> cubic_roots(const CubicPoly& p) {
    const double scale = std::max({std::abs(p.c3), std::abs(p.c2), std::abs(p.c1), std::abs(p.c0)});
    if (std::abs(p.c3) < 1e-12 * scale)
        throw std::invalid_argument("cubic_roots: near-degenerate leading coefficient");

    // depressed form t^3 + pt + q with x = t - c2/(3 c3)
    const double a = p.c2 / p.c3, b = p.c1 / p.c3, c = p.c0 / p.c3;
    const double shift = a / 3.0;
    const double q = b - a * a / 3.0;
    const double r = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = q * q * q / 27.0 + r * r / 4.0;

    std::vector<double> roots;
    if (disc > 0) {
        const double s = sqrt(disc);
        const double u = std::cbrt(-r / 2.0 + s);
        const double v = std::cbrt(-r / 2.0 - s);
        roots.push_back(u + v - shift);
    } else {
        // three real roots (trigonometric form)
        const double m = 2.0 * sqrt(std::max(-q / 3.0, 0.0));
        const double arg = std::clamp(3.0 * r / (q * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * cos(phi - 2.0 * kPi * k / 3.0) - shift);
    }
    for (double& x : roots)
        for (int it = 0; it < 4; ++it) {
            double d = p.deriv(x);
            if (std::abs(d) < 1e-14) break;
            x -= p.eval(x) / d;
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double smallest_positive_root(const CubicPoly& p) {
    for (double r : cubic_roots(p))
        if (r > 1e-12) return r;
    throw std::domain_error("smallest_positive_root: no positive root");
}

ClassOptimum max_chsh_class(ClassLabel label) {
    const NamedConstants& k = named_constants();
    ClassOptimum out;
    out.label = label;
    switch (label) {
        case ClassLabel::C3a: {
            out.value = 10.0 * (sqrt(5.0) - 2.0);
            out.strategy = named_point(NamedPoint::Hardy).strategy.value();
            break;
        }
        case ClassLabel::C3b: {
            out.value = 4.0 - 4.0 * (2.0 * k.kappa1 + k.kappa2);
            out.strategy = named_point(NamedPoint::Q).strategy.value();
            const double t = std::tan(k.theta0);
            out.trace.emplace_back("tan_theta0_cubic", t * t * t + t * t + t - 1.0);
            // Lagrange stationarity of the constrained maximum
            const double s2t = sin(k.theta0) * sin(k.theta0);
            const double lambda =
                4.0 * s2t * sin(2.0 * k.alpha0) * cos(k.alpha0) * cos(k.alpha0);
            const double beta0 = kPi / 2 - k.alpha0;
            out.trace.emplace_back(
                "stationarity_alpha",
                -4.0 * s2t * sin(2.0 * k.alpha0) + lambda / (cos(k.alpha0) * cos(k.alpha0)));
            out.trace.emplace_back(
                "stationarity_beta",
                4.0 * s2t * sin(2.0 * beta0) - lambda * t / (cos(beta0) * cos(beta0)));
            break;
        }
        case ClassLabel::C2a: {
            out.value = 2.5;
            out.strategy = named_point(NamedPoint::Q2).strategy.value();
            break;
        }
        case ClassLabel::C2b: {
            out.value = 2.5;
            out.strategy = named_point(NamedPoint::Q3).strategy.value();
            break;
        }
        case ClassLabel::C2c: {
            out.strategy = named_point(NamedPoint::Cabello).strategy.value();
            out.value = chsh_value(born(out.strategy));
            out.trace.emplace_back("state_normalization",
                                   k.k1 * k.k1 + 2 * k.k2 * k.k2 + k.k3 * k.k3 - 1.0);
            out.trace.emplace_back("tan_alpha_vs_k2_over_k3",
                                   std::tan(k.alpha_2c) - k.k2 / k.k3);
            break;
        }
        case ClassLabel::C1: {
            out.value = k.xi3;
            out.strategy = named_point(NamedPoint::Q4).strategy.value();
            out.trace.emplace_back("p1(xi1)", CubicPoly{1, -9, -1, 1}.eval(k.xi1));
            out.trace.emplace_back("p2(xi2)", CubicPoly{7, -35, 21, -1}.eval(k.xi2));
            out.trace.emplace_back("p3(xi3)", CubicPoly{1, 26, -36, -104}.eval(k.xi3));
            break;
        }
        case ClassLabel::C4a:
            throw std::invalid_argument("max_chsh_class: Class 4a has no quantum point");
        case ClassLabel::C4b:
            throw std::invalid_argument("max_chsh_class: Class 4b is local (max 2)");
        default:
            throw std::invalid_argument("max_chsh_class: unsupported label");
    }
    return out;
}

namespace {

// Real qubit strategies in the sigma_z / sigma_x plane, amplitude matrix c.
// Observables encoded as (z, x) components; correlator = tr(c^T A c B).
struct RealPoint {
    double c00, c01, c10, c11;
    double a0z, a0x, a1z, a1x;
    double b0z, b0x, b1z, b1x;
};

inline double correlator_zx(double c00, double c01, double c10, double c11, double az,
                            double ax, double bz, double bx) {
    // D = A * C
    const double d00 = az * c00 + ax * c10;
    const double d01 = az * c01 + ax * c11;
    const double d10 = ax * c00 - az * c10;
    const double d11 = ax * c01 - az * c11;
    // E = C^T * D, then sum E .* B (B symmetric)
    const double e00 = c00 * d00 + c10 * d10;
    const double e01 = c00 * d01 + c10 * d11;
    const double e10 = c01 * d00 + c11 * d10;
    const double e11 = c01 * d01 + c11 * d11;
    return bz * (e00 - e11) + bx * (e01 + e10);
}

inline double chsh_of(const RealPoint& s) {
    const double e00 = correlator_zx(s.c00, s.c01, s.c10, s.c11, s.a0z, s.a0x, s.b0z, s.b0x);
    const double e01 = correlator_zx(s.c00, s.c01, s.c10, s.c11, s.a0z, s.a0x, s.b1z, s.b1x);
    const double e10 = correlator_zx(s.c00, s.c01, s.c10, s.c11, s.a1z, s.a1x, s.b0z, s.b0x);
    const double e11 = correlator_zx(s.c00, s.c01, s.c10, s.c11, s.a1z, s.a1x, s.b1z, s.b1x);
    return -e00 - e01 - e10 + e11;
}

RealPoint point_3a_2b(double th, double al, double be) {
    return RealPoint{0, sin(th) * cos(al), cos(th), -sin(th) * sin(al),
                     1, 0, cos(2 * al), -sin(2 * al),
                     1, 0, cos(2 * be), -sin(2 * be)};
}

RealPoint point_3b_2a(double th, double al, double be) {
    // the three-parameter family behind Class 2a, written in its 3b form
    return RealPoint{0, cos(th), sin(th), 0,
                     1, 0, cos(2 * al), -sin(2 * al),
                     1, 0, -cos(2 * be), -sin(2 * be)};
}

RealPoint point_1_2c(double th, double ph, double al, double be) {
    return RealPoint{0, cos(ph) * cos(th), cos(ph) * sin(th), sin(ph),
                     1, 0, cos(2 * al), -sin(2 * al),
                     1, 0, cos(2 * be), -sin(2 * be)};
}

struct ScanSpec {
    int dims;
    std::function<double(const double*)> eval;  // angles -> S (in-class by construction)
};

ScanSpec scan_spec(ClassLabel label) {
    switch (label) {
        case ClassLabel::C3a:
            return {2, [](const double* v) {
                        const double al = v[0], be = v[1];
                        const double th = std::atan(std::tan(be) / std::sin(al));
                        return chsh_of(point_3a_2b(th, al, be));
                    }};
        case ClassLabel::C3b:
            return {2, [](const double* v) {
                        const double al = v[0], be = v[1];
                        const double th = std::atan(std::tan(al) / std::tan(be));
                        return chsh_of(point_3b_2a(th, al, be));
                    }};
        case ClassLabel::C2a:
            return {3, [](const double* v) { return chsh_of(point_3b_2a(v[0], v[1], v[2])); }};
        case ClassLabel::C2b:
            return {3, [](const double* v) { return chsh_of(point_3a_2b(v[0], v[1], v[2])); }};
        case ClassLabel::C2c:
            return {3, [](const double* v) {
                        const double th = v[0], al = v[1], be = v[2];
                        const double ph =
                            std::atan(sin(th) / std::tan(be) - std::tan(al) * cos(th));
                        return chsh_of(point_1_2c(th, ph, al, be));
                    }};
        case ClassLabel::C1:
            return {4, [](const double* v) { return chsh_of(point_1_2c(v[0], v[1], v[2], v[3])); }};
        default:
            throw std::invalid_argument("scan: unsupported label");
    }
}

int scan_threads() {
    if (const char* env = std::getenv("BELLSCOPE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

}  // namespace

ScanResult scan_verify(ClassLabel label, int grid_n) {
    if (grid_n < 50) throw std::invalid_argument("scan_verify: grid_n must be >= 50");
    ScanSpec spec = scan_spec(label);
    // Class 1 spreads a grid_n^3 budget over four axes
    const int per_axis =
        spec.dims == 4 ? std::max(8, int(std::lround(std::pow(double(grid_n), 0.75)))) : grid_n;

    long long total = 1;
    for (int d = 0; d < spec.dims; ++d) total *= per_axis;

    const int nthreads = std::min(scan_threads(), per_axis);
    std::vector<double> maxima(nthreads, -1e300);
    auto worker = [&](int tid) {
        std::vector<double> v(spec.dims);
        double best = -1e300;
        for (int i0 = tid; i0 < per_axis; i0 += nthreads) {
            v[0] = -kPi / 2 + (i0 + 0.5) * kPi / per_axis;
            const int inner = spec.dims - 1;
            std::vector<int> idx(inner, 0);
            while (true) {
                for (int d = 0; d < inner; ++d)
                    v[d + 1] = -kPi / 2 + (idx[d] + 0.5) * kPi / per_axis;
                best = std::max(best, spec.eval(v.data()));
                int d = 0;
                while (d < inner && ++idx[d] == per_axis) idx[d++] = 0;
                if (d == inner) break;
                if (inner == 0) break;
            }
            if (inner == 0) best = std::max(best, spec.eval(v.data()));
        }
        maxima[tid] = best;
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();

    ScanResult r;
    r.scan_max = *std::max_element(maxima.begin(), maxima.end());
    r.points = total;
    double closed = max_chsh_class(label).value;
    r.gap = closed - r.scan_max;
    return r;
}

void scan_landscape_csv(ClassLabel label, int grid_n, std::ostream& os) {
    ScanSpec spec = scan_spec(label);
    const char* headers[4] = {"theta", "alpha", "beta", "phi"};
    if (spec.dims == 2)
        os << "alpha,beta,S,class_ok\n";
    else {
        for (int d = 0; d < spec.dims; ++d) os << headers[d] << ",";
        os << "S,class_ok\n";
    }
    std::vector<int> idx(spec.dims, 0);
    std::vector<double> v(spec.dims);
    os.precision(17);
    while (true) {
        for (int d = 0; d < spec.dims; ++d) v[d] = -kPi / 2 + (idx[d] + 0.5) * kPi / grid_n;
        double s = spec.eval(v.data());
        for (int d = 0; d < spec.dims; ++d) os << v[d] << ",";
        os << s << ",1\n";
        int d = 0;
        while (d < spec.dims && ++idx[d] == grid_n) idx[d++] = 0;
        if (d == spec.dims) break;
    }
}

double success_probability_D(const Correlation& c, double tol) {
    if (std::abs(c(0, 0, 0, 0)) > tol || std::abs(c(1, 1, 1, 0)) > tol)
        throw std::invalid_argument("success_probability_D: not a Class-2b zero pattern");
    return c(1, 1, 1, 1) - c(1, 1, 0, 1);
}

double max_chsh_mes(int d) {
    if (d < 2) throw std::invalid_argument("max_chsh_mes: d must be >= 2");
    if (d % 2 == 0) return 2.0 * sqrt(2.0);
    return 2.0 * sqrt(2.0) * (d - 1.0) / d + 2.0 / d;
}

BlockStrategy construct_block_strategy(int d) {
    if (d < 2) throw std::invalid_argument("construct_block_strategy: d must be >= 2");
    Matrix sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    const double r = 1.0 / sqrt(2.0);
    const std::array<Matrix, 2> qa = {sz, sx};
    const std::array<Matrix, 2> qb = {-(sz + sx) * r, (-sz + sx) * r};

    std::array<Povm, 2> meas_a, meas_b;
    for (int x = 0; x < 2; ++x) {
        meas_a[x].elements = {Matrix::Zero(d, d), Matrix::Zero(d, d)};
        meas_b[x].elements = {Matrix::Zero(d, d), Matrix::Zero(d, d)};
    }
    const int nblocks = d / 2;
    for (int blk = 0; blk < nblocks; ++blk) {
        const int i = 2 * blk;
        for (int x = 0; x < 2; ++x) {
            Povm pa = povm_from_observable(qa[x]);
            Povm pb = povm_from_observable(qb[x]);
            for (int o = 0; o < 2; ++o) {
                meas_a[x].elements[o].block(i, i, 2, 2) = pa.elements[o];
                meas_b[x].elements[o].block(i, i, 2, 2) = pb.elements[o];
            }
        }
    }
    if (d % 2 == 1) {
        for (int x = 0; x < 2; ++x) {
            meas_a[x].elements[1](d - 1, d - 1) = 1.0;  // Alice outputs 1
            meas_b[x].elements[0](d - 1, d - 1) = 1.0;  // Bob outputs 0
        }
    }

    BlockStrategy out;
    out.strategy.state = mes_state(d);
    out.strategy.meas_a = meas_a;
    out.strategy.meas_b = meas_b;

    const Correlation qubit_corr =
        born_mes(2, {povm_from_observable(qa[0]), povm_from_observable(qa[1])},
                 {povm_from_observable(qb[0]), povm_from_observable(qb[1])});
    for (int blk = 0; blk < nblocks; ++blk) out.decomposition.emplace_back(2.0 / d, qubit_corr);
    if (d % 2 == 1) out.decomposition.emplace_back(1.0 / d, deterministic_point(2));
    return out;
}

}  // namespace bellscope
