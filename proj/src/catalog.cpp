#include "bellscope/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellscope/optima.hpp"

namespace bellscope {

namespace {

using std::cos;
using std::sin;
using std::sqrt;
constexpr double kPi = std::numbers::pi;

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Vector ket2(cdouble c00, cdouble c01, cdouble c10, cdouble c11) {
    Vector v(4);
    v << c00, c01, c10, c11;
    return v;
}

cdouble phase(double t) { return std::exp(cdouble(0, t)); }

// state cos(t)|01> + e^{i phi} sin(t)|10>, B1 tilted with a flipped z sign;
// two zeros in the x=y=0 block (Class 2a pattern), three with the theta
// constraint (Class 3b).
Strategy class3b_template(const StrategyParams& p) {
    Vector psi = ket2(0, cos(p.theta), phase(p.phi) * sin(p.theta), 0);
    const cdouble ea = phase(p.gamma_a + p.omega_a);
    const cdouble eb = phase(p.gamma_b + p.omega_b);
    Matrix a1(2, 2), b1(2, 2);
    a1 << cos(2 * p.alpha), -ea * sin(2 * p.alpha), -std::conj(ea) * sin(2 * p.alpha),
        -cos(2 * p.alpha);
    b1 << -cos(2 * p.beta), -std::conj(eb) * sin(2 * p.beta), -eb * sin(2 * p.beta),
        cos(2 * p.beta);
    return make_qubit_strategy(psi, {sigma_z(), a1}, {sigma_z(), b1});
}

// state cos(t)|10> + e^{i phi} sin(t) (e^{-i gA} cos(a)|0> - e^{i wA} sin(a)|1>)|1>;
// zeros at (0,0|0,0) and (1,1|1,0) (Class 2b), a third with the theta
// constraint (Class 3a).
Strategy class2b_template(const StrategyParams& p) {
    const cdouble s = phase(p.phi) * sin(p.theta);
    Vector psi = ket2(0, s * phase(-p.gamma_a) * cos(p.alpha), cos(p.theta),
                      -s * phase(p.omega_a) * sin(p.alpha));
    const cdouble ea = phase(p.gamma_a + p.omega_a);
    const cdouble eb = phase(p.gamma_b + p.omega_b);
    Matrix a1(2, 2), b1(2, 2);
    a1 << cos(2 * p.alpha), -std::conj(ea) * sin(2 * p.alpha), -ea * sin(2 * p.alpha),
        -cos(2 * p.alpha);
    b1 << cos(2 * p.beta), -std::conj(eb) * sin(2 * p.beta), -eb * sin(2 * p.beta),
        -cos(2 * p.beta);
    return make_qubit_strategy(psi, {sigma_z(), a1}, {sigma_z(), b1});
}

// state cos(t)|00> - e^{i phi} sin(t)|11>, B0 = -sigma_z (Class 2a table).
Strategy class2a_template(const StrategyParams& p) {
    Vector psi = ket2(cos(p.theta), 0, 0, -phase(p.phi) * sin(p.theta));
    const cdouble ea = phase(p.gamma_a + p.omega_a);
    const cdouble eb = phase(p.gamma_b + p.omega_b);
    Matrix a1(2, 2), b1(2, 2);
    a1 << cos(2 * p.alpha), ea * sin(2 * p.alpha), std::conj(ea) * sin(2 * p.alpha),
        -cos(2 * p.alpha);
    b1 << cos(2 * p.beta), -std::conj(eb) * sin(2 * p.beta), -eb * sin(2 * p.beta),
        -cos(2 * p.beta);
    return make_qubit_strategy(psi, {sigma_z(), a1}, {-sigma_z(), b1});
}

// state cos(phi)(cos(t)|01> + sin(t)|10>) + sin(phi)|11>; one zero at
// (0,0|0,0) (Class 1), a second with the phi constraint (Class 2c).
Strategy class1_template(const StrategyParams& p) {
    Vector psi = ket2(0, cos(p.phi) * cos(p.theta), cos(p.phi) * sin(p.theta), sin(p.phi));
    Matrix a1 = cos(2 * p.alpha) * sigma_z() - sin(2 * p.alpha) * sigma_x();
    Matrix b1 = cos(2 * p.beta) * sigma_z() - sin(2 * p.beta) * sigma_x();
    return make_qubit_strategy(psi, {sigma_z(), a1}, {sigma_z(), b1});
}

Strategy class4b_template(const StrategyParams& p) {
    Vector psi = ket2(cos(p.theta), 0, 0, sin(p.theta));
    Matrix a1 = cos(2 * p.alpha) * sigma_z() - sin(2 * p.alpha) * sigma_x();
    Matrix b1 = cos(2 * p.beta) * sigma_z() - sin(2 * p.beta) * sigma_x();
    return make_qubit_strategy(psi, {sigma_z(), a1}, {sigma_z(), b1});
}

bool near_half_pi_multiple(double angle, double tol = 1e-9) {
    double r = std::remainder(angle, kPi / 2);
    return std::abs(r) < tol;
}

}  // namespace

std::vector<Cell> class_zero_cells(ClassLabel label) {
    std::vector<Cell> cells;
    for (const Cell& c : class_reference_pattern(label).cells()) cells.push_back(c);
    return cells;
}

const NamedConstants& named_constants() {
    static const NamedConstants k = [] {
        NamedConstants c{};
        c.nu = sqrt(5.0) - 2.0;
        c.hardy_angle = 0.5 * std::atan(-2.0 * sqrt(sqrt(5.0) + 2.0));

        c.tau = std::cbrt(17.0 + 3.0 * sqrt(33.0));
        const double t = (c.tau - 1.0 - 2.0 / c.tau) / 3.0;  // tan(theta0)
        c.theta0 = std::atan(t);
        c.alpha0 = std::atan(sqrt(t));
        c.kappa1 = t * t * t / 2.0;
        c.kappa2 = t / 2.0;
        c.kappa3 = (1.0 - 2.0 * c.kappa1 - 2.0 * c.kappa2) / 2.0;

        c.xi1 = smallest_positive_root({1, -9, -1, 1});
        c.xi2 = smallest_positive_root({7, -35, 21, -1});
        c.xi3 = smallest_positive_root({1, 26, -36, -104});

        const double s78 = sqrt(78.0);
        c.mu1 = std::cbrt(53.0 - 6.0 * s78);
        c.mu2 = std::cbrt(67.0 * s78 - 414.0);
        c.mu3 = std::cbrt(307.0 + 39.0 * s78);
        c.mu_plus = std::cbrt(359.0 + 12.0 * s78);
        c.mu_minus = std::cbrt(359.0 - 12.0 * s78);
        c.k1 = (4.0 - (c.mu1 * c.mu1 + 1.0) / c.mu1) / 6.0;
        c.k2 = sqrt(1.0 - 31.0 * std::cbrt(36.0) / (12.0 * c.mu2) + std::cbrt(6.0) * c.mu2 / 12.0);
        c.k3 = ((c.mu3 * c.mu3 - 29.0) / c.mu3 - 2.0) / 6.0;
        c.alpha_2c = std::atan(sqrt((c.mu_plus + c.mu_minus - 1.0) / 12.0));

        c.zeta1 = smallest_positive_root({1, -1, -2, 1});
        c.zeta2 = smallest_positive_root({1, -7, 14, -7});
        c.zeta3 = smallest_positive_root({1, -32, -116, 8});
        return c;
    }();
    return k;
}

Strategy family(ClassLabel label, const StrategyParams& p) {
    Strategy s;
    switch (label) {
        case ClassLabel::C4b: {
            bool theta_ok = std::abs(std::abs(std::remainder(p.theta, kPi)) - kPi / 4) < 1e-9 ||
                            std::abs(std::abs(std::remainder(p.theta, kPi)) - 3 * kPi / 4) < 1e-9;
            double tth = std::tan(p.theta);
            bool pair_ok = (tth > 0 && std::abs(std::remainder(p.beta - p.alpha, 2 * kPi)) < 1e-9) ||
                           (tth < 0 && std::abs(std::remainder(p.beta + p.alpha, 2 * kPi)) < 1e-9);
            if (!theta_ok || !pair_ok)
                throw std::invalid_argument("family(4b): need theta = +-pi/4 with beta = +-alpha");
            s = class4b_template(p);
            break;
        }
        case ClassLabel::C3a:
            s = class2b_template(p);
            break;
        case ClassLabel::C3b:
            s = class3b_template(p);
            break;
        case ClassLabel::C2a:
            s = class2a_template(p);
            break;
        case ClassLabel::C2b:
            s = class2b_template(p);
            break;
        case ClassLabel::C2c:
        case ClassLabel::C1:
            s = class1_template(p);
            break;
        default:
            throw std::invalid_argument("family: no strategy family for this label");
    }
    for (double ang : {p.alpha, p.beta, p.theta})
        if (near_half_pi_multiple(ang))
            throw std::invalid_argument("family: degenerate parameter (multiple of pi/2)");

    const Correlation c = born(s);
    for (const Cell& cell : class_zero_cells(label))
        if (std::abs(c(cell.a, cell.b, cell.x, cell.y)) > 1e-9)
            throw std::invalid_argument("family: parameters violate the class constraint");
    return s;
}

std::optional<NamedPoint> parse_named_point(const std::string& name) {
    if (name == "hardy") return NamedPoint::Hardy;
    if (name == "q") return NamedPoint::Q;
    if (name == "q2") return NamedPoint::Q2;
    if (name == "q3") return NamedPoint::Q3;
    if (name == "cabello") return NamedPoint::Cabello;
    if (name == "q4") return NamedPoint::Q4;
    if (name == "pr") return NamedPoint::PR;
    if (name == "pr2") return NamedPoint::PR2;
    if (name == "chsh") return NamedPoint::CHSH;
    if (name == "chsh2") return NamedPoint::CHSH2;
    if (name == "uniform") return NamedPoint::Uniform;
    return std::nullopt;
}

std::string to_string(NamedPoint p) {
    switch (p) {
        case NamedPoint::Hardy: return "hardy";
        case NamedPoint::Q: return "q";
        case NamedPoint::Q2: return "q2";
        case NamedPoint::Q3: return "q3";
        case NamedPoint::Cabello: return "cabello";
        case NamedPoint::Q4: return "q4";
        case NamedPoint::PR: return "pr";
        case NamedPoint::PR2: return "pr2";
        case NamedPoint::CHSH: return "chsh";
        case NamedPoint::CHSH2: return "chsh2";
        case NamedPoint::Uniform: return "uniform";
    }
    return "?";
}

NamedPointData named_point(NamedPoint name) {
    const NamedConstants& k = named_constants();
    switch (name) {
        case NamedPoint::Hardy: {
            StrategyParams p;
            p.alpha = p.beta = k.hardy_angle;
            p.theta = std::atan(std::tan(p.beta) / std::sin(p.alpha));
            Strategy s = family(ClassLabel::C3a, p);
            return {s, born(s)};
        }
        case NamedPoint::Q: {
            StrategyParams p;
            p.theta = k.theta0;
            p.alpha = k.alpha0;
            p.beta = kPi / 2 - k.alpha0;
            Strategy s = family(ClassLabel::C3b, p);
            return {s, born(s)};
        }
        case NamedPoint::Q2: {
            StrategyParams p;
            p.theta = -kPi / 4;
            p.alpha = 5 * kPi / 6;
            p.beta = -2 * kPi / 3;
            Strategy s = family(ClassLabel::C2a, p);
            return {s, born(s)};
        }
        case NamedPoint::Q3: {
            StrategyParams p;
            p.theta = kPi / 4;
            p.alpha = kPi / 6;
            p.beta = kPi / 4;
            Strategy s = family(ClassLabel::C2b, p);
            return {s, born(s)};
        }
        case NamedPoint::Cabello: {
            Vector psi(4);
            psi << k.k1, k.k2, k.k2, k.k3;
            psi.normalize();
            const double a2 = 2 * k.alpha_2c;
            Matrix a1 = -cos(a2) * sigma_z() + sin(a2) * sigma_x();
            Matrix b0 = cos(a2) * sigma_z() - sin(a2) * sigma_x();
            Strategy s = make_qubit_strategy(psi, {-sigma_z(), a1}, {b0, -sigma_z()});
            return {s, born(s)};
        }
        case NamedPoint::Q4: {
            const double theta = std::acos(sqrt(k.xi2));
            const double alpha = std::acos(k.xi1);
            Vector psi = ket2(0, sin(theta) / sqrt(2.0), sin(theta) / sqrt(2.0), cos(theta));
            Matrix m = cos(alpha) * sigma_z() + sin(alpha) * sigma_x();
            Strategy s = make_qubit_strategy(psi, {sigma_z(), m}, {sigma_z(), m});
            return {s, born(s)};
        }
        case NamedPoint::PR:
            return {std::nullopt, pr_box(0, 0, 1)};
        case NamedPoint::PR2:
            return {std::nullopt, pr_box(0, 0, 0)};
        case NamedPoint::CHSH:
        case NamedPoint::CHSH2: {
            const double r = 1.0 / sqrt(2.0);
            Matrix b0 = -(sigma_z() + sigma_x()) * r;
            Matrix b1 = (-sigma_z() + sigma_x()) * r;
            Matrix a0 = sigma_z(), a1m = sigma_x();
            if (name == NamedPoint::CHSH2) {
                a0 = -a0;
                a1m = -a1m;
            }
            Strategy s = make_qubit_strategy(mes_state(2).amps, {a0, a1m}, {b0, b1});
            Correlation pr = name == NamedPoint::CHSH ? pr_box(0, 0, 1) : pr_box(0, 0, 0);
            std::array<std::pair<double, Correlation>, 2> terms{
                std::pair{r, pr}, std::pair{1.0 - r, uniform_point()}};
            return {s, mix(terms)};
        }
        case NamedPoint::Uniform: {
            Strategy s = make_qubit_strategy(mes_state(2).amps, {sigma_z(), sigma_z()},
                                             {sigma_x(), sigma_x()});
            return {s, uniform_point()};
        }
    }
    throw std::invalid_argument("named_point: unknown name");
}

Strategy noisy_class2a(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("noisy_class2a: need 0 < eps < 1");
    Strategy s = named_point(NamedPoint::Q2).strategy.value();
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix m00 = (1.0 - eps) * (id + s.observable_a(0)) / 2.0;
    s.meas_a[0] = Povm{{m00, id - m00}};
    return s;
}

}  // namespace bellscope
