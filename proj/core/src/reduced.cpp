#include "qpartial/reduced.hpp"

#include <cmath>

namespace qpartial {

double ReducedState::norm() const {
    return std::sqrt(std::norm(m) + std::norm(ntt) + std::norm(u));
}

Mat3 Mat3::identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.a[i][i] = 1.0;
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
            r.a[i][j] = s;
        }
    return r;
}

ReducedState Mat3::operator*(const ReducedState& v) const {
    const Complex in[3] = {v.m, v.ntt, v.u};
    Complex out[3];
    for (int i = 0; i < 3; ++i)
        out[i] = a[i][0] * in[0] + a[i][1] * in[1] + a[i][2] * in[2];
    return {out[0], out[1], out[2]};
}

Mat3 Mat3::adjoint() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.a[i][j] = std::conj(a[j][i]);
    return r;
}

double Mat3::unitarity_defect() const {
    Mat3 p = *this * adjoint();
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex want = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(p.a[i][j] - want));
        }
    return worst;
}

Mat3 basis_change_matrix(const SearchGeometry& g) {
    const double c1 = std::cos(g.angles.theta1);
    const double c = std::cos(g.angles.theta2) * std::sin(g.angles.gamma) / c1;
    const double d = std::cos(g.angles.gamma) / c1;
    Mat3 T;
    T.a[0][0] = 1.0;
    T.a[1][1] = c;
    T.a[1][2] = d;
    T.a[2][1] = d;
    T.a[2][2] = -c;
    return T;
}

Mat3 global_rotation_matrix(const SearchGeometry& g, double j1) {
    const double ang = 2.0 * j1 * g.angles.theta1;
    const bool integral = std::abs(j1 - std::round(j1)) < 1e-9;
    const double parity = integral ? (std::llround(j1) % 2 == 0 ? 1.0 : -1.0) : 1.0;
    Mat3 M;
    M.a[0][0] = std::cos(ang);
    M.a[0][1] = std::sin(ang);
    M.a[1][0] = -std::sin(ang);
    M.a[1][1] = std::cos(ang);
    M.a[2][2] = parity;
    return M;
}

Mat3 local_rotation_matrix(const SearchGeometry& g, double j2) {
    const double ang = 2.0 * j2 * g.angles.theta2;
    Mat3 M;
    M.a[0][0] = std::cos(ang);
    M.a[0][1] = std::sin(ang);
    M.a[1][0] = -std::sin(ang);
    M.a[1][1] = std::cos(ang);
    M.a[2][2] = 1.0;
    return M;
}

Mat3 final_phase_matrix(const SearchGeometry& g, double theta, double phi) {
    const Complex p = 1.0 - std::exp(Complex(0, 2.0 * theta));
    const Complex e = std::exp(Complex(0, phi - theta));
    const double sg = std::sin(g.angles.gamma), cg = std::cos(g.angles.gamma);
    const double s2 = std::sin(g.angles.theta2), c2 = std::cos(g.angles.theta2);
    const double f = sg * s2 * cg;
    const double h = sg * cg * c2;
    Mat3 M;
    M.a[0][0] = -e * (1.0 - p * sg * sg * s2 * s2);
    M.a[0][1] = p * sg * sg * s2 * c2;
    M.a[0][2] = p * f;
    M.a[1][0] = e * p * sg * sg * s2 * c2;
    M.a[1][1] = p * sg * sg * c2 * c2 - 1.0;
    M.a[1][2] = p * h;
    M.a[2][0] = e * p * f;
    M.a[2][1] = p * h;
    M.a[2][2] = p * cg * cg - 1.0;
    return M;
}

ReducedState initial_reduced(const SearchGeometry& g) {
    return {std::sin(g.angles.gamma) * std::sin(g.angles.theta2),
            std::sin(g.angles.gamma) * std::cos(g.angles.theta2),
            std::cos(g.angles.gamma)};
}

ReducedState evolve_global(const SearchGeometry& g, const ReducedState& s, double j1) {
    const Mat3 T = basis_change_matrix(g);
    const ReducedState w = T * s;
    const bool integral = std::abs(j1 - std::round(j1)) < 1e-9;
    if (!integral && std::abs(w.u) > 1e-12)
        throw FractionalParityError(
            "fractional j1 with nonzero weight on the parity component");
    return T * (global_rotation_matrix(g, j1) * w);
}

ReducedState evolve_local(const SearchGeometry& g, const ReducedState& s, double j2) {
    return local_rotation_matrix(g, j2) * s;
}

ReducedState apply_final(const SearchGeometry& g, const ReducedState& s, double theta,
                         double phi) {
    return final_phase_matrix(g, theta, phi) * s;
}

ReducedState apply_step3(const SearchGeometry& g, const ReducedState& s,
                         Step3Ordering ordering) {
    const ReducedState v = initial_reduced(g);
    // -I_s1 = 2|s1><s1| - I on the subspace
    auto reflect = [&](const ReducedState& r) {
        const Complex ip = v.m * r.m + v.ntt * r.ntt + v.u * r.u;
        return ReducedState{2.0 * v.m * ip - r.m, 2.0 * v.ntt * ip - r.ntt,
                            2.0 * v.u * ip - r.u};
    };
    auto flip = [](const ReducedState& r) { return ReducedState{-r.m, r.ntt, r.u}; };
    if (ordering == Step3Ordering::ReflectionThenOracle) return flip(reflect(s));
    return reflect(flip(s));
}

double cancellation_residual(const SearchGeometry& g, double j1, double j2,
                             Step3Ordering ordering) {
    const double s1 = std::sin((2.0 * j1 + 1.0) * g.angles.theta1);
    const double c1 = std::cos((2.0 * j1 + 1.0) * g.angles.theta1);
    const double cl = std::cos(2.0 * j2 * g.angles.theta2);
    const double sl = std::sin(2.0 * j2 * g.angles.theta2);
    const double rest = static_cast<double>(g.N - g.target_total());
    const double ratio = std::sqrt((g.b - g.tau) / rest);
    double at = cl * s1 / std::sqrt(static_cast<double>(g.t)) + ratio * sl * c1;
    const double antt = -sl * s1 / std::sqrt(static_cast<double>(g.t)) + ratio * cl * c1;
    if (ordering == Step3Ordering::OracleThenReflection) at = -at;
    const double a_nt = c1 / std::sqrt(rest);
    const double lhs = g.b * (-0.5 * g.K + g.t) * a_nt;
    const double rhs = g.t * std::sqrt(static_cast<double>(g.tau)) * at +
                       g.t * std::sqrt(static_cast<double>(g.b - g.tau)) * antt;
    return lhs - rhs;
}

double canonical_angle(const ReducedState& s) {
    return std::atan2(std::abs(s.m), std::abs(s.ntt));
}

}  // namespace qpartial
