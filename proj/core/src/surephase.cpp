#include "qpartial/surephase.hpp"

#include <cmath>
#include <complex>

#include "qpartial/asymptotic.hpp"
#include "qpartial/reduced.hpp"

namespace qpartial {

namespace {

using Cx = std::complex<double>;

constexpr double kZeroTol = 1e-13;        // x, z treated as exactly zero below this
constexpr double kAcceptResidual = 1e-9;  // verified amplitude bound for a schedule
constexpr std::int64_t kFullVerifyMaxN = 4096;

}  // namespace

PhaseIntermediates phase_condition_coefficients(const SearchGeometry& g,
                                                std::int64_t j1, std::int64_t j2) {
    const double c1 = std::cos(g.angles.theta1);
    const double s1 = std::sin(g.angles.theta1);
    const double cg = std::cos(2.0 * j1 * g.angles.theta1);
    const double sg = std::sin(2.0 * j1 * g.angles.theta1);
    const double c2 = std::cos(g.angles.theta2);
    const double sing = std::sin(g.angles.gamma);
    const double cosg = std::cos(g.angles.gamma);

    PhaseIntermediates iv;
    iv.m = c2 * c2 * sing * sing + cosg * cosg;
    iv.k = sg * iv.m + cg * c1 * s1;
    iv.l = cg * iv.m - sg * c1 * s1;

    const double cl = std::cos(2.0 * j2 * g.angles.theta2);
    const double sl = std::sin(2.0 * j2 * g.angles.theta2);
    const double inv = 1.0 / (c1 * c1);
    iv.a = (cl * c1 * iv.k + sl * c2 * sing * iv.l) * inv;
    iv.b = (-sl * c1 * iv.k + cl * c2 * sing * iv.l) * inv;
    iv.c = cosg * iv.l * inv;

    const double f = sing * std::sin(g.angles.theta2) * cosg;
    const double h = sing * cosg * c2;
    iv.x = iv.a * f;
    iv.y = iv.b * h + iv.c * cosg * cosg;
    iv.z = -iv.c / 2.0;
    return iv;
}

double phase_condition_magnitude(const PhaseIntermediates& iv, double theta,
                                 double phi) {
    const Cx p = 1.0 - std::exp(Cx(0, 2.0 * theta));
    return std::abs(std::exp(Cx(0, phi - theta)) * p * iv.x + p * iv.y + 2.0 * iv.z);
}

PhaseSolution solve_phases(const SearchGeometry& g, const PhaseIntermediates& iv) {
    (void)g;
    PhaseSolution sol;
    if (std::abs(iv.z) < kZeroTol) {
        // the |u> component is already zero; p = 0 keeps it there
        sol.status = PhaseStatus::DegenerateZ;
        sol.feasible = true;
        sol.theta = 0.0;
        sol.phi = 0.0;
        return sol;
    }
    if (std::abs(iv.x) < kZeroTol) {
        sol.status = PhaseStatus::SingularX;
        return sol;
    }
    const double rhs = iv.x * iv.x - iv.y * iv.y - 2.0 * iv.y * iv.z;
    if (iv.x * iv.x < (iv.y + iv.z) * (iv.y + iv.z) || rhs <= 0.0) {
        sol.status = PhaseStatus::Infeasible;
        return sol;
    }
    const double sin2theta = iv.z * iv.z / rhs;
    if (sin2theta > 1.0 + 1e-12) {
        sol.status = PhaseStatus::Infeasible;
        return sol;
    }
    const double st0 = std::sqrt(std::min(sin2theta, 1.0));
    const double ct = std::sqrt(std::max(0.0, 1.0 - sin2theta));

    bool have = false;
    double best_res = 0;
    for (const double sign : {+1.0, -1.0}) {
        const double st = sign * st0;
        const double cph = -(iv.y / iv.x) * ct;
        const double sph = -(iv.y / iv.x) * st - iv.z / (iv.x * st);
        if (std::abs(cph) > 1.0 + 1e-9 || std::abs(sph) > 1.0 + 1e-9) continue;
        const double theta = std::atan2(st, ct);
        const double phi = std::atan2(sph, cph);
        const double res = phase_condition_magnitude(iv, theta, phi);
        if (!have || res < best_res) {
            have = true;
            best_res = res;
            sol.theta = theta;
            sol.phi = phi;
        }
    }
    if (!have) {
        sol.status = PhaseStatus::Infeasible;
        return sol;
    }
    sol.status = PhaseStatus::Feasible;
    sol.feasible = true;
    return sol;
}

double verify_sure_success(const SearchGeometry& g, const PhaseSolution& sol,
                           std::vector<double>* marginals) {
    if (g.N <= kFullVerifyMaxN) {
        FullState s = uniform_state(g, canonical_placement(g));
        for (std::int64_t i = 0; i < sol.j1; ++i) apply_global_iteration(s);
        apply_local_iterations(s, sol.j2);
        apply_final_phased(s, sol.theta, sol.phi);
        if (marginals) *marginals = block_marginals(s);
        return max_nontarget_amplitude(s);
    }
    ReducedState r = initial_reduced(g);
    r = evolve_global(g, r, static_cast<double>(sol.j1));
    r = evolve_local(g, r, static_cast<double>(sol.j2));
    r = apply_final(g, r, sol.theta, sol.phi);
    if (marginals) {
        const double per_target_block = (std::norm(r.m) + std::norm(r.ntt)) / g.t;
        const double per_rest_block = std::norm(r.u) / (g.K - g.t);
        marginals->assign(g.K, per_rest_block);
        for (std::int64_t blk = 0; blk < g.t; ++blk) (*marginals)[blk] = per_target_block;
    }
    return std::abs(r.u) / std::sqrt(static_cast<double>(g.b * (g.K - g.t)));
}

PhaseSolution minimal_schedule(const SearchGeometry& g,
                               std::vector<ScanEntry>* scan_log,
                               std::optional<std::int64_t> max_total) {
    const std::int64_t bound =
        max_total ? *max_total
                  : static_cast<std::int64_t>(std::ceil(2.0 * full_search_queries(g)));
    for (std::int64_t total = 0; total <= bound; ++total) {
        for (std::int64_t j1 = total; j1 >= 0; --j1) {
            const std::int64_t j2 = total - j1;
            const PhaseIntermediates iv = phase_condition_coefficients(g, j1, j2);
            PhaseSolution sol = solve_phases(g, iv);
            sol.j1 = j1;
            sol.j2 = j2;
            if (scan_log) scan_log->push_back({j1, j2, sol.status});
            if (!sol.feasible) continue;
            sol.residual = verify_sure_success(g, sol);
            if (sol.residual <= kAcceptResidual) return sol;
        }
    }
    throw ExhaustedError("no feasible sure-success schedule with j1 + j2 <= " +
                         std::to_string(bound));
}

}  // namespace qpartial
