#include "qpartial/asymptotic.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <vector>

#include "qpartial/golden.hpp"

namespace qpartial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinKtilde = 4.0 / 3.0;

// Objective alpha - eta(alpha) in extended precision. Golden-section
// bottoms out at sqrt(eps/f'') around the minimum, and double eps leaves
// that plateau right at the 1e-8 agreement target; long double buys the
// needed margin.
long double objective(long double Kt, long double a) {
    const long double s = std::sin(a);
    const long double eta = 0.5L * std::sqrt(Kt) *
                            std::atan2(2.0L * std::sqrt(Kt) * std::sin(2.0L * a),
                                       Kt - 4.0L * s * s);
    return a - eta;
}

}  // namespace

double full_search_queries(const SearchGeometry& g) {
    return kPi / 4.0 *
           std::sqrt(static_cast<double>(g.N) / static_cast<double>(g.target_total()));
}

double constraint_eta_of_alpha(double Ktilde, double alpha_tilde) {
    if (!(Ktilde > 1.0)) throw OutOfDomainError("Ktilde must exceed 1");
    if (!(alpha_tilde > 0.0 && alpha_tilde < kPi / 2))
        throw OutOfDomainError("alpha_tilde must lie in (0, pi/2)");
    const double s = std::sin(alpha_tilde);
    return 0.5 * std::sqrt(Ktilde) *
           std::atan2(2.0 * std::sqrt(Ktilde) * std::sin(2.0 * alpha_tilde),
                      Ktilde - 4.0 * s * s);
}

Optimum optimum_closed_form(double Ktilde) {
    if (!(Ktilde >= kMinKtilde))
        throw OutOfDomainError("Ktilde must be at least 4/3");
    Optimum o;
    o.Ktilde = Ktilde;
    // atan2 keeps the angle in (0, pi], so eta stays continuous through
    // Ktilde = 2 where the denominator changes sign. Clamps absorb the
    // rounding dust at the Ktilde = 4/3 boundary.
    o.eta_tilde = 0.5 * std::sqrt(Ktilde) *
                  std::atan2(std::sqrt(std::max(0.0, 3.0 * Ktilde - 4.0)),
                             Ktilde - 2.0);
    const double cos2alpha =
        std::clamp((Ktilde - 2.0) / (2.0 * (Ktilde - 1.0)), -1.0, 1.0);
    o.alpha_tilde = 0.5 * std::acos(cos2alpha);
    o.omega = o.alpha_tilde;
    return o;
}

Optimum optimum_closed_form(const SearchGeometry& g) {
    Optimum o = optimum_closed_form(g.ktilde());
    const double scale = g.block_scale();
    o.j1_real = (kPi / 4.0 * std::sqrt(o.Ktilde) - o.eta_tilde) * scale;
    o.j2_real = o.alpha_tilde * scale;
    o.full_search_real = full_search_queries(g);
    o.total_real = o.j1_real + o.j2_real + 1.0;
    return o;
}

Optimum optimum_numeric(double Ktilde) {
    if (!(Ktilde > kMinKtilde))
        throw OutOfDomainError("Ktilde must exceed 4/3");
    const long double Kt = Ktilde;
    auto f = [Kt](long double a) { return objective(Kt, a); };

    constexpr int kGrid = 512;
    std::vector<long double> xs(kGrid), fs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        xs[i] = (std::numbers::pi_v<long double> / 2) * (i + 0.5L) / kGrid;
        fs[i] = f(xs[i]);
    }
    bool found = false;
    long double best_x = 0, best_f = 0;
    for (int i = 1; i + 1 < kGrid; ++i) {
        if (fs[i] < fs[i - 1] && fs[i] < fs[i + 1]) {
            const auto [x, fx] =
                golden_section_minimize(f, xs[i - 1], xs[i + 1], 1e-12L);
            if (!found || fx < best_f) {
                found = true;
                best_x = x;
                best_f = fx;
            }
        }
    }
    if (!found)
        throw NoMinimumError("no interior bracket for alpha - eta(alpha)");
    Optimum o;
    o.Ktilde = Ktilde;
    o.alpha_tilde = static_cast<double>(best_x);
    o.eta_tilde = static_cast<double>(best_x - best_f);
    o.omega = o.alpha_tilde;
    return o;
}

QuerySchedule integer_schedule(const SearchGeometry& g) {
    const Optimum o = optimum_closed_form(g);
    QuerySchedule sched;
    // llround ties go away from zero, i.e. toward the larger count here
    sched.j1 = std::max<std::int64_t>(0, std::llround(o.j1_real));
    sched.j2 = std::max<std::int64_t>(0, std::llround(o.j2_real));
    sched.j1_residual = o.j1_real - static_cast<double>(sched.j1);
    sched.j2_residual = o.j2_real - static_cast<double>(sched.j2);
    return sched;
}

}  // namespace qpartial
