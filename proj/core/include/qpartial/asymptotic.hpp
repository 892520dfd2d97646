#pragma once
#include <limits>

#include "qpartial/geometry.hpp"
#include "qpartial/schedule.hpp"

namespace qpartial {

/// Large-block optimum for the rescaled block count Ktilde = K/t. The
/// schedule fields are filled only by the geometry overloads.
struct Optimum {
    double Ktilde = 0;
    double eta_tilde = 0;
    double alpha_tilde = 0;
    double omega = 0;  // equals alpha_tilde at the optimum
    double j1_real = std::numeric_limits<double>::quiet_NaN();
    double j2_real = std::numeric_limits<double>::quiet_NaN();
    double total_real = std::numeric_limits<double>::quiet_NaN();
    double full_search_real = std::numeric_limits<double>::quiet_NaN();

    double saved_coefficient() const { return eta_tilde - alpha_tilde; }
};

/// (pi/4) sqrt(N / (t*tau)): queries a full Grover search needs to find one
/// of the t*tau target items.
double full_search_queries(const SearchGeometry& g);

/// eta_tilde solving the large-block annihilation constraint at the given
/// alpha_tilde, on the branch with the arctangent argument in (0, pi) so
/// eta_tilde stays continuous and positive across Ktilde = 4 sin^2(alpha).
/// Requires Ktilde > 1 and alpha_tilde in (0, pi/2); throws OutOfDomainError.
double constraint_eta_of_alpha(double Ktilde, double alpha_tilde);

/// Closed-form optimum; requires Ktilde >= 4/3 (throws OutOfDomainError).
Optimum optimum_closed_form(double Ktilde);
/// Same, with the real-valued schedule for a concrete geometry:
/// j1 = ((pi/4) sqrt(Ktilde) - eta) * sqrt(b/tau), j2 = alpha * sqrt(b/tau),
/// total = j1 + j2 + 1.
Optimum optimum_closed_form(const SearchGeometry& g);

/// Independent cross-check: grid-brackets the interior minima of
/// alpha - eta(alpha) over (0, pi/2) and polishes the best bracket with
/// golden-section to 1e-12 in alpha. Throws NoMinimumError when no interior
/// bracket exists (the objective is then monotone up to its flat point).
Optimum optimum_numeric(double Ktilde);

/// Nearest-integer schedule from the closed-form optimum; ties round up and
/// results clamp at zero. Rounding residuals are recorded for downstream
/// sure-success compensation.
QuerySchedule integer_schedule(const SearchGeometry& g);

}  // namespace qpartial
