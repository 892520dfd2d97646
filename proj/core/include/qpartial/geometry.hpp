#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "qpartial/errors.hpp"

namespace qpartial {

/// Rotation angles derived from the database shape, all in (0, pi/2).
struct Angles {
    double theta1 = 0;  // sin^2(theta1) = t*tau/N
    double theta2 = 0;  // sin^2(theta2) = tau/b
    double gamma = 0;   // sin^2(gamma)  = t/K
};

/// Database shape: N items split into K blocks of b = N/K items; t blocks
/// are target blocks carrying tau target items each. Construct through
/// validate_geometry and treat as immutable afterwards.
struct SearchGeometry {
    std::int64_t N = 0;
    std::int64_t K = 0;
    std::int64_t b = 0;
    std::int64_t t = 0;
    std::int64_t tau = 0;
    Angles angles;

    std::int64_t target_total() const { return t * tau; }
    double ktilde() const { return static_cast<double>(K) / static_cast<double>(t); }
    double block_scale() const;  // sqrt(b/tau), the schedule scale factor
};

/// Checks divisibility and the degeneracy bounds (t < K, tau < b, t*tau < N)
/// and precomputes the angles. Throws NonDivisibleError or DegenerateError.
SearchGeometry validate_geometry(std::int64_t N, std::int64_t K, std::int64_t t,
                                 std::int64_t tau);

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Builds a geometry from keys N, K, t, tau (all required).
SearchGeometry geometry_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace qpartial
