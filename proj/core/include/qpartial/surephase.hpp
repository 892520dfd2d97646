#pragma once
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qpartial/geometry.hpp"
#include "qpartial/statevector.hpp"

namespace qpartial {

/// Scalars feeding the two-phase condition for a fixed (j1, j2):
/// (m, k, l) describe the state after the global queries, (a, b, c) the
/// state after the local queries, and (x, y, z) are the condensed
/// coefficients of e^{i(phi-theta)} p x + p y + 2 z = 0.
struct PhaseIntermediates {
    double m = 0, k = 0, l = 0;
    double a = 0, b = 0, c = 0;
    double x = 0, y = 0, z = 0;
};

enum class PhaseStatus {
    Feasible,     // phases found, pending verification
    Infeasible,   // x^2 < (y+z)^2: no phases can cancel
    SingularX,    // x = 0 with z != 0: the phase has nothing to act on
    DegenerateZ,  // z = 0: cancellation already holds, no modification needed
};

struct PhaseSolution {
    double theta = 0;
    double phi = 0;
    std::int64_t j1 = 0;
    std::int64_t j2 = 0;
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;
    PhaseStatus status = PhaseStatus::Infeasible;

    std::int64_t total_queries() const { return j1 + j2 + 1; }
};

PhaseIntermediates phase_condition_coefficients(const SearchGeometry& g,
                                                std::int64_t j1, std::int64_t j2);

/// Solves for (theta, phi). Both sign branches of sin(theta) are exact
/// solutions when the feasibility inequality holds; the one with the
/// smaller algebraic residual is kept (the positive branch on ties).
/// DegenerateZ returns the p = 0 limiting operator with feasible = true.
PhaseSolution solve_phases(const SearchGeometry& g, const PhaseIntermediates& iv);

/// |e^{i(phi-theta)} p x + p y + 2 z| for given phases.
double phase_condition_magnitude(const PhaseIntermediates& iv, double theta, double phi);

/// Runs the pipeline with the solution's schedule and phases (full engine
/// for N <= 4096, reduced above) and returns the worst non-target-block
/// item amplitude. Optionally reports the block marginals.
double verify_sure_success(const SearchGeometry& g, const PhaseSolution& sol,
                           std::vector<double>* marginals = nullptr);

struct ScanEntry {
    std::int64_t j1 = 0;
    std::int64_t j2 = 0;
    PhaseStatus status = PhaseStatus::Infeasible;
};

/// Walks total counts T = j1 + j2 upward, splitting each T by decreasing
/// j1, and returns the first split whose phases verify at residual <= 1e-9.
/// The search gives up past ceil(2 * full_search_queries) unless max_total
/// overrides the bound; exhaustion throws ExhaustedError.
PhaseSolution minimal_schedule(const SearchGeometry& g,
                               std::vector<ScanEntry>* scan_log = nullptr,
                               std::optional<std::int64_t> max_total = std::nullopt);

}  // namespace qpartial
