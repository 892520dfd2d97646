#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "qpartial/geometry.hpp"
#include "qpartial/reduced.hpp"
#include "qpartial/schedule.hpp"

namespace qpartial {

/// Which items are targets: t distinct blocks with tau marked items each.
struct TargetPlacement {
    std::vector<std::int64_t> items;   // sorted flat indices, size t*tau
    std::vector<std::int64_t> blocks;  // sorted distinct block indices, size t
};

/// Targets at the first tau items of the first t blocks.
TargetPlacement canonical_placement(const SearchGeometry& g);
/// Seeded random placement; used by invariance property tests.
TargetPlacement random_placement(const SearchGeometry& g, std::uint64_t seed);

/// Dense exact simulator state over all N amplitudes. Serves as the
/// ground-truth oracle for the reduced model; every oracle call bumps
/// oracle_queries.
struct FullState {
    SearchGeometry geom;
    TargetPlacement placement;
    std::vector<std::complex<double>> amp;
    std::uint64_t oracle_queries = 0;
};

/// Maximum N the full engine accepts. Defaults to 2^20; the environment
/// variable QPARTIAL_MAX_FULL_N overrides it.
std::int64_t full_state_cap();

/// Uniform superposition, 1/sqrt(N) everywhere. Throws TooLargeError when
/// N exceeds full_state_cap().
FullState uniform_state(const SearchGeometry& g, TargetPlacement placement);

/// Oracle flip I_t: negates target amplitudes. One query.
void apply_target_flip(FullState& s);
/// Generalized oracle: multiplies target amplitudes by the given phase.
/// One query. phase = -1 recovers apply_target_flip.
void apply_target_phase(FullState& s, std::complex<double> phase);

/// -I_s1: replaces every amplitude by 2*mean - amplitude.
void apply_global_reflection(FullState& s);
/// Phase-generalized reflection -[I - p|s1><s1|]; p = 2 recovers -I_s1.
void apply_global_reflection_phased(FullState& s, std::complex<double> p);

/// One global Grover iteration G1 = -I_s1 I_t. One query.
void apply_global_iteration(FullState& s);

/// j2 simultaneous in-block Grover iterations (one query each).
void apply_local_iterations(FullState& s, std::int64_t j2);

/// Step 3: either ordering. One query in both (the extra oracle in A, the
/// I_t of the Grover iteration in B).
void apply_step3(FullState& s, Step3Ordering ordering);

/// Two-phase final operator of the sure-success variant. One query.
void apply_final_phased(FullState& s, double theta, double phi);

/// Per-block probability mass, length K, sums to 1.
std::vector<double> block_marginals(const FullState& s);

/// Draws one block index from block_marginals with a seeded deterministic
/// generator.
std::int64_t sample_block(const FullState& s, std::uint64_t seed);

/// Projection onto the 3-basis plus the worst within-class amplitude spread
/// (zero when the state lies exactly in the invariant subspace).
struct ClassProjection {
    ReducedState reduced;
    double symmetry_residual = 0;
};
ClassProjection project_classes(const FullState& s);

/// Lifts a reduced state to the full register under a placement.
FullState embed_reduced(const SearchGeometry& g, TargetPlacement placement,
                        const ReducedState& r);

double state_norm(const FullState& s);
/// max |amplitude| over items in non-target blocks.
double max_nontarget_amplitude(const FullState& s);

/// Debug dump: JSON array of [re, im] pairs. Not a stable interchange
/// format.
std::string amplitudes_json(const FullState& s);

}  // namespace qpartial
