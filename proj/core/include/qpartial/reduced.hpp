#pragma once
#include <array>
#include <complex>
#include <cstdint>

#include "qpartial/geometry.hpp"
#include "qpartial/schedule.hpp"

namespace qpartial {

using Complex = std::complex<double>;

/// Amplitudes on the invariant 3-basis: |M> all target items, |NTT> all
/// non-target items inside target blocks, |u> everything else. The whole
/// algorithm acts inside this subspace, so evolution here is exact and
/// costs O(1) regardless of N.
struct ReducedState {
    Complex m{};
    Complex ntt{};
    Complex u{};

    double norm() const;
};

/// Dense complex 3x3 matrix, enough linear algebra for this subspace.
struct Mat3 {
    std::array<std::array<Complex, 3>, 3> a{};

    static Mat3 identity();
    Mat3 operator*(const Mat3& o) const;
    ReducedState operator*(const ReducedState& v) const;
    Mat3 adjoint() const;
    /// max |(A A^dag - I)_{ij}|
    double unitarity_defect() const;
};

/// The involution T with G1^{j1} = T * M(j1) * T.
Mat3 basis_change_matrix(const SearchGeometry& g);
/// Rotation by 2*j1*theta1 in the (M, NTT) plane with the parity entry
/// (-1)^{j1} on |u>; fractional j1 leaves the parity entry at +1.
Mat3 global_rotation_matrix(const SearchGeometry& g, double j1);
/// Rotation by 2*j2*theta2 in the (M, NTT) plane, identity on |u>.
Mat3 local_rotation_matrix(const SearchGeometry& g, double j2);
/// Two-phase final Grover operator; (theta, phi) = (pi/2, 3*pi/2) recovers
/// the plain OracleThenReflection step.
Mat3 final_phase_matrix(const SearchGeometry& g, double theta, double phi);

/// Uniform superposition in the 3-basis:
/// (sin(gamma)sin(theta2), sin(gamma)cos(theta2), cos(gamma)).
ReducedState initial_reduced(const SearchGeometry& g);

/// Applies G1^{j1}. Integer j1 is always valid; fractional j1 is an
/// internal root-finding tool and requires the state to carry no weight on
/// the component the parity entry scales (throws FractionalParityError
/// otherwise).
ReducedState evolve_global(const SearchGeometry& g, const ReducedState& s, double j1);

/// Applies G2^{j2}; well defined for any real j2.
ReducedState evolve_local(const SearchGeometry& g, const ReducedState& s, double j2);

/// Applies the two-phase final operator.
ReducedState apply_final(const SearchGeometry& g, const ReducedState& s, double theta,
                         double phi);

/// Plain (non-phased) Step 3 in the reduced basis.
ReducedState apply_step3(const SearchGeometry& g, const ReducedState& s,
                         Step3Ordering ordering);

/// LHS - RHS of the Step-3 annihilation condition at real-valued (j1, j2);
/// zero iff the reflection wipes out every non-target block.
/// OracleThenReflection flips the sign of the a_t term.
double cancellation_residual(const SearchGeometry& g, double j1, double j2,
                             Step3Ordering ordering = Step3Ordering::ReflectionThenOracle);

/// atan2(|m|, |ntt|): the angle parameterizing the final target-block state.
double canonical_angle(const ReducedState& s);

}  // namespace qpartial
