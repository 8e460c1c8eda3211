#pragma once

#include <array>
#include <vector>

#include "orienteer/linalg.hpp"

namespace orienteer {

// Unit vector on the Bloch sphere; the message Alice encodes.
struct Direction {
    double x = 0.0, y = 0.0, z = 1.0;

    double dot(const Direction& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    Direction normalized() const;
    Direction operator-() const { return {-x, -y, -z}; }
    bool is_unit(double tol = 1e-12) const;
};

enum class Encoding { Parallel, Antiparallel };

enum class PlateKind { HWP, QWP };

// Rotation angle of a wave plate's axis, radians, canonical range [0, pi).
struct WavePlateSetting {
    PlateKind kind;
    double angle;
};

const CMat& pauli_x();
const CMat& pauli_y();
const CMat& pauli_z();

// Ket with Bloch vector n. Global phase canon: first component with
// modulus above 1e-12 is made real positive, so assertions on exact
// amplitudes are reproducible.
CVec bloch_to_ket(const Direction& n);

// (<sx>, <sy>, <sz>) of a normalized single-qubit ket.
Direction ket_to_bloch(const CVec& k);

// The four SIC kets, phases verbatim, chosen so that the parallel-spin
// measurement basis built from them is orthogonal.
std::array<CVec, 4> sic_states();

// Antipodal partners of sic_states(), again with the exact phases the
// antiparallel basis needs.
std::array<CVec, 4> sic_antipodes();

// Bloch vectors of the SIC kets (a regular tetrahedron).
std::array<Direction, 4> sic_directions();

// Ket for -n. Directions in the xz plane use the continuation
// |-n> = -sin(theta/2)|0> + cos(theta/2)|1> with n = (sin theta, 0, cos theta);
// elsewhere the canonical bloch_to_ket(-n). Fidelities only see Bloch
// vectors, so the two choices differ by a global phase at most.
CVec antipode_ket(const Direction& n);

// Two-qubit product encoding |n, n> or |n, -n>, first factor slow.
CVec encode(const Direction& n, Encoding mode);

// C(H) = sin(2H) sx + cos(2H) sz
// C(Q) = (1+i)/2 [ I - i (sin(2Q) sx + cos(2Q) sz) ]
CMat waveplate_unitary(const WavePlateSetting& s);

// Product of plate unitaries with the last listed plate hit first:
// compose_plates({s1, s2, s3}) = C(s1) C(s2) C(s3).
CMat compose_plates(const std::vector<WavePlateSetting>& settings);

// Six Pauli eigenstates |+x>,|-x>,|+y>,|-y>,|+z>,|-z> in that order.
std::array<CVec, 6> pauli_eigenstates();
std::array<const char*, 6> pauli_eigenstate_labels();

} // namespace orienteer
