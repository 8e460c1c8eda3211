#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orienteer/states.hpp"

namespace orienteer {

// The five measurement schemes compared in this project: the two optimal
// entangling measurements and the three optimal local Pauli pairs.
enum class SchemeId { Parallel, Antiparallel, XY, ZX, ZY };

const char* scheme_name(SchemeId s);
std::optional<SchemeId> scheme_from_name(const std::string& name);
constexpr std::array<SchemeId, 5> all_schemes() {
    return {SchemeId::Parallel, SchemeId::Antiparallel, SchemeId::XY, SchemeId::ZX, SchemeId::ZY};
}

// Four-outcome measurement on two qubits: ordered 4x4 elements, each tagged
// with the direction Bob guesses when that outcome fires. The outcome order
// is the detector order E1..E4 and is part of the contract; fidelity tables
// and tomography fixtures index into it.
struct Povm {
    std::vector<CMat> elements;
    std::vector<Direction> guesses;
    std::string label;

    // Hermitian PSD elements summing to the identity, unit guesses.
    void validate(double tol = 1e-10) const;
};

// Projectors onto |Psi_j> = (sqrt3/2)|n_j,n_j> + (1/2)|singlet>.
Povm parallel_basis();

// Projectors onto the entangled basis tailored to |n,-n> encoding.
Povm antiparallel_basis();

// Kets of the two entangling bases, in outcome order.
std::array<CVec, 4> parallel_basis_kets();
std::array<CVec, 4> antiparallel_basis_kets();

enum class LocalPair { XY, ZX, ZY };

// Product projectors of the local Pauli-pair measurement, outcome order as
// detected: XY -> ++, --, +-, -+; ZX -> ++, +-, -+, --; ZY -> +-, ++, --, -+.
Povm local_basis(LocalPair pair);

// Povm for any scheme id.
Povm scheme_basis(SchemeId scheme);

// Guess dictionary, outcome 1..4.
Direction guess_for(SchemeId scheme, int outcome);

// The orthogonal measurement axes (a, b) of a local scheme.
std::pair<Direction, Direction> local_axes(LocalPair pair);

// Born probabilities <psi|E_j|psi> of a normalized two-qubit ket.
std::array<double, 4> born_probabilities(const Povm& povm, const CVec& psi);

} // namespace orienteer
