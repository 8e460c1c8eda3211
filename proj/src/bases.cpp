#include "orienteer/bases.hpp"

#include <cmath>

namespace orienteer {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

CVec singlet() {
    const double s = 1.0 / kSqrt2;
    return CVec{0.0, s, -s, 0.0};
}

CVec scaled_sum(const CVec& a, double fa, const CVec& b, double fb) {
    CVec out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = fa * a[i] + fb * b[i];
    return out;
}

Povm projective_povm(const std::array<CVec, 4>& kets, std::array<Direction, 4> guesses,
                     std::string label) {
    Povm p;
    p.label = std::move(label);
    for (const auto& k : kets) p.elements.push_back(projector(k));
    p.guesses.assign(guesses.begin(), guesses.end());
    return p;
}

// Table of guessed directions per scheme and outcome.
std::array<Direction, 4> guess_table(SchemeId scheme) {
    const double a = 1.0 / kSqrt2;
    switch (scheme) {
        case SchemeId::Parallel:
        case SchemeId::Antiparallel:
            return {Direction{0.0, 0.0, 1.0},
                    Direction{2.0 * kSqrt2 / 3.0, 0.0, -1.0 / 3.0},
                    Direction{-kSqrt2 / 3.0, kSqrt6 / 3.0, -1.0 / 3.0},
                    Direction{-kSqrt2 / 3.0, -kSqrt6 / 3.0, -1.0 / 3.0}};
        case SchemeId::XY:
            return {Direction{a, a, 0.0}, Direction{-a, -a, 0.0}, Direction{a, -a, 0.0},
                    Direction{-a, a, 0.0}};
        case SchemeId::ZX:
            return {Direction{a, 0.0, a}, Direction{-a, 0.0, a}, Direction{a, 0.0, -a},
                    Direction{-a, 0.0, -a}};
        case SchemeId::ZY:
            return {Direction{0.0, -a, a}, Direction{0.0, a, a}, Direction{0.0, -a, -a},
                    Direction{0.0, a, -a}};
    }
    throw std::logic_error("guess_table: bad scheme");
}

} // namespace

const char* scheme_name(SchemeId s) {
    switch (s) {
        case SchemeId::Parallel: return "parallel";
        case SchemeId::Antiparallel: return "antiparallel";
        case SchemeId::XY: return "xy";
        case SchemeId::ZX: return "zx";
        case SchemeId::ZY: return "zy";
    }
    return "?";
}

std::optional<SchemeId> scheme_from_name(const std::string& name) {
    for (SchemeId s : all_schemes())
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

void Povm::validate(double tol) const {
    if (elements.empty() || elements.size() != guesses.size())
        throw std::invalid_argument("Povm: elements/guesses size mismatch");
    const std::size_t d = elements.front().rows();
    CMat sum(d, d);
    for (const auto& e : elements) {
        if (e.rows() != d || e.cols() != d)
            throw std::invalid_argument("Povm: inconsistent element dimensions");
        if (!e.is_hermitian(tol)) throw std::invalid_argument("Povm: element not Hermitian");
        const auto eig = eig_hermitian(e, tol);
        if (eig.eigenvalues.front() < -tol)
            throw std::invalid_argument("Povm: element not positive semidefinite");
        sum += e;
    }
    if (sum.max_abs_diff(CMat::identity(d)) > tol)
        throw std::invalid_argument("Povm: elements do not sum to identity");
    for (const auto& g : guesses)
        if (!g.is_unit(1e-10)) throw std::invalid_argument("Povm: guess not a unit vector");
}

std::array<CVec, 4> parallel_basis_kets() {
    const auto sic = sic_states();
    const CVec sng = singlet();
    std::array<CVec, 4> kets;
    for (std::size_t j = 0; j < 4; ++j)
        kets[j] = scaled_sum(kron(sic[j], sic[j]), kSqrt3 / 2.0, sng, 0.5);
    return kets;
}

std::array<CVec, 4> antiparallel_basis_kets() {
    const auto sic = sic_states();
    const auto anti = sic_antipodes();
    const double eta1 = (kSqrt3 + 1.0) / (2.0 * kSqrt2);
    const double eta0 = (kSqrt3 - 1.0) / (2.0 * kSqrt2);
    std::array<CVec, 4> kets;
    for (std::size_t j = 0; j < 4; ++j)
        kets[j] = scaled_sum(kron(sic[j], anti[j]), eta1, kron(anti[j], sic[j]), eta0);
    return kets;
}

Povm parallel_basis() {
    return projective_povm(parallel_basis_kets(), guess_table(SchemeId::Parallel), "parallel");
}

Povm antiparallel_basis() {
    return projective_povm(antiparallel_basis_kets(), guess_table(SchemeId::Antiparallel),
                           "antiparallel");
}

Povm local_basis(LocalPair pair) {
    const auto eig = pauli_eigenstates();
    const CVec &px = eig[0], &mx = eig[1], &py = eig[2], &my = eig[3], &pz = eig[4], &mz = eig[5];
    std::array<CVec, 4> kets;
    SchemeId id;
    switch (pair) {
        case LocalPair::XY:
            kets = {kron(px, py), kron(mx, my), kron(px, my), kron(mx, py)};
            id = SchemeId::XY;
            break;
        case LocalPair::ZX:
            kets = {kron(pz, px), kron(pz, mx), kron(mz, px), kron(mz, mx)};
            id = SchemeId::ZX;
            break;
        case LocalPair::ZY:
            kets = {kron(pz, my), kron(pz, py), kron(mz, my), kron(mz, py)};
            id = SchemeId::ZY;
            break;
        default: throw std::logic_error("local_basis: bad pair");
    }
    return projective_povm(kets, guess_table(id), scheme_name(id));
}

Povm scheme_basis(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Parallel: return parallel_basis();
        case SchemeId::Antiparallel: return antiparallel_basis();
        case SchemeId::XY: return local_basis(LocalPair::XY);
        case SchemeId::ZX: return local_basis(LocalPair::ZX);
        case SchemeId::ZY: return local_basis(LocalPair::ZY);
    }
    throw std::logic_error("scheme_basis: bad scheme");
}

Direction guess_for(SchemeId scheme, int outcome) {
    if (outcome < 1 || outcome > 4)
        throw std::out_of_range("guess_for: outcome index must be 1..4");
    return guess_table(scheme)[static_cast<std::size_t>(outcome - 1)];
}

std::pair<Direction, Direction> local_axes(LocalPair pair) {
    switch (pair) {
        case LocalPair::XY: return {Direction{1, 0, 0}, Direction{0, 1, 0}};
        case LocalPair::ZX: return {Direction{0, 0, 1}, Direction{1, 0, 0}};
        case LocalPair::ZY: return {Direction{0, 0, 1}, Direction{0, 1, 0}};
    }
    throw std::logic_error("local_axes: bad pair");
}

std::array<double, 4> born_probabilities(const Povm& povm, const CVec& psi) {
    if (povm.elements.size() != 4)
        throw std::invalid_argument("born_probabilities: expected 4 outcomes");
    std::array<double, 4> p{};
    for (std::size_t j = 0; j < 4; ++j) {
        const CVec ev = matvec(povm.elements[j], psi);
        p[j] = inner(psi, ev).real();
        if (p[j] < 0.0 && p[j] > -1e-12) p[j] = 0.0;
    }
    return p;
}

} // namespace orienteer
