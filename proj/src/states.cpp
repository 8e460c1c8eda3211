#include "orienteer/states.hpp"

#include <algorithm>
#include <cmath>

namespace orienteer {

namespace {
constexpr double kPi = 3.14159265358979323846;

CVec canonical_phase(CVec v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double m = std::abs(v[i]);
        if (m > 1e-12) {
            const cplx rot = std::conj(v[i]) / m;
            for (std::size_t j = 0; j < v.dim(); ++j) v[j] *= rot;
            break;
        }
    }
    return v;
}
} // namespace

double Direction::norm() const { return std::sqrt(x * x + y * y + z * z); }

Direction Direction::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Direction: cannot normalize zero vector");
    return {x / n, y / n, z / n};
}

bool Direction::is_unit(double tol) const { return std::abs(x * x + y * y + z * z - 1.0) <= tol; }

const CMat& pauli_x() {
    static const CMat m(2, 2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const CMat& pauli_y() {
    static const CMat m(2, 2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0});
    return m;
}

const CMat& pauli_z() {
    static const CMat m(2, 2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

CVec bloch_to_ket(const Direction& n) {
    if (!n.is_unit(1e-9))
        throw std::invalid_argument("bloch_to_ket: direction is not a unit vector");
    const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
    const double phi = std::atan2(n.y, n.x);
    CVec k{std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
    return canonical_phase(k);
}

Direction ket_to_bloch(const CVec& k) {
    if (k.dim() != 2) throw std::invalid_argument("ket_to_bloch: need a 2-component ket");
    if (!k.is_normalized(1e-9)) throw std::invalid_argument("ket_to_bloch: ket not normalized");
    const cplx cross = std::conj(k[0]) * k[1];
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(k[0]) - std::norm(k[1])};
}

std::array<CVec, 4> sic_states() {
    const double s = 1.0 / std::sqrt(3.0);
    const cplx i{0.0, 1.0};
    const double r2 = std::sqrt(2.0);
    return {CVec{1.0, 0.0},
            CVec{i * s, i * s * r2},
            CVec{i * s, i * s * r2 * std::polar(1.0, 2.0 * kPi / 3.0)},
            CVec{-i * s, i * s * r2 * std::polar(1.0, kPi / 3.0)}};
}

std::array<CVec, 4> sic_antipodes() {
    const double s = 1.0 / std::sqrt(3.0);
    const cplx i{0.0, 1.0};
    const double r2 = std::sqrt(2.0);
    return {CVec{0.0, 1.0},
            CVec{i * s * r2, -i * s},
            CVec{i * s * r2 * std::polar(1.0, -2.0 * kPi / 3.0), -i * s},
            CVec{i * s * r2 * std::polar(1.0, -kPi / 3.0), i * s}};
}

std::array<Direction, 4> sic_directions() {
    const auto kets = sic_states();
    std::array<Direction, 4> out;
    for (std::size_t j = 0; j < 4; ++j) out[j] = ket_to_bloch(kets[j]);
    return out;
}

CVec antipode_ket(const Direction& n) {
    if (std::abs(n.y) < 1e-14) {
        const double theta = std::atan2(n.x, n.z);
        return CVec{-std::sin(theta / 2.0), std::cos(theta / 2.0)};
    }
    return bloch_to_ket(-n);
}

CVec encode(const Direction& n, Encoding mode) {
    const CVec first = bloch_to_ket(n);
    const CVec second = (mode == Encoding::Parallel) ? first : antipode_ket(n);
    return kron(first, second);
}

CMat waveplate_unitary(const WavePlateSetting& s) {
    const double c2 = std::cos(2.0 * s.angle);
    const double s2 = std::sin(2.0 * s.angle);
    if (s.kind == PlateKind::HWP) {
        return CMat(2, 2, {c2, s2, s2, -c2});
    }
    const cplx f = cplx{1.0, 1.0} * 0.5;
    const cplx i{0.0, 1.0};
    CMat m(2, 2);
    m(0, 0) = f * (1.0 - i * c2);
    m(0, 1) = f * (-i * s2);
    m(1, 0) = f * (-i * s2);
    m(1, 1) = f * (1.0 + i * c2);
    return m;
}

CMat compose_plates(const std::vector<WavePlateSetting>& settings) {
    if (settings.empty()) throw std::invalid_argument("compose_plates: empty plate list");
    CMat u = waveplate_unitary(settings.front());
    for (std::size_t k = 1; k < settings.size(); ++k)
        u = matmul(u, waveplate_unitary(settings[k]));
    return u;
}

std::array<CVec, 6> pauli_eigenstates() {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    return {CVec{s, s},     CVec{s, -s},    CVec{s, i * s},
            CVec{s, -i * s}, CVec{1.0, 0.0}, CVec{0.0, 1.0}};
}

std::array<const char*, 6> pauli_eigenstate_labels() {
    return {"+x", "-x", "+y", "-y", "+z", "-z"};
}

} // namespace orienteer
