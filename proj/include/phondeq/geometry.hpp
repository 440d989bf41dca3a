#ifndef PHONDEQ_GEOMETRY_HPP
#define PHONDEQ_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phondeq {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double c, Vec3 v) { return {c * v.x, c * v.y, c * v.z}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// Pseudo-spin label for the two donor sites of a qubit.
enum class Spin : int { minus = -1, plus = +1 };

constexpr double spin_value(Spin m) { return m == Spin::plus ? 0.5 : -0.5; }

inline constexpr std::array<Spin, 2> all_spins{Spin::plus, Spin::minus};

/// Joint pseudo-spin configuration of the two-qubit register.
struct RegisterState {
    Spin m1 = Spin::minus;
    Spin m2 = Spin::minus;

    Spin spin(int qubit) const { return qubit == 0 ? m1 : m2; }

    /// Index in the basis ordering {|++>, |+->, |-+>, |-->}.
    int basis_index() const {
        return (m1 == Spin::plus ? 0 : 2) + (m2 == Spin::plus ? 0 : 1);
    }

    friend bool operator==(RegisterState a, RegisterState b) {
        return a.m1 == b.m1 && a.m2 == b.m2;
    }
};

inline constexpr std::array<RegisterState, 4> register_basis{
    RegisterState{Spin::plus, Spin::plus},
    RegisterState{Spin::plus, Spin::minus},
    RegisterState{Spin::minus, Spin::plus},
    RegisterState{Spin::minus, Spin::minus},
};

/// One charge qubit: a pair of donor sites at center +- axis/2.
/// All lengths are in units of the mean Bohr radius a_B; the bias
/// frequency is in units of s/a_B.
struct QubitSpec {
    Vec3 center{};
    Vec3 axis{};
    double bohr_radius_minus = 1.0;
    double bohr_radius_plus = 1.0;
    double bias_frequency = 0.0;

    double bohr_radius(Spin m) const {
        return m == Spin::plus ? bohr_radius_plus : bohr_radius_minus;
    }

    void validate() const {
        if (!center.finite() || !axis.finite())
            throw std::invalid_argument("QubitSpec: non-finite coordinates");
        if (axis.norm() <= 0.0)
            throw std::invalid_argument("QubitSpec: inter-site axis must have non-zero length");
        if (!(bohr_radius_minus > 0.0) || !(bohr_radius_plus > 0.0))
            throw std::invalid_argument("QubitSpec: Bohr radii must be positive");
    }
};

/// Donor-site layout of the register. The mean Bohr radius is the unit
/// of length, so it is fixed at 1.
struct SystemGeometry {
    std::vector<QubitSpec> qubits;
    static constexpr double mean_bohr_radius = 1.0;

    /// Throws on invariant violations; returns soft warnings (e.g. the
    /// qubit separation is not large against the inter-donor vectors).
    std::vector<std::string> validate() const {
        std::vector<std::string> warnings;
        if (qubits.empty())
            throw std::invalid_argument("SystemGeometry: no qubits");
        for (const auto& q : qubits) q.validate();
        double max_axis = 0.0;
        for (const auto& q : qubits) max_axis = std::max(max_axis, q.axis.norm());
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            for (std::size_t j = i + 1; j < qubits.size(); ++j) {
                double sep = (qubits[i].center - qubits[j].center).norm();
                if (sep < 3.0 * max_axis) {
                    warnings.push_back(
                        "qubit centers " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        " closer than 3x the largest inter-donor vector; the dilute-qubit "
                        "approximation may be inaccurate");
                }
            }
        }
        return warnings;
    }

    void require_two_qubits() const {
        if (qubits.size() != 2)
            throw std::invalid_argument("operation requires exactly 2 qubits");
    }
};

inline Vec3 donor_position(const QubitSpec& q, Spin m) {
    return q.center + spin_value(m) * q.axis;
}

/// Distance between donor site (b, m) and donor site (bp, s), qubit
/// indices 0-based.
inline double inter_donor_distance(const SystemGeometry& g, int b, Spin m, int bp, Spin s) {
    return (donor_position(g.qubits.at(b), m) - donor_position(g.qubits.at(bp), s)).norm();
}

struct DistanceEntry {
    int b;
    Spin m;
    int bp;
    Spin s;
    double length;
};

/// All six pairwise donor distances of a two-qubit register, ascending.
inline std::vector<DistanceEntry> distance_table(const SystemGeometry& g) {
    g.require_two_qubits();
    std::vector<DistanceEntry> table;
    struct Site { int b; Spin m; };
    std::array<Site, 4> sites{Site{0, Spin::plus}, Site{0, Spin::minus},
                              Site{1, Spin::plus}, Site{1, Spin::minus}};
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            table.push_back({sites[i].b, sites[i].m, sites[j].b, sites[j].m,
                             inter_donor_distance(g, sites[i].b, sites[i].m,
                                                  sites[j].b, sites[j].m)});
        }
    }
    std::sort(table.begin(), table.end(),
              [](const DistanceEntry& a, const DistanceEntry& b) { return a.length < b.length; });
    return table;
}

/// Two-qubit geometry with axis length d, center separation r along x,
/// the first axis along y and the second axis rotated by angle_deg
/// beyond it. angle_deg = 0 is collinear, 45 the reference layout,
/// 90 the perpendicular (CNOT) layout.
inline SystemGeometry make_two_qubit_geometry(double angle_deg, double d = 10.0,
                                              double center_distance = 20.0) {
    constexpr double pi = 3.14159265358979323846;
    double phi = (90.0 + angle_deg) * pi / 180.0;
    SystemGeometry g;
    g.qubits.push_back({{0.0, 0.0, 0.0}, {0.0, d, 0.0}});
    g.qubits.push_back({{center_distance, 0.0, 0.0}, {d * std::cos(phi), d * std::sin(phi), 0.0}});
    return g;
}

inline SystemGeometry preset(std::string_view name) {
    if (name == "paper45") return make_two_qubit_geometry(45.0);
    if (name == "collinear") {
        // Both axes along the line of centers, so the six donor
        // distances collapse to {10, 10, 10, 20, 20, 30}.
        SystemGeometry g;
        g.qubits.push_back({{0.0, 0.0, 0.0}, {10.0, 0.0, 0.0}});
        g.qubits.push_back({{20.0, 0.0, 0.0}, {10.0, 0.0, 0.0}});
        return g;
    }
    if (name == "perpendicular") return make_two_qubit_geometry(90.0);
    throw std::invalid_argument("unknown geometry preset: " + std::string(name));
}

}  // namespace phondeq

#endif  // PHONDEQ_GEOMETRY_HPP
