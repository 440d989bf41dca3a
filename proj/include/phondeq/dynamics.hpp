#ifndef PHONDEQ_DYNAMICS_HPP
#define PHONDEQ_DYNAMICS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "phondeq/geometry.hpp"
#include "phondeq/rates.hpp"

namespace phondeq {

inline constexpr double two_pi = 6.28318530717958647692;

/// Initial-state amplitudes psi_{m1,m2} in the basis
/// {|++>, |+->, |-+>, |-->}.
struct TwoQubitAmplitudes {
    std::array<std::complex<double>, 4> psi{};

    std::complex<double> operator[](RegisterState r) const { return psi[r.basis_index()]; }

    void validate() const {
        double norm2 = 0.0;
        for (const auto& a : psi) norm2 += std::norm(a);
        if (std::abs(norm2 - 1.0) > 1e-12)
            throw std::invalid_argument("TwoQubitAmplitudes: state not normalized");
    }
};

/// sqrt(p)|+-> + sqrt(1-p)|-+>
inline TwoQubitAmplitudes one_excitation_state(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("one_excitation_state: p must lie in [0,1]");
    TwoQubitAmplitudes a;
    a.psi[1] = std::sqrt(p);
    a.psi[2] = std::sqrt(1.0 - p);
    return a;
}

/// sqrt(p)|++> + sqrt(1-p)|-->
inline TwoQubitAmplitudes two_excitation_state(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("two_excitation_state: p must lie in [0,1]");
    TwoQubitAmplitudes a;
    a.psi[0] = std::sqrt(p);
    a.psi[3] = std::sqrt(1.0 - p);
    return a;
}

using DensityMatrix4 = Eigen::Matrix4cd;

/// Optional source of the oracle-computed dephasing phase
/// Delta_{m,s}(t); the default (null) means zero phases.
using PhaseFunction = std::function<double(RegisterState, RegisterState, double)>;

inline RegisterState one_excitation_bra() { return {Spin::plus, Spin::minus}; }
inline RegisterState one_excitation_ket() { return {Spin::minus, Spin::plus}; }
inline RegisterState two_excitation_bra() { return {Spin::plus, Spin::plus}; }
inline RegisterState two_excitation_ket() { return {Spin::minus, Spin::minus}; }

/// |<m|rho_S(t)|s>| for a pure initial state psi at temperature ratio
/// T/T_B. The dimensionless decay exponent is 2*pi*(T/T_B)*E(t) with
/// E the integrated rate in Gamma_T a_B/s units.
inline double offdiagonal_magnitude(double t, const SystemGeometry& g, RegisterState m,
                                    RegisterState s, const TwoQubitAmplitudes& psi,
                                    double temperature_ratio) {
    if (!(temperature_ratio >= 0.0))
        throw std::domain_error("offdiagonal_magnitude: T/T_B must be non-negative");
    const double mag = std::abs(psi[m]) * std::abs(psi[s]);
    if (m == s) return mag;  // populations are invariants
    const double exponent = two_pi * temperature_ratio * integrated_exponent(t, g, m, s);
    return mag * std::exp(-exponent);
}

inline double concurrence_from_exponent(double p, double exponent) {
    return 2.0 * std::sqrt(p * (1.0 - p)) * std::exp(-exponent);
}

/// C(t) = 2 sqrt(p(1-p)) exp[-int_0^t Gamma_1exc] for
/// psi = sqrt(p)|+-> + sqrt(1-p)|-+>.
inline double concurrence_one_excitation(double t, const SystemGeometry& g, double p,
                                         double temperature_ratio) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("concurrence_one_excitation: p must lie in [0,1]");
    const double e = two_pi * temperature_ratio *
                     integrated_exponent(t, g, one_excitation_bra(), one_excitation_ket());
    return concurrence_from_exponent(p, e);
}

/// Same decay law for psi = sqrt(p)|++> + sqrt(1-p)|-->.
inline double concurrence_two_excitation(double t, const SystemGeometry& g, double p,
                                         double temperature_ratio) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("concurrence_two_excitation: p must lie in [0,1]");
    const double e = two_pi * temperature_ratio *
                     integrated_exponent(t, g, two_excitation_bra(), two_excitation_ket());
    return concurrence_from_exponent(p, e);
}

/// Reduced density matrix at time t under pure dephasing: diagonals
/// frozen at |psi_m|^2, off-diagonals damped by the integrated rate and
/// rotated by the bias frequencies plus (optionally) oracle phases.
inline DensityMatrix4 evolve_density_matrix(double t, const SystemGeometry& g,
                                            const TwoQubitAmplitudes& psi,
                                            double temperature_ratio,
                                            const PhaseFunction& phase = nullptr) {
    psi.validate();
    g.require_two_qubits();
    DensityMatrix4 rho = DensityMatrix4::Zero();
    for (int i = 0; i < 4; ++i) {
        const RegisterState m = register_basis[i];
        for (int j = 0; j < 4; ++j) {
            const RegisterState s = register_basis[j];
            const std::complex<double> bare = psi[m] * std::conj(psi[s]);
            if (bare == 0.0) continue;
            if (i == j) {
                rho(i, j) = std::norm(psi[m]);
                continue;
            }
            const double mag = offdiagonal_magnitude(t, g, m, s, psi, temperature_ratio);
            double arg = std::arg(bare);
            for (int b = 0; b < 2; ++b)
                arg -= (spin_value(m.spin(b)) - spin_value(s.spin(b))) *
                       g.qubits[b].bias_frequency * t;
            if (phase) arg += phase(m, s, t);
            rho(i, j) = std::polar(mag, arg);
        }
    }
    return rho;
}

struct PhysicalityReport {
    double hermiticity_error;
    double trace_error;
    double min_eigenvalue;
};

inline PhysicalityReport check_physicality(const DensityMatrix4& rho) {
    PhysicalityReport r;
    r.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    r.trace_error = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(
        0.5 * (rho + DensityMatrix4(rho.adjoint())));
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    return r;
}

/// Wootters concurrence C = max(0, l1 - l2 - l3 - l4), with l_i the
/// decreasing square roots of the eigenvalues of
/// rho (sy x sy) rho* (sy x sy).
inline double wootters_concurrence(const DensityMatrix4& rho) {
    const auto rep = check_physicality(rho);
    if (rep.hermiticity_error > 1e-10 || rep.trace_error > 1e-10)
        throw std::invalid_argument("wootters_concurrence: input is not a density matrix");
    if (rep.min_eigenvalue < -1e-10)
        throw std::invalid_argument("wootters_concurrence: input is not positive semidefinite");

    DensityMatrix4 yy = DensityMatrix4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const DensityMatrix4 product = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<DensityMatrix4> es(product, /*computeEigenvectors=*/false);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i)
        lambda[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

struct Extremum {
    double time;
    double value;
    int sign;
};

/// Interior local extrema of a sampled curve, by three-point comparison
/// with parabolic refinement of the peak position and value.
inline std::vector<Extremum> find_extrema(const RateCurve& curve) {
    curve.validate();
    if (curve.times.size() < 3)
        throw std::invalid_argument("find_extrema: need at least 3 samples");
    std::vector<Extremum> out;
    const auto& t = curve.times;
    const auto& v = curve.values;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const bool max = v[i] > v[i - 1] && v[i] > v[i + 1];
        const bool min = v[i] < v[i - 1] && v[i] < v[i + 1];
        if (!max && !min) continue;
        // parabola through the three points (assumes near-uniform spacing)
        const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
        double tt = t[i], vv = v[i];
        if (denom != 0.0) {
            const double shift = 0.5 * (v[i - 1] - v[i + 1]) / denom;
            const double h = 0.5 * (t[i + 1] - t[i - 1]);
            tt = t[i] + shift * h;
            vv = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * shift;
        }
        out.push_back({tt, vv, vv >= 0.0 ? +1 : -1});
    }
    return out;
}

/// Horizon beyond which every kernel has decayed and C(t) is flat:
/// (largest donor distance + 10 a_B)/s.
inline double plateau_horizon(const SystemGeometry& g, RegisterState m, RegisterState s) {
    return StateRatePlan(g, m, s).max_distance() + 10.0;
}

}  // namespace phondeq

#endif  // PHONDEQ_DYNAMICS_HPP
