#ifndef PHONDEQ_RATES_HPP
#define PHONDEQ_RATES_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "phondeq/geometry.hpp"
#include "phondeq/warnings.hpp"

namespace phondeq {

// Dimensionless convention used throughout: lengths in a_B, times in
// a_B/s, rates in Gamma_T. Physical units enter only through
// temperature_scales().

/// Switch to the equal-radius kernel when |a - a'| falls below this;
/// the (a^2 - a'^2)^-2 prefactor makes the printed formula
/// cancellation-dominated there.
inline constexpr double epsilon_radius = 1e-4;
/// Switch to the zero-distance kernel below this separation.
inline constexpr double epsilon_length = 1e-9;

/// Time grid with rate samples (units Gamma_T).
struct RateCurve {
    std::vector<double> times;
    std::vector<double> values;

    void validate() const {
        if (times.size() != values.size())
            throw std::invalid_argument("RateCurve: length mismatch");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("RateCurve: times must be strictly increasing");
    }
};

namespace detail {

/// Cubic polynomial times exp(-c u), with closed-form antiderivative.
struct PolyExp {
    std::array<double, 4> p{};  // p0 + p1 u + p2 u^2 + p3 u^3
    double c = 2.0;

    double eval(double u) const {
        return (((p[3] * u + p[2]) * u + p[1]) * u + p[0]) * std::exp(-c * u);
    }

    /// F with F'(u) = eval(u):  F(u) = -exp(-c u) sum_j P^(j)(u) / c^(j+1).
    double antideriv(double u) const {
        std::array<double, 4> d = p;  // successive derivatives of P
        double sum = 0.0;
        double cpow = c;
        for (int j = 0; j < 4; ++j) {
            sum += (((d[3] * u + d[2]) * u + d[1]) * u + d[0]) / cpow;
            cpow *= c;
            // differentiate in place
            d = {d[1], 2.0 * d[2], 3.0 * d[3], 0.0};
        }
        return -std::exp(-c * u) * sum;
    }

    double integral(double u0, double u1) const { return antideriv(u1) - antideriv(u0); }
};

/// One inter-donor kernel gamma(t; a, a', l) after dispatch, with its
/// exact time antiderivative. In sigma-sum form the rate is
/// sum_g [g(|l - t|) - g(l + t)]; the zero-distance limit is stored as
/// a direct polynomial in t.
struct RateKernel {
    std::vector<PolyExp> terms;
    double l = 0.0;
    bool direct = false;

    double rate(double t) const {
        double v = 0.0;
        if (direct) {
            for (const auto& g : terms) v += g.eval(t);
        } else {
            const double um = std::abs(l - t);
            const double up = l + t;
            for (const auto& g : terms) v += g.eval(um) - g.eval(up);
        }
        return v;
    }

    /// Integral of rate() from 0 to t; piecewise across the kink at t = l.
    double integral(double t) const {
        double v = 0.0;
        if (direct) {
            for (const auto& g : terms) v += g.integral(0.0, t);
            return v;
        }
        for (const auto& g : terms) {
            double im;
            if (t <= l)
                im = g.antideriv(l) - g.antideriv(l - t);
            else
                im = (g.antideriv(l) - g.antideriv(0.0)) + (g.antideriv(t - l) - g.antideriv(0.0));
            const double ip = g.antideriv(l + t) - g.antideriv(l);
            v += im - ip;
        }
        return v;
    }
};

/// gamma(t; a, 0) for equal radii a: [t/(2a^3) + t^2/a^4 + 2t^3/(3a^5)] e^(-2t/a).
inline RateKernel zero_distance_kernel(double a) {
    RateKernel k;
    k.direct = true;
    const double a2 = a * a, a3 = a2 * a;
    k.terms.push_back({{0.0, 0.5 / a3, 1.0 / (a2 * a2), 2.0 / (3.0 * a2 * a3)}, 2.0 / a});
    return k;
}

/// Equal-radius sigma-sum kernel:
/// g(u) = (1/l)[u^3/(6a^4) + u^2/(2a^3) + 5u/(8a^2) + 5/(16a)] e^(-2u/a).
inline RateKernel equal_radius_kernel(double a, double l) {
    RateKernel k;
    k.l = l;
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    k.terms.push_back({{5.0 / (16.0 * a * l), 5.0 / (8.0 * a2 * l), 0.5 / (a3 * l),
                        1.0 / (6.0 * a4 * l)},
                       2.0 / a});
    return k;
}

/// General-radius sigma-sum kernel: for each radius assignment (x, y) in
/// {(a, a'), (a', a)},  A (u/l + B) e^(-2u/x) with
/// A = (x/(x^2 - y^2))^2 and B = (x/(2l))(x^2 - 5y^2)/(x^2 - y^2).
inline RateKernel general_radius_kernel(double a, double ap, double l) {
    RateKernel k;
    k.l = l;
    for (auto [x, y] : {std::pair{a, ap}, std::pair{ap, a}}) {
        const double denom = x * x - y * y;
        const double amp = (x / denom) * (x / denom);
        const double off = (x / (2.0 * l)) * (x * x - 5.0 * y * y) / denom;
        k.terms.push_back({{amp * off, amp / l, 0.0, 0.0}, 2.0 / x});
    }
    return k;
}

inline RateKernel make_rate_kernel(double a, double ap, double l) {
    if (!(a > 0.0) || !(ap > 0.0))
        throw std::domain_error("inter-donor rate: Bohr radii must be positive");
    if (!(l >= 0.0)) throw std::domain_error("inter-donor rate: distance must be non-negative");
    if (std::abs(a - ap) < epsilon_radius) {
        const double mean = 0.5 * (a + ap);
        return l < epsilon_length ? zero_distance_kernel(mean) : equal_radius_kernel(mean, l);
    }
    if (l < epsilon_length) {
        warn("mixed-radii l->0 kernel has no printed closed form; using the equal-radius "
             "kernel with the mean radius");
        return zero_distance_kernel(0.5 * (a + ap));
    }
    return general_radius_kernel(a, ap, l);
}

inline void require_time(double t) {
    if (!(t >= 0.0)) throw std::domain_error("rate evaluation: time must be non-negative");
}

}  // namespace detail

/// Inter-donor decoherence rate gamma(t; a, a', l) in units Gamma_T.
inline double gamma_general(double t, double a, double ap, double l) {
    detail::require_time(t);
    return detail::make_rate_kernel(a, ap, l).rate(t);
}

/// Identical-donor limit gamma(t; l), radii = a_B = 1.
inline double gamma_identical(double t, double l) {
    detail::require_time(t);
    if (!(l >= 0.0)) throw std::domain_error("gamma_identical: distance must be non-negative");
    return (l < epsilon_length ? detail::zero_distance_kernel(1.0)
                               : detail::equal_radius_kernel(1.0, l))
        .rate(t);
}

/// Zero-distance limit gamma(t; 0) = [2x^3/3 + x^2 + x/2] e^(-2x), x = st/a_B.
inline double gamma_zero(double t) {
    detail::require_time(t);
    return detail::zero_distance_kernel(1.0).rate(t);
}

namespace detail {

struct WeightedKernel {
    double weight;
    RateKernel kernel;
};

/// Four-term donor-pair expansion of the inter-bit rate gamma_{b,b'}:
/// 4 sum_{m,s} m s gamma(t; a_{b,m}, a_{b',s}, l_{b,m;b',s}).
inline std::vector<WeightedKernel> inter_bit_kernels(const SystemGeometry& g, int b, int bp) {
    std::vector<WeightedKernel> out;
    const auto& qb = g.qubits.at(b);
    const auto& qbp = g.qubits.at(bp);
    for (Spin m : all_spins) {
        for (Spin s : all_spins) {
            const double w = 4.0 * spin_value(m) * spin_value(s);
            const double l = inter_donor_distance(g, b, m, bp, s);
            out.push_back({w, make_rate_kernel(qb.bohr_radius(m), qbp.bohr_radius(s), l)});
        }
    }
    return out;
}

}  // namespace detail

/// Compiled evaluator for the state-pair decoherence rate
/// Gamma_{m,s}(t) = sum_{b,b'} (m_b - s_b)(m_b' - s_b') gamma_{b,b'}(t)
/// and its exact time integral. Building once and sampling over a grid
/// avoids re-deriving the kernel set per time point.
class StateRatePlan {
  public:
    StateRatePlan(const SystemGeometry& g, RegisterState m, RegisterState s) {
        g.require_two_qubits();
        for (int b = 0; b < 2; ++b) {
            const double db = spin_value(m.spin(b)) - spin_value(s.spin(b));
            for (int bp = 0; bp < 2; ++bp) {
                const double dbp = spin_value(m.spin(bp)) - spin_value(s.spin(bp));
                if (db == 0.0 || dbp == 0.0) continue;
                for (auto& wk : detail::inter_bit_kernels(g, b, bp)) {
                    wk.weight *= db * dbp;
                    kernels_.push_back(std::move(wk));
                }
            }
        }
    }

    double rate(double t) const {
        detail::require_time(t);
        double v = 0.0;
        for (const auto& wk : kernels_) v += wk.weight * wk.kernel.rate(t);
        return v;
    }

    /// Exact int_0^t Gamma(t') dt' via the piecewise antiderivatives.
    double integral(double t) const {
        detail::require_time(t);
        double v = 0.0;
        for (const auto& wk : kernels_) v += wk.weight * wk.kernel.integral(t);
        return v;
    }

    /// Kink locations (the donor distances), for quadrature cross-checks.
    std::vector<double> breakpoints() const {
        std::vector<double> bps;
        for (const auto& wk : kernels_)
            if (!wk.kernel.direct) bps.push_back(wk.kernel.l);
        return bps;
    }

    /// Largest donor separation entering the rate; sets the plateau horizon.
    double max_distance() const {
        double m = 0.0;
        for (const auto& wk : kernels_) m = std::max(m, wk.kernel.l);
        return m;
    }

  private:
    std::vector<detail::WeightedKernel> kernels_;
};

/// Inter-bit decorrelation rate gamma_{b,b'}(t), qubit indices 0-based.
inline double gamma_inter_bit(double t, const SystemGeometry& g, int b, int bp) {
    detail::require_time(t);
    double v = 0.0;
    for (const auto& wk : detail::inter_bit_kernels(g, b, bp)) v += wk.weight * wk.kernel.rate(t);
    return v;
}

/// Integral of gamma_{b,b'} from 0 to t.
inline double integrated_gamma_inter_bit(double t, const SystemGeometry& g, int b, int bp) {
    detail::require_time(t);
    double v = 0.0;
    for (const auto& wk : detail::inter_bit_kernels(g, b, bp))
        v += wk.weight * wk.kernel.integral(t);
    return v;
}

/// State decoherence rate Gamma_{m,s}(t) in units Gamma_T.
inline double decoherence_rate(double t, const SystemGeometry& g, RegisterState m,
                               RegisterState s) {
    return StateRatePlan(g, m, s).rate(t);
}

/// int_0^t Gamma_{m,s}(t') dt' in units Gamma_T a_B/s, closed form.
inline double integrated_exponent(double t, const SystemGeometry& g, RegisterState m,
                                  RegisterState s) {
    return StateRatePlan(g, m, s).integral(t);
}

// --- physical unit scales -------------------------------------------------

struct MaterialParams {
    double sound_speed;         // m/s
    double deformation_energy;  // J
    double unit_cell_mass;      // kg
    double cells_per_bohr_volume;
    double bohr_radius;  // m
    double temperature;  // K
};

struct TemperatureScales {
    double T_B;      // K
    double omega_B;  // rad/s
    double Gamma_T;  // rad/s
};

/// Default parameter set for P donors in Si: longitudinal sound speed,
/// acoustic deformation potential 9 eV, conventional unit cell of 8 Si
/// atoms, effective donor Bohr radius 2 nm.
inline MaterialParams silicon_phosphorus_defaults() {
    return {9000.0, 9.0 * 1.602176634e-19, 8.0 * 28.0855 * 1.66053906660e-27, 50.0, 2.0e-9, 4.2};
}

inline TemperatureScales temperature_scales(const MaterialParams& p) {
    if (!(p.sound_speed > 0.0) || !(p.deformation_energy > 0.0) || !(p.unit_cell_mass > 0.0) ||
        !(p.cells_per_bohr_volume > 0.0) || !(p.bohr_radius > 0.0) || !(p.temperature > 0.0))
        throw std::domain_error("temperature_scales: all material parameters must be positive");
    constexpr double hbar = 1.054571817e-34;
    constexpr double k_B = 1.380649e-23;
    constexpr double pi = 3.14159265358979323846;
    TemperatureScales s;
    s.omega_B = 2.0 * pi * p.sound_speed / p.bohr_radius;
    const double ratio = hbar * s.omega_B / p.deformation_energy;
    s.T_B = p.cells_per_bohr_volume * p.unit_cell_mass * p.sound_speed * p.sound_speed * ratio *
            ratio / k_B;
    s.Gamma_T = s.omega_B * p.temperature / s.T_B;
    return s;
}

}  // namespace phondeq

#endif  // PHONDEQ_RATES_HPP
