#include "cohlab/shg.hpp"

#include <cmath>
#include <string>

#include "cohlab/threads.hpp"

namespace cohlab {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Composite trapezoid of f over [a, b], doubling the interval count until the
// relative change drops below tol.
template <class F>
double refine_trapezoid(const F& f, double a, double b, double tol, const char* what) {
    constexpr std::size_t max_intervals = std::size_t{1} << 20;
    std::size_t n = 64;
    const double width = b - a;
    double h = width / static_cast<double>(n);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) sum += f(a + static_cast<double>(i) * h);
    double estimate = sum * h;
    while (n < max_intervals) {
        // Reuse previous samples: add the midpoints of the current intervals.
        double midsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            midsum += f(a + (static_cast<double>(i) + 0.5) * h);
        }
        sum += midsum;
        n *= 2;
        h = width / static_cast<double>(n);
        const double next = sum * h;
        const double change = std::abs(next - estimate);
        estimate = next;
        if (change <= tol * std::abs(next) + 1e-300) return estimate;
    }
    throw ConvergenceError(std::string(what) + ": trapezoid refinement did not converge by "
                           + std::to_string(max_intervals) + " intervals");
}

// One axis of the difference-coordinate integral:
//   integral over [-L, L] of (L - |s|) w(s) cos(q s) ds
// with w the per-axis correlation factor.
template <class W>
double axis_integral(double length, double q, const W& w, const char* what) {
    const auto integrand = [&](double s) {
        return (length - std::abs(s)) * w(s) * std::cos(q * s);
    };
    return refine_trapezoid(integrand, -length, length, 1e-3, what);
}

} // namespace

void validate(const CrystalVolume& vol) {
    if (!(vol.Lx > 0.0) || !(vol.Ly > 0.0) || !(vol.Lz > 0.0)
        || !std::isfinite(vol.Lx) || !std::isfinite(vol.Ly) || !std::isfinite(vol.Lz)) {
        throw InvalidParameterError("CrystalVolume: all edge lengths must be positive and finite");
    }
}

PumpCoherence PumpCoherence::coherent() {
    return PumpCoherence{PumpKind::coherent, 0.0, 0.0, 0.0};
}

PumpCoherence PumpCoherence::incoherent_pump(double strength) {
    return PumpCoherence{PumpKind::incoherent, 0.0, 0.0, strength};
}

PumpCoherence PumpCoherence::gaussian_schell(double intensity, double coherence_length) {
    return PumpCoherence{PumpKind::gaussian_schell, intensity, coherence_length, 0.0};
}

void validate(const PumpCoherence& pc) {
    switch (pc.kind) {
        case PumpKind::coherent:
            return;
        case PumpKind::incoherent:
            if (!(pc.incoherent_strength > 0.0) || !std::isfinite(pc.incoherent_strength)) {
                throw InvalidParameterError("PumpCoherence: incoherent strength |phi|^2 must be positive");
            }
            return;
        case PumpKind::gaussian_schell:
            if (!(pc.intensity > 0.0) || !std::isfinite(pc.intensity)) {
                throw InvalidParameterError("PumpCoherence: intensity must be positive");
            }
            if (!(pc.coherence_length > 0.0) || !std::isfinite(pc.coherence_length)) {
                throw InvalidParameterError("PumpCoherence: coherence length must be positive");
            }
            return;
    }
    throw InvalidParameterError("PumpCoherence: unknown kind");
}

std::complex<double> phase_matching_coherent(const CrystalVolume& vol, const MismatchVector& q) {
    validate(vol);
    for (double component : q) {
        if (!std::isfinite(component)) {
            throw InvalidParameterError("phase_matching_coherent: mismatch components must be finite");
        }
    }
    const double value = sinc(0.5 * q[0] * vol.Lx) * sinc(0.5 * q[1] * vol.Ly) * sinc(0.5 * q[2] * vol.Lz);
    return {value, 0.0};
}

double pump_correlation(const PumpCoherence& pc, const std::array<double, 3>& dr) {
    validate(pc);
    switch (pc.kind) {
        case PumpKind::coherent:
            return 1.0;
        case PumpKind::incoherent:
            throw UnsupportedQueryError("pump_correlation: the delta-correlated pump has no pointwise"
                                        " value; intensities use the delta weight |phi|^2 directly");
        case PumpKind::gaussian_schell: {
            const double r2 = dr[0] * dr[0] + dr[1] * dr[1] + dr[2] * dr[2];
            const double lc2 = pc.coherence_length * pc.coherence_length;
            return 2.0 * pc.intensity * pc.intensity * std::exp(-r2 / lc2);
        }
    }
    throw InvalidParameterError("pump_correlation: unknown kind");
}

double shg_intensity(const CrystalVolume& vol, const PumpCoherence& pc, const MismatchVector& q) {
    validate(vol);
    validate(pc);
    for (double component : q) {
        if (!std::isfinite(component)) {
            throw InvalidParameterError("shg_intensity: mismatch components must be finite");
        }
    }
    switch (pc.kind) {
        case PumpKind::coherent: {
            const double f = phase_matching_coherent(vol, q).real();
            const double v = vol.volume();
            return v * v * f * f;
        }
        case PumpKind::incoherent:
            return pc.incoherent_strength * vol.volume();
        case PumpKind::gaussian_schell: {
            const double lc2 = pc.coherence_length * pc.coherence_length;
            const std::array<double, 3> lengths{vol.Lx, vol.Ly, vol.Lz};
            double product = 2.0 * pc.intensity * pc.intensity;
            for (int d = 0; d < 3; ++d) {
                const auto gauss = [&](double s) { return std::exp(-s * s / lc2); };
                product *= axis_integral(lengths[static_cast<std::size_t>(d)],
                                         q[static_cast<std::size_t>(d)], gauss, "shg_intensity");
            }
            return product;
        }
    }
    throw InvalidParameterError("shg_intensity: unknown kind");
}

double scaling_exponent(const PumpCoherence& pc, const CrystalVolume& base_vol) {
    validate(base_vol);
    validate(pc);
    const CrystalVolume doubled{2.0 * base_vol.Lx, 2.0 * base_vol.Ly, 2.0 * base_vol.Lz};
    const MismatchVector zero{0.0, 0.0, 0.0};
    const double small = shg_intensity(base_vol, pc, zero);
    const double large = shg_intensity(doubled, pc, zero);
    if (!(small > 0.0) || !(large > 0.0)) {
        throw NumericalDegeneracyError("scaling_exponent: intensities must be positive");
    }
    return std::log(large / small) / std::log(8.0);
}

std::vector<PatternPoint> emission_pattern(const CrystalVolume& vol, const PumpCoherence& pc,
                                           const std::vector<MismatchVector>& qs) {
    validate(vol);
    validate(pc);
    const double reference = shg_intensity(vol, pc, MismatchVector{0.0, 0.0, 0.0});
    if (!(reference > 0.0)) {
        throw NumericalDegeneracyError("emission_pattern: vanishing intensity at zero mismatch");
    }
    std::vector<PatternPoint> out(qs.size());
    parallel_for(qs.size(), [&](std::size_t i) {
        out[i] = PatternPoint{qs[i], shg_intensity(vol, pc, qs[i]) / reference};
    });
    return out;
}

} // namespace cohlab
