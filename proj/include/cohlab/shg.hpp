#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cohlab/errors.hpp"

namespace cohlab {

// Rectangular interaction volume centered at the origin, edges Lx, Ly, Lz.
struct CrystalVolume {
    double Lx;
    double Ly;
    double Lz;

    double volume() const { return Lx * Ly * Lz; }
};

void validate(const CrystalVolume& vol);

// Phase-mismatch vector Q = k1 + k2 - k(2w).
using MismatchVector = std::array<double, 3>;

enum class PumpKind {
    coherent,        // W == 1 across the volume
    incoherent,      // delta-correlated, weight |phi|^2
    gaussian_schell, // W(s) = 2 I^2 exp(-|s|^2 / lc^2)
};

struct PumpCoherence {
    PumpKind kind;
    double intensity;           // I, gaussian_schell only
    double coherence_length;    // lc, gaussian_schell only
    double incoherent_strength; // |phi|^2, incoherent only

    static PumpCoherence coherent();
    static PumpCoherence incoherent_pump(double strength);
    static PumpCoherence gaussian_schell(double intensity, double coherence_length);
};

void validate(const PumpCoherence& pc);

// Normalized box factor (1/V) integral over the volume of e^{i Q . r}:
// the product of sinc(Q_d L_d / 2) over the three axes (real-valued for a
// centered box, returned as complex for generality).
std::complex<double> phase_matching_coherent(const CrystalVolume& vol, const MismatchVector& q);

// Pointwise pump correlation W at displacement dr.  The incoherent kind has
// no pointwise value (a delta weight) and throws UnsupportedQueryError.
double pump_correlation(const PumpCoherence& pc, const std::array<double, 3>& dr);

// Second-harmonic intensity
//   I(Q) = integral over the box pair of W(r' - r'') e^{i Q.(r' - r'')},
// reduced to difference coordinates with the box autocorrelation weight
// prod_d (L_d - |s_d|)+ and evaluated per axis by composite trapezoid with
// grid doubling to 1e-3 relative change (ConvergenceError beyond 2^20
// points).  Coherent: V^2 |f(Q)|^2 in closed form.  Incoherent:
// |phi|^2 V, independent of Q.
double shg_intensity(const CrystalVolume& vol, const PumpCoherence& pc, const MismatchVector& q);

// Volume-scaling exponent d log I / d log V at Q = 0, measured between V and
// 8V (every edge doubled): 2 for coherent pumping, 1 for incoherent.
double scaling_exponent(const PumpCoherence& pc, const CrystalVolume& base_vol);

struct PatternPoint {
    MismatchVector q;
    double intensity; // normalized to the Q = 0 value
};

// shg_intensity over a list of mismatch vectors, normalized to Q = 0.
std::vector<PatternPoint> emission_pattern(const CrystalVolume& vol, const PumpCoherence& pc,
                                           const std::vector<MismatchVector>& qs);

} // namespace cohlab
