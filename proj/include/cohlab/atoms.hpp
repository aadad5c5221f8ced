#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cohlab/green.hpp"
#include "cohlab/grid.hpp"

namespace cohlab {

// Two two-level atoms with unit-normalized real dipole orientations.
// gamma is the single-atom HALF linewidth: an isolated excited atom decays
// at rate 2*gamma.
struct AtomPairConfig {
    Position3 pos_A;
    Position3 pos_B;
    Eigen::Vector3d dipole_A;
    Eigen::Vector3d dipole_B;
    double omega_A;
    double omega_B;
    double gamma;
};

void validate(const AtomPairConfig& pair);

// Cross-damping and dipole-dipole shift obtained by projecting the field
// susceptibility at the mean frequency onto the two dipole orientations:
//   gamma_cross = gamma * (dA . Im chi . dB) / ((2/3) wbar^3)
//   omega_dd    = gamma * (dA . Re chi . dB) / ((4/3) wbar^3)
// Both normalizations are diagnostic conventions of this library; the
// coincidence limit gives gamma_cross -> gamma for parallel dipoles.
struct CollectiveParams {
    double gamma_cross;
    double omega_dd;
};

CollectiveParams collective_params(const AtomPairConfig& pair);

// Symmetric/antisymmetric linewidths gamma +- gamma_cross for identical
// atoms.  Throws NotApplicableError when omega_A != omega_B.  The pair sums
// to exactly 2*gamma by construction.
struct CollectiveRates {
    double gamma_plus;
    double gamma_minus;
};

CollectiveRates collective_rates(const AtomPairConfig& pair);

// Weak-excitation emission spectrum of the coupled pair: an equal-weight sum
// of two unit-area Lorentzians at omega0 +- omega_dd with half widths
// gamma +- gamma_cross.  The grid must span omega0 +- 10*gamma.
Spectrum emission_spectrum_pair(const AtomPairConfig& pair, const FrequencyGrid& grid);

// Two driven atoms; rabi is the laser Rabi frequency Omega_l and laser_grid
// the scan of laser frequencies.
struct DrivenConfig {
    AtomPairConfig pair;
    double rabi;
    FrequencyGrid laser_grid;
};

void validate(const DrivenConfig& d);

// Density matrix on the basis {gg, eg, ge, ee} (atom A first).
struct DensityMatrix4 {
    Eigen::Matrix4cd entries;
};

// Throws NumericalDegeneracyError unless Hermitian within 1e-10, unit trace
// within 1e-10, and eigenvalues >= -1e-9.
void validate(const DensityMatrix4& rho);

// Steady state of the driven-pair master equation at laser frequency
// omega_l.  In the frame rotating at omega_l,
//   H = -dA n_A - dB n_B + W_AB (s+_A s-_B + h.c.) + (W_l/2) (s+_A + s-_A + s+_B + s-_B)
// with dX = omega_l - omega_X, plus single-atom dissipators at rate 2*gamma
// and a cross dissipator at rate 2*gamma_cross.  include_coupling = false
// drops both W_AB and the cross dissipator.  Solved as a 16x16 linear system
// with one row replaced by the trace constraint.
DensityMatrix4 steady_state(const DrivenConfig& d, double omega_l, bool include_coupling);

struct ScanPoint {
    double omega_l;
    double p_ee;              // double-excitation population
    double total_intensity;   // 2 gamma (<n_A> + <n_B>) + 4 gamma_cross Re<s+_A s-_B>
};

// Steady-state scan over the laser grid.
std::vector<ScanPoint> excitation_scan(const DrivenConfig& d, bool include_coupling);

enum class MirrorOrientation {
    parallel,       // dipole parallel to the mirror surface
    perpendicular,  // dipole along the mirror normal
};

// Emission rate and frequency shift of a dipole at distance b from a perfect
// mirror, from the interference with its image at separation 2b (the image of
// a parallel dipole is reversed, that of a perpendicular one is not):
//   rate  = gamma [1 + (d . Im chi(2b) . d_img) / ((2/3) w^3)]
//   shift = (gamma/2) s (d . Re chi(2b) . d) / ((4/3) w^3),  s = +1 parallel, -1 perpendicular.
// Limits: rate -> 0 (parallel) or 2*gamma (perpendicular) as b -> 0, and
// rate -> gamma, shift -> 0 as b -> infinity.
struct MirrorRates {
    double rate;
    double shift;
};

MirrorRates mirror_modified_rates(double b, MirrorOrientation orientation, double omega, double gamma);

} // namespace cohlab
