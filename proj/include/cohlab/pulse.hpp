#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "cohlab/grid.hpp"

namespace cohlab {

// Complex field envelope on a time grid.  The envelope must be supported
// well inside the window: |values| over the first and last 2% of samples
// stay below 1e-6 of the global maximum.
struct PulseEnvelope {
    TimeGrid grid;
    std::vector<std::complex<double>> values;
};

// Throws InvalidParameterError when sizes mismatch, samples are non-finite,
// the envelope is identically zero, or the edge-support bound fails.
void check_envelope(const PulseEnvelope& e);

// Two-time field correlation <E(t_i) E*(t_j)> sampled on a time grid.
// Construct through make_input_correlation so the Hermiticity/positivity
// invariants hold (n <= 2048; smallest eigenvalue >= -1e-9 * max diagonal).
struct InputCorrelation {
    TimeGrid grid;
    Eigen::MatrixXcd matrix;
};

InputCorrelation make_input_correlation(const TimeGrid& grid, const Eigen::MatrixXcd& matrix);

// Reads an n x 2n CSV (interleaved real/imag columns, no header) and
// validates it as an InputCorrelation on the given grid.
InputCorrelation read_correlation_csv(std::istream& in, const TimeGrid& grid);

// Group-velocity-dispersion propagation over distance z with parameter
// k2 = d^2 k / d w^2 (written ktilde below).  z = 0 is the identity; k2 must
// be nonzero whenever z > 0.
struct DispersionConfig {
    double k2;
    double z;
};

void validate(const DispersionConfig& cfg);

// Unitary dispersion kernel
//   G(t, t') = sqrt(1 / (2 pi i ktilde z)) exp(-i (t - t')^2 / (2 z ktilde)).
// |G| is constant and the kernel phase at t = t' is -(pi/4) sign(ktilde z).
// Throws DegenerateKernelError at z = 0 (the kernel is a delta there).
std::complex<double> greens_function(const DispersionConfig& cfg, double t, double tp);

// Quadrature propagation of a coherent envelope.  When |k2| z exceeds the
// squared RMS width of the input intensity, the output window is widened by
// a factor of 3 (same sample count); if the propagated envelope still leaks
// into the window edges, GridTooNarrowError is thrown.
PulseEnvelope propagate_coherent(const PulseEnvelope& e0, const DispersionConfig& cfg);

// Real intensity samples on a time grid.
struct IntensityProfile {
    TimeGrid grid;
    std::vector<double> values;
};

// I(z, t) = sum_{j,k} w_j w_k G*(t, t_j) G(t, t_k) corr[k][j] over the input
// grid (trapezoid weights w).  Same output-window policy as
// propagate_coherent; z = 0 returns the correlation diagonal.
IntensityProfile propagate_intensity(const InputCorrelation& corr, const DispersionConfig& cfg);

// Gaussian Schell-model correlation
//   corr[i][j] = exp(-(t_i^2 + t_j^2) / (4 T0^2)) exp(-(t_i - t_j)^2 / (2 tc^2)),
// giving intensity exp(-t^2 / (2 T0^2)) on the diagonal and coherence time tc.
InputCorrelation gaussian_schell_correlation(double T0, double tc, const TimeGrid& grid);

// Rank-one correlation E_i conj(E_j) of a coherent envelope.
InputCorrelation factorized_correlation(const PulseEnvelope& e);

// RMS width of propagate_intensity(corr, cfg) about its centroid.
double output_width(const InputCorrelation& corr, const DispersionConfig& cfg);

// Trapezoid moments of an intensity profile.
double total_energy(const IntensityProfile& profile);
double rms_width(const IntensityProfile& profile);

// |values|^2 of an envelope as an intensity profile.
IntensityProfile envelope_intensity(const PulseEnvelope& e);

} // namespace cohlab
