#pragma once

#include "cohlab/grid.hpp"

namespace cohlab {

// Unit-area Lorentzian line, S(omega) = (gamma/pi) / ((omega - omega0)^2 + gamma^2).
// gamma is the half width at half maximum; peak value is 1/(pi*gamma).
Spectrum lorentzian_spectrum(double omega0, double gamma, const FrequencyGrid& grid);

// Real Gaussian profile exp(-(omega - center)^2 / (2 sigma^2)) returned as
// complex samples; used as a degree-of-coherence model (peak value 1).
ComplexSamples gaussian_profile(double center, double sigma, const FrequencyGrid& grid);

// Location of the spectral maximum, refined by fitting a parabola through the
// maximal sample and its two neighbours.  Throws BoundaryPeakError when the
// maximum touches the first or last grid point (no bracketing triple), which
// also covers all-equal spectra.
double peak_frequency(const Spectrum& s);

// Normalized first moment, integral(omega S) / integral(S), by the trapezoid
// rule on the spectrum's own grid.  Throws DegenerateSpectrumError when the
// total power is not positive.
double centroid_frequency(const Spectrum& s);

} // namespace cohlab
