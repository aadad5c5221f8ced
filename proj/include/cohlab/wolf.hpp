#pragma once

#include <iosfwd>

#include "cohlab/grid.hpp"

namespace cohlab {

// Two identical small sources observed at distances R1 and R2 from the
// detection point (units c = 1, so the path delay phase is omega*(R2 - R1)).
// source_spectrum is the common source spectrum S_Q(omega); mu holds the
// spectral degree of coherence mu_Q(omega) between the two sources, sampled
// on the same grid.
struct SourcePairConfig {
    double R1;
    double R2;
    Spectrum source_spectrum;
    ComplexSamples mu;
};

// Throws unless R1, R2 > 0, the grids coincide, and |mu| <= 1 + 1e-12.
void validate(const SourcePairConfig& cfg);

// Detected field spectrum
//   S_U(w) = S_Q(w) * [ 1/R1^2 + 1/R2^2 + (2/(R1 R2)) Re( mu(w) e^{i w (R2-R1)} ) ].
// Nonnegative for |mu| <= 1; round-off below -1e-12*max is clamped to zero.
Spectrum field_spectrum(const SourcePairConfig& cfg);

struct ShiftRecord {
    double peak_shift;       // peak(S_U) - peak(S_Q)
    double centroid_shift;   // centroid(S_U) - centroid(S_Q)
    double source_peak;
    double field_peak;
    double source_centroid;
    double field_centroid;
};

// Peak and centroid displacement of the detected spectrum relative to the
// source spectrum, both evaluated on the configuration's own grid.
ShiftRecord wolf_shift(const SourcePairConfig& cfg);

// Degree of coherence from a source spectrum and a cross-spectral density:
// mu = cross / S_Q pointwise.  Throws UndefinedCoherenceError where S_Q = 0
// with cross != 0, and CoherenceBoundError when |mu| > 1 + 1e-12.
ComplexSamples coherence_from_sources(const Spectrum& sq, const ComplexSamples& cross);

// Constant degree of coherence on a grid (complex value, |value| <= 1).
ComplexSamples constant_coherence(std::complex<double> value, const FrequencyGrid& grid);

// Reads mu(omega) from two-column CSV text (real,imag per row, no header).
// The row count must equal grid.size() exactly.
ComplexSamples read_coherence_csv(std::istream& in, const FrequencyGrid& grid);

} // namespace cohlab
