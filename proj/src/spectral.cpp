#include "cohlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cohlab {

Spectrum lorentzian_spectrum(double omega0, double gamma, const FrequencyGrid& grid) {
    if (!std::isfinite(omega0)) throw InvalidParameterError("lorentzian_spectrum: omega0 must be finite");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameterError("lorentzian_spectrum: gamma must be positive");
    }
    Spectrum s{grid, std::vector<double>(grid.size())};
    const double norm = gamma / M_PI;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - omega0;
        s.values[i] = norm / (d * d + gamma * gamma);
    }
    return s;
}

ComplexSamples gaussian_profile(double center, double sigma, const FrequencyGrid& grid) {
    if (!std::isfinite(center)) throw InvalidParameterError("gaussian_profile: center must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidParameterError("gaussian_profile: sigma must be positive");
    }
    ComplexSamples s{grid, std::vector<std::complex<double>>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - center;
        s.values[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return s;
}

double peak_frequency(const Spectrum& s) {
    check_spectrum(s, "peak_frequency");
    const auto& v = s.values;
    const std::size_t n = v.size();
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (v[i] > v[k]) k = i;
    }
    if (k == 0 || k == n - 1) {
        throw BoundaryPeakError("peak_frequency: maximum at grid boundary (index "
                                + std::to_string(k) + "); no strict interior maximum");
    }
    // Vertex of the parabola through (k-1, k, k+1); denominator is strictly
    // negative because v[k] is a maximum with at least one strict neighbour.
    const double a = v[k - 1];
    const double b = v[k];
    const double c = v[k + 1];
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) {
        // Flat triple around the maximum: the sample is the best estimate.
        return s.grid[k];
    }
    const double offset = 0.5 * (a - c) / denom;
    return s.grid[k] + offset * s.grid.step();
}

double centroid_frequency(const Spectrum& s) {
    check_spectrum(s, "centroid_frequency");
    const std::size_t n = s.values.size();
    std::vector<double> weighted(n);
    for (std::size_t i = 0; i < n; ++i) weighted[i] = s.grid[i] * s.values[i];
    const double power = trapezoid(s.values, s.grid.step());
    if (!(power > 0.0)) {
        throw DegenerateSpectrumError("centroid_frequency: total power is not positive");
    }
    return trapezoid(weighted, s.grid.step()) / power;
}

} // namespace cohlab
