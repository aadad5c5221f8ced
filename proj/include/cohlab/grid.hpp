#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cohlab/errors.hpp"

namespace cohlab {

// Uniform angular-frequency grid, omega_i = omega_min + i * step.
// Units are c = hbar = 1 throughout the library.
class FrequencyGrid {
public:
    FrequencyGrid(double omega_min, double omega_max, std::size_t n_points);

    double omega_min() const { return min_; }
    double omega_max() const { return max_; }
    std::size_t size() const { return n_; }
    double step() const { return step_; }
    double operator[](std::size_t i) const { return min_ + static_cast<double>(i) * step_; }
    std::vector<double> points() const;

    bool operator==(const FrequencyGrid& other) const = default;

private:
    double min_;
    double max_;
    std::size_t n_;
    double step_;
};

// Uniform time grid for pulse envelopes and correlation matrices.
class TimeGrid {
public:
    TimeGrid(double t_min, double t_max, std::size_t n_points);

    double t_min() const { return min_; }
    double t_max() const { return max_; }
    std::size_t size() const { return n_; }
    double step() const { return step_; }
    double operator[](std::size_t i) const { return min_ + static_cast<double>(i) * step_; }
    std::vector<double> points() const;

    bool operator==(const TimeGrid& other) const = default;

private:
    double min_;
    double max_;
    std::size_t n_;
    double step_;
};

// Real nonnegative samples on a frequency grid.
struct Spectrum {
    FrequencyGrid grid;
    std::vector<double> values;
};

// Complex samples on a frequency grid (degree-of-coherence curves etc.).
struct ComplexSamples {
    FrequencyGrid grid;
    std::vector<std::complex<double>> values;
};

// Throws unless values.size() == grid.size() and every value is finite and
// >= -1e-12 * max (tiny negative round-off is tolerated, real negatives not).
void check_spectrum(const Spectrum& s, const char* what);

// Throws unless sizes match and every sample is finite.
void check_samples(const ComplexSamples& s, const char* what);

// Composite trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double>& values, double dx);
std::complex<double> trapezoid(const std::vector<std::complex<double>>& values, double dx);

} // namespace cohlab
