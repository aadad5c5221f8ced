#include "cohlab/grid.hpp"

#include <cmath>
#include <string>

namespace cohlab {

namespace {

void check_bounds(double lo, double hi, std::size_t n, std::size_t n_min, const char* kind) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidParameterError(std::string(kind) + ": bounds must be finite");
    }
    if (!(hi > lo)) {
        throw InvalidParameterError(std::string(kind) + ": upper bound must exceed lower bound");
    }
    if (n < n_min) {
        throw InvalidParameterError(std::string(kind) + ": needs at least " + std::to_string(n_min)
                                    + " points, got " + std::to_string(n));
    }
}

} // namespace

FrequencyGrid::FrequencyGrid(double omega_min, double omega_max, std::size_t n_points)
    : min_(omega_min), max_(omega_max), n_(n_points) {
    check_bounds(omega_min, omega_max, n_points, 3, "FrequencyGrid");
    step_ = (max_ - min_) / static_cast<double>(n_ - 1);
}

std::vector<double> FrequencyGrid::points() const {
    std::vector<double> p(n_);
    for (std::size_t i = 0; i < n_; ++i) p[i] = (*this)[i];
    return p;
}

TimeGrid::TimeGrid(double t_min, double t_max, std::size_t n_points)
    : min_(t_min), max_(t_max), n_(n_points) {
    check_bounds(t_min, t_max, n_points, 16, "TimeGrid");
    step_ = (max_ - min_) / static_cast<double>(n_ - 1);
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> p(n_);
    for (std::size_t i = 0; i < n_; ++i) p[i] = (*this)[i];
    return p;
}

void check_spectrum(const Spectrum& s, const char* what) {
    if (s.values.size() != s.grid.size()) {
        throw InvalidParameterError(std::string(what) + ": value count " + std::to_string(s.values.size())
                                    + " does not match grid size " + std::to_string(s.grid.size()));
    }
    double max_val = 0.0;
    for (double v : s.values) {
        if (!std::isfinite(v)) throw InvalidParameterError(std::string(what) + ": non-finite sample");
        if (v > max_val) max_val = v;
    }
    const double floor = -1e-12 * max_val;
    for (double v : s.values) {
        if (v < floor) {
            throw InvalidParameterError(std::string(what) + ": negative sample " + std::to_string(v));
        }
    }
}

void check_samples(const ComplexSamples& s, const char* what) {
    if (s.values.size() != s.grid.size()) {
        throw InvalidParameterError(std::string(what) + ": value count " + std::to_string(s.values.size())
                                    + " does not match grid size " + std::to_string(s.grid.size()));
    }
    for (const auto& v : s.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidParameterError(std::string(what) + ": non-finite sample");
        }
    }
}

double trapezoid(const std::vector<double>& values, double dx) {
    if (values.size() < 2) throw InvalidParameterError("trapezoid: need at least two samples");
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw InvalidParameterError("trapezoid: step must be positive and finite");
    }
    double acc = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * dx;
}

std::complex<double> trapezoid(const std::vector<std::complex<double>>& values, double dx) {
    if (values.size() < 2) throw InvalidParameterError("trapezoid: need at least two samples");
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw InvalidParameterError("trapezoid: step must be positive and finite");
    }
    std::complex<double> acc = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * dx;
}

} // namespace cohlab
