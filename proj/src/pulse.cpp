#include "cohlab/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

namespace cohlab {

namespace {

constexpr std::size_t kMaxCorrelationSize = 2048;
constexpr double kEdgeFraction = 0.02;
constexpr double kEdgeLevel = 1e-6;

std::size_t edge_count(std::size_t n) {
    const auto count = static_cast<std::size_t>(std::llround(kEdgeFraction * static_cast<double>(n)));
    return std::max<std::size_t>(1, count);
}

double max_abs(const std::vector<std::complex<double>>& values) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

bool edges_supported(const std::vector<std::complex<double>>& values, double peak) {
    const std::size_t n = values.size();
    const std::size_t k = edge_count(n);
    for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(values[i]) >= kEdgeLevel * peak) return false;
        if (std::abs(values[n - 1 - i]) >= kEdgeLevel * peak) return false;
    }
    return true;
}

// Trapezoid weights: step everywhere, half step at the two ends.
std::vector<double> quadrature_weights(const TimeGrid& grid) {
    std::vector<double> w(grid.size(), grid.step());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

// RMS width of nonnegative samples about their centroid.
double rms_width_raw(const TimeGrid& grid, const std::vector<double>& intensity) {
    std::vector<double> moment(intensity.size());
    const double power = trapezoid(intensity, grid.step());
    if (!(power > 0.0)) {
        throw NumericalDegeneracyError("rms_width: total power is not positive");
    }
    for (std::size_t i = 0; i < intensity.size(); ++i) moment[i] = grid[i] * intensity[i];
    const double centroid = trapezoid(moment, grid.step()) / power;
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        const double d = grid[i] - centroid;
        moment[i] = d * d * intensity[i];
    }
    return std::sqrt(trapezoid(moment, grid.step()) / power);
}

// Output window: widened threefold about the grid center once the dispersion
// length |k2| z exceeds the squared input duration, else the input window.
TimeGrid output_grid(const TimeGrid& in, const DispersionConfig& cfg, double t_est) {
    if (!(std::abs(cfg.k2) * cfg.z > t_est * t_est)) return in;
    const double center = 0.5 * (in.t_min() + in.t_max());
    const double half = 0.5 * (in.t_max() - in.t_min());
    return TimeGrid(center - 3.0 * half, center + 3.0 * half, in.size());
}

Eigen::MatrixXcd kernel_matrix(const TimeGrid& out, const TimeGrid& in, const DispersionConfig& cfg) {
    const std::vector<double> w = quadrature_weights(in);
    const std::complex<double> prefactor =
        std::sqrt(1.0 / (std::complex<double>(0.0, 2.0 * M_PI * cfg.k2 * cfg.z)));
    const double chirp = -0.5 / (cfg.z * cfg.k2);
    Eigen::MatrixXcd k(out.size(), in.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = out[i];
        for (std::size_t j = 0; j < in.size(); ++j) {
            const double d = t - in[j];
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                w[j] * prefactor * std::exp(std::complex<double>(0.0, chirp * d * d));
        }
    }
    return k;
}

} // namespace

void check_envelope(const PulseEnvelope& e) {
    if (e.values.size() != e.grid.size()) {
        throw InvalidParameterError("PulseEnvelope: value count does not match grid size");
    }
    for (const auto& v : e.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidParameterError("PulseEnvelope: non-finite sample");
        }
    }
    const double peak = max_abs(e.values);
    if (peak == 0.0) throw InvalidParameterError("PulseEnvelope: envelope is identically zero");
    if (!edges_supported(e.values, peak)) {
        throw InvalidParameterError("PulseEnvelope: envelope leaks into the first/last 2% of the window"
                                    " (edge samples must stay below 1e-6 of the peak)");
    }
}

InputCorrelation make_input_correlation(const TimeGrid& grid, const Eigen::MatrixXcd& matrix) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    if (grid.size() > kMaxCorrelationSize) {
        throw InvalidParameterError("InputCorrelation: grids beyond " + std::to_string(kMaxCorrelationSize)
                                    + " points are not supported");
    }
    if (matrix.rows() != n || matrix.cols() != n) {
        throw InvalidCorrelationError("InputCorrelation: matrix must be n x n for the grid size");
    }
    if (!matrix.allFinite()) throw InvalidCorrelationError("InputCorrelation: non-finite entries");

    double max_diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(matrix(i, i)));
    if (!(max_diag > 0.0)) {
        throw InvalidCorrelationError("InputCorrelation: zero diagonal (no power)");
    }
    const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-12 * max_diag) {
        throw InvalidCorrelationError("InputCorrelation: Hermiticity violated by " + std::to_string(herm_dev));
    }
    InputCorrelation corr{grid, 0.5 * (matrix + matrix.adjoint().eval())};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (corr.matrix(i, i).real() < -1e-12 * max_diag) {
            throw InvalidCorrelationError("InputCorrelation: negative diagonal entry");
        }
        corr.matrix(i, i) = std::max(corr.matrix(i, i).real(), 0.0);
    }
    // Positivity through the inertia of the shifted factorization: the shift
    // absorbs eigenvalues down to -1e-9 * max diagonal.
    Eigen::MatrixXcd shifted = corr.matrix;
    shifted.diagonal().array() += 1e-9 * max_diag;
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(shifted);
    if (ldlt.info() != Eigen::Success || ldlt.vectorD().real().minCoeff() < -1e-10 * max_diag) {
        throw InvalidCorrelationError("InputCorrelation: matrix is not positive semidefinite");
    }
    return corr;
}

InputCorrelation read_correlation_csv(std::istream& in, const TimeGrid& grid) {
    const std::size_t n = grid.size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::string line;
    std::size_t row = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (row >= n) {
            throw IoError("correlation CSV: more than " + std::to_string(n) + " data rows");
        }
        std::istringstream fields(line);
        std::string field;
        std::vector<double> numbers;
        numbers.reserve(2 * n);
        while (std::getline(fields, field, ',')) {
            try {
                std::size_t used = 0;
                numbers.push_back(std::stod(field, &used));
                if (used == 0) throw std::invalid_argument("empty");
            } catch (const std::exception&) {
                throw IoError("correlation CSV line " + std::to_string(line_no) + ": unparseable number");
            }
        }
        if (numbers.size() != 2 * n) {
            throw IoError("correlation CSV line " + std::to_string(line_no) + ": expected "
                          + std::to_string(2 * n) + " columns (interleaved real/imag), got "
                          + std::to_string(numbers.size()));
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
                std::complex<double>(numbers[2 * j], numbers[2 * j + 1]);
        }
        ++row;
    }
    if (row != n) {
        throw IoError("correlation CSV: expected " + std::to_string(n) + " data rows, got "
                      + std::to_string(row));
    }
    return make_input_correlation(grid, m);
}

void validate(const DispersionConfig& cfg) {
    if (!std::isfinite(cfg.k2) || !std::isfinite(cfg.z)) {
        throw InvalidParameterError("DispersionConfig: k2 and z must be finite");
    }
    if (cfg.z < 0.0) throw InvalidParameterError("DispersionConfig: z must be nonnegative");
    if (cfg.z > 0.0 && cfg.k2 == 0.0) {
        throw InvalidParameterError("DispersionConfig: k2 must be nonzero for z > 0");
    }
}

std::complex<double> greens_function(const DispersionConfig& cfg, double t, double tp) {
    validate(cfg);
    if (cfg.z == 0.0) {
        throw DegenerateKernelError("greens_function: the z = 0 kernel is a delta; propagation at z = 0"
                                    " is the identity");
    }
    const std::complex<double> prefactor =
        std::sqrt(1.0 / (std::complex<double>(0.0, 2.0 * M_PI * cfg.k2 * cfg.z)));
    const double d = t - tp;
    return prefactor * std::exp(std::complex<double>(0.0, -0.5 * d * d / (cfg.z * cfg.k2)));
}

PulseEnvelope propagate_coherent(const PulseEnvelope& e0, const DispersionConfig& cfg) {
    check_envelope(e0);
    validate(cfg);
    if (cfg.z == 0.0) return e0;

    const IntensityProfile input_intensity = envelope_intensity(e0);
    const double t_est = rms_width_raw(e0.grid, input_intensity.values);
    const TimeGrid out = output_grid(e0.grid, cfg, t_est);

    const Eigen::MatrixXcd kernel = kernel_matrix(out, e0.grid, cfg);
    const Eigen::Map<const Eigen::VectorXcd> in_vec(e0.values.data(),
                                                    static_cast<Eigen::Index>(e0.values.size()));
    const Eigen::VectorXcd out_vec = kernel * in_vec;

    PulseEnvelope result{out, std::vector<std::complex<double>>(out.size())};
    for (std::size_t i = 0; i < out.size(); ++i) result.values[i] = out_vec(static_cast<Eigen::Index>(i));

    const double peak = max_abs(result.values);
    if (peak == 0.0 || !edges_supported(result.values, peak)) {
        throw GridTooNarrowError("propagate_coherent: propagated envelope leaks into the window edges;"
                                 " widen the window or sample it more densely (the kernel chirp must"
                                 " stay below the sampling rate across the window)");
    }
    return result;
}

IntensityProfile propagate_intensity(const InputCorrelation& corr, const DispersionConfig& cfg) {
    validate(cfg);
    const std::size_t n = corr.grid.size();
    if (corr.matrix.rows() != static_cast<Eigen::Index>(n)) {
        throw InvalidCorrelationError("propagate_intensity: correlation size does not match its grid");
    }
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = corr.matrix(static_cast<Eigen::Index>(i),
                                                              static_cast<Eigen::Index>(i)).real();
    if (cfg.z == 0.0) return IntensityProfile{corr.grid, diag};

    const double t_est = rms_width_raw(corr.grid, diag);
    const TimeGrid out = output_grid(corr.grid, cfg, t_est);

    // I = diag(K corr K^H) with K carrying the quadrature weights.
    const Eigen::MatrixXcd kernel = kernel_matrix(out, corr.grid, cfg);
    const Eigen::MatrixXcd product = kernel * corr.matrix;
    const Eigen::VectorXcd quadratic = (product.cwiseProduct(kernel.conjugate())).rowwise().sum();

    IntensityProfile profile{out, std::vector<double>(out.size())};
    double max_val = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        profile.values[i] = quadratic(static_cast<Eigen::Index>(i)).real();
        max_val = std::max(max_val, std::abs(profile.values[i]));
    }
    const double imag_residue = quadratic.imag().cwiseAbs().maxCoeff();
    if (imag_residue > 1e-9 * std::max(max_val, 1e-300)) {
        throw NumericalDegeneracyError("propagate_intensity: imaginary residue " + std::to_string(imag_residue));
    }
    for (double& v : profile.values) {
        if (v < 0.0) {
            if (v < -1e-9 * max_val) {
                throw NumericalDegeneracyError("propagate_intensity: negative intensity beyond round-off");
            }
            v = 0.0;
        }
    }
    return profile;
}

InputCorrelation gaussian_schell_correlation(double T0, double tc, const TimeGrid& grid) {
    if (!(T0 > 0.0) || !std::isfinite(T0)) {
        throw InvalidParameterError("gaussian_schell_correlation: T0 must be positive");
    }
    if (!(tc > 0.0) || !std::isfinite(tc)) {
        throw InvalidParameterError("gaussian_schell_correlation: tc must be positive");
    }
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = grid[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            const double tj = grid[static_cast<std::size_t>(j)];
            const double d = ti - tj;
            m(i, j) = std::exp(-(ti * ti + tj * tj) / (4.0 * T0 * T0) - d * d / (2.0 * tc * tc));
        }
    }
    return make_input_correlation(grid, m);
}

InputCorrelation factorized_correlation(const PulseEnvelope& e) {
    check_envelope(e);
    const auto n = static_cast<Eigen::Index>(e.values.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = e.values[static_cast<std::size_t>(i)] * std::conj(e.values[static_cast<std::size_t>(j)]);
        }
    }
    return make_input_correlation(e.grid, m);
}

double output_width(const InputCorrelation& corr, const DispersionConfig& cfg) {
    const IntensityProfile profile = propagate_intensity(corr, cfg);
    return rms_width_raw(profile.grid, profile.values);
}

double total_energy(const IntensityProfile& profile) {
    if (profile.values.size() != profile.grid.size()) {
        throw InvalidParameterError("total_energy: value count does not match grid size");
    }
    return trapezoid(profile.values, profile.grid.step());
}

double rms_width(const IntensityProfile& profile) {
    if (profile.values.size() != profile.grid.size()) {
        throw InvalidParameterError("rms_width: value count does not match grid size");
    }
    return rms_width_raw(profile.grid, profile.values);
}

IntensityProfile envelope_intensity(const PulseEnvelope& e) {
    if (e.values.size() != e.grid.size()) {
        throw InvalidParameterError("envelope_intensity: value count does not match grid size");
    }
    IntensityProfile profile{e.grid, std::vector<double>(e.values.size())};
    for (std::size_t i = 0; i < e.values.size(); ++i) profile.values[i] = std::norm(e.values[i]);
    return profile;
}

} // namespace cohlab
