#include "cohlab/wolf.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "cohlab/spectral.hpp"

namespace cohlab {

namespace {

constexpr double kCoherenceSlack = 1e-12;

} // namespace

void validate(const SourcePairConfig& cfg) {
    if (!(cfg.R1 > 0.0) || !std::isfinite(cfg.R1) || !(cfg.R2 > 0.0) || !std::isfinite(cfg.R2)) {
        throw InvalidParameterError("SourcePairConfig: R1 and R2 must be positive and finite");
    }
    check_spectrum(cfg.source_spectrum, "SourcePairConfig.source_spectrum");
    check_samples(cfg.mu, "SourcePairConfig.mu");
    if (!(cfg.mu.grid == cfg.source_spectrum.grid)) {
        throw InvalidParameterError("SourcePairConfig: mu and source spectrum must share one grid");
    }
    for (std::size_t i = 0; i < cfg.mu.values.size(); ++i) {
        if (std::abs(cfg.mu.values[i]) > 1.0 + kCoherenceSlack) {
            throw CoherenceBoundError("SourcePairConfig: |mu| = " + std::to_string(std::abs(cfg.mu.values[i]))
                                      + " exceeds 1 at grid index " + std::to_string(i));
        }
    }
}

Spectrum field_spectrum(const SourcePairConfig& cfg) {
    validate(cfg);
    const FrequencyGrid& grid = cfg.source_spectrum.grid;
    const double inv1 = 1.0 / (cfg.R1 * cfg.R1);
    const double inv2 = 1.0 / (cfg.R2 * cfg.R2);
    const double cross = 2.0 / (cfg.R1 * cfg.R2);
    const double delay = cfg.R2 - cfg.R1;

    Spectrum out{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double phase = grid[i] * delay;
        const std::complex<double>& mu = cfg.mu.values[i];
        const double re = mu.real() * std::cos(phase) - mu.imag() * std::sin(phase);
        out.values[i] = cfg.source_spectrum.values[i] * (inv1 + inv2 + cross * re);
    }
    // |mu| <= 1 makes the bracket >= (1/R1 - 1/R2)^2 >= 0; only round-off can
    // push a sample below zero, and only by a sliver.
    double max_val = 0.0;
    for (double v : out.values) max_val = std::max(max_val, v);
    for (double& v : out.values) {
        if (v < 0.0) {
            if (v < -1e-12 * max_val) {
                throw NumericalDegeneracyError("field_spectrum: negative sample beyond round-off");
            }
            v = 0.0;
        }
    }
    return out;
}

ShiftRecord wolf_shift(const SourcePairConfig& cfg) {
    const Spectrum field = field_spectrum(cfg);
    ShiftRecord rec{};
    rec.source_peak = peak_frequency(cfg.source_spectrum);
    rec.field_peak = peak_frequency(field);
    rec.source_centroid = centroid_frequency(cfg.source_spectrum);
    rec.field_centroid = centroid_frequency(field);
    rec.peak_shift = rec.field_peak - rec.source_peak;
    rec.centroid_shift = rec.field_centroid - rec.source_centroid;
    return rec;
}

ComplexSamples coherence_from_sources(const Spectrum& sq, const ComplexSamples& cross) {
    check_spectrum(sq, "coherence_from_sources: source spectrum");
    check_samples(cross, "coherence_from_sources: cross spectrum");
    if (!(sq.grid == cross.grid)) {
        throw InvalidParameterError("coherence_from_sources: grids must coincide");
    }
    ComplexSamples mu{sq.grid, std::vector<std::complex<double>>(sq.values.size())};
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        if (sq.values[i] == 0.0) {
            if (cross.values[i] != std::complex<double>(0.0, 0.0)) {
                throw UndefinedCoherenceError("coherence_from_sources: cross density nonzero where the"
                                              " source spectrum vanishes (index " + std::to_string(i) + ")");
            }
            mu.values[i] = 0.0;
            continue;
        }
        mu.values[i] = cross.values[i] / sq.values[i];
        if (std::abs(mu.values[i]) > 1.0 + kCoherenceSlack) {
            throw CoherenceBoundError("coherence_from_sources: |mu| = "
                                      + std::to_string(std::abs(mu.values[i])) + " exceeds 1 at index "
                                      + std::to_string(i));
        }
    }
    return mu;
}

ComplexSamples constant_coherence(std::complex<double> value, const FrequencyGrid& grid) {
    if (std::abs(value) > 1.0 + kCoherenceSlack) {
        throw CoherenceBoundError("constant_coherence: |mu| exceeds 1");
    }
    return ComplexSamples{grid, std::vector<std::complex<double>>(grid.size(), value)};
}

ComplexSamples read_coherence_csv(std::istream& in, const FrequencyGrid& grid) {
    ComplexSamples out{grid, {}};
    out.values.reserve(grid.size());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string re_str;
        std::string im_str;
        if (!std::getline(row, re_str, ',') || !std::getline(row, im_str, ',')) {
            throw IoError("coherence CSV line " + std::to_string(line_no)
                          + ": expected two comma-separated columns");
        }
        std::size_t used = 0;
        double re = 0.0;
        double im = 0.0;
        try {
            re = std::stod(re_str, &used);
            if (used == 0) throw std::invalid_argument("empty");
            im = std::stod(im_str, &used);
            if (used == 0) throw std::invalid_argument("empty");
        } catch (const std::exception&) {
            throw IoError("coherence CSV line " + std::to_string(line_no) + ": unparseable number");
        }
        out.values.emplace_back(re, im);
    }
    if (out.values.size() != grid.size()) {
        throw IoError("coherence CSV: expected exactly " + std::to_string(grid.size())
                      + " rows to match the grid, got " + std::to_string(out.values.size()));
    }
    check_samples(out, "coherence CSV");
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (std::abs(out.values[i]) > 1.0 + kCoherenceSlack) {
            throw CoherenceBoundError("coherence CSV row " + std::to_string(i + 1)
                                      + ": |mu| exceeds 1");
        }
    }
    return out;
}

} // namespace cohlab
