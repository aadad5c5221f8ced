#include "cohlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cohlab/atoms.hpp"
#include "cohlab/pulse.hpp"
#include "cohlab/shg.hpp"
#include "cohlab/spectral.hpp"
#include "cohlab/wolf.hpp"

namespace cohlab {

namespace {

// ---------------------------------------------------------------- schema --

enum class ValueType { real, positive_real, integer, word, flag };

struct KeyRule {
    std::string key;
    ValueType type = ValueType::real;
    bool required = true;
    long min_int = 1;
    long max_int = 1'000'000'000;
    std::vector<std::string> allowed; // for word: empty means any nonempty
    std::string description;
};

const char* type_name(ValueType t) {
    switch (t) {
        case ValueType::real: return "real";
        case ValueType::positive_real: return "positive real";
        case ValueType::integer: return "integer";
        case ValueType::word: return "word";
        case ValueType::flag: return "true|false";
    }
    return "?";
}

KeyRule real_key(const std::string& key, bool required, const std::string& desc) {
    KeyRule r;
    r.key = key;
    r.type = ValueType::real;
    r.required = required;
    r.description = desc;
    return r;
}

KeyRule positive_key(const std::string& key, bool required, const std::string& desc) {
    KeyRule r = real_key(key, required, desc);
    r.type = ValueType::positive_real;
    return r;
}

KeyRule int_key(const std::string& key, long min_v, long max_v, const std::string& desc) {
    KeyRule r;
    r.key = key;
    r.type = ValueType::integer;
    r.min_int = min_v;
    r.max_int = max_v;
    r.description = desc;
    return r;
}

KeyRule word_key(const std::string& key, bool required, std::vector<std::string> allowed,
                 const std::string& desc) {
    KeyRule r;
    r.key = key;
    r.type = ValueType::word;
    r.required = required;
    r.allowed = std::move(allowed);
    r.description = desc;
    return r;
}

KeyRule flag_key(const std::string& key, const std::string& desc) {
    KeyRule r;
    r.key = key;
    r.type = ValueType::flag;
    r.required = false;
    r.description = desc;
    return r;
}

bool parse_real(const std::string& text, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(text, &used);
        return used == text.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_integer(const std::string& text, long& out) {
    try {
        std::size_t used = 0;
        out = std::stol(text, &used);
        return used == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

// Rules for one scenario.  Selector-dependent keys (coherence model, pump
// kind, correlation source) are resolved from the raw key/value map first.
std::vector<KeyRule> scenario_rules(Scenario s, const std::map<std::string, std::string>& raw,
                                    std::vector<std::string>& problems) {
    std::vector<KeyRule> rules;
    switch (s) {
        case Scenario::wolf: {
            rules.push_back(positive_key("R1", true, "distance from source 1 to the detector"));
            rules.push_back(positive_key("R2", true, "distance from source 2 to the detector"));
            rules.push_back(positive_key("omega0", true, "source line center"));
            rules.push_back(positive_key("gamma", true, "source Lorentzian half width"));
            rules.push_back(real_key("grid_min", true, "lower edge of the frequency grid"));
            rules.push_back(real_key("grid_max", true, "upper edge of the frequency grid"));
            rules.push_back(int_key("grid_n", 3, 100'000'000, "number of frequency samples"));
            rules.push_back(word_key("mu_model", true, {"constant", "gaussian", "file"},
                                     "degree-of-coherence model"));
            const auto it = raw.find("mu_model");
            const std::string model = (it == raw.end()) ? "" : it->second;
            if (model == "constant") {
                rules.push_back(real_key("mu_re", true, "real part of the constant coherence"));
                rules.push_back(real_key("mu_im", true, "imaginary part of the constant coherence"));
            } else if (model == "gaussian") {
                rules.push_back(real_key("mu_center", true, "center of the Gaussian coherence profile"));
                rules.push_back(positive_key("mu_sigma", true, "width of the Gaussian coherence profile"));
            } else if (model == "file") {
                rules.push_back(word_key("mu_file", true, {},
                                         "CSV path with real,imag coherence samples per grid row"));
            } else if (it != raw.end()) {
                // Unknown model: reported by the mu_model rule itself.
                (void)problems;
            }
            break;
        }
        case Scenario::vacuum: {
            rules.push_back(positive_key("omega", true, "evaluation frequency"));
            rules.push_back(real_key("wr_min", true, "smallest omega*r (>= 0)"));
            rules.push_back(real_key("wr_max", true, "largest omega*r"));
            rules.push_back(int_key("wr_n", 2, 10'000'000, "number of separations"));
            break;
        }
        case Scenario::atoms: {
            rules.push_back(positive_key("omega_A", true, "transition frequency of atom A"));
            rules.push_back(positive_key("omega_B", true, "transition frequency of atom B"));
            rules.push_back(positive_key("gamma", true, "single-atom half linewidth"));
            rules.push_back(positive_key("rabi", true, "laser Rabi frequency"));
            rules.push_back(positive_key("separation", true, "distance between the atoms"));
            rules.push_back(word_key("orientation", true, {"collinear", "transverse"},
                                     "dipoles along the separation axis or perpendicular to it"));
            rules.push_back(real_key("scan_min", true, "lowest laser frequency"));
            rules.push_back(real_key("scan_max", true, "highest laser frequency"));
            rules.push_back(int_key("scan_n", 3, 1'000'000, "number of scan points"));
            break;
        }
        case Scenario::mirror: {
            rules.push_back(positive_key("omega", true, "transition frequency"));
            rules.push_back(positive_key("gamma", true, "free-space half linewidth"));
            rules.push_back(positive_key("wb_min", true, "smallest omega*b"));
            rules.push_back(positive_key("wb_max", true, "largest omega*b"));
            rules.push_back(int_key("wb_n", 2, 10'000'000, "number of distances"));
            break;
        }
        case Scenario::shg: {
            rules.push_back(word_key("kind", true, {"coherent", "incoherent", "gaussian_schell"},
                                     "pump coherence model"));
            rules.push_back(positive_key("Lx", true, "crystal edge along x"));
            rules.push_back(positive_key("Ly", true, "crystal edge along y"));
            rules.push_back(positive_key("Lz", true, "crystal edge along z"));
            rules.push_back(real_key("q_min", true, "lowest mismatch component along x"));
            rules.push_back(real_key("q_max", true, "highest mismatch component along x"));
            rules.push_back(int_key("q_n", 2, 1'000'000, "number of mismatch samples"));
            const auto it = raw.find("kind");
            const std::string kind = (it == raw.end()) ? "" : it->second;
            if (kind == "gaussian_schell") {
                rules.push_back(positive_key("intensity", true, "pump intensity I"));
                rules.push_back(positive_key("coherence_length", true, "transverse coherence length"));
            } else if (kind == "incoherent") {
                rules.push_back(positive_key("strength", true, "delta-correlation weight |phi|^2"));
            }
            break;
        }
        case Scenario::pulse: {
            rules.push_back(real_key("k2", true, "group-velocity dispersion parameter"));
            rules.push_back(real_key("z", true, "propagation distance (>= 0)"));
            rules.push_back(real_key("t_min", true, "lower edge of the time window"));
            rules.push_back(real_key("t_max", true, "upper edge of the time window"));
            rules.push_back(int_key("n", 16, 2048, "number of time samples"));
            const bool external = raw.count("corr_file") > 0;
            if (external) {
                rules.push_back(word_key("corr_file", true, {},
                                         "CSV path with an n x 2n interleaved correlation matrix"));
            } else {
                rules.push_back(positive_key("T0", true, "Gaussian Schell-model duration"));
                rules.push_back(positive_key("tc", true, "Gaussian Schell-model coherence time"));
            }
            rules.push_back(flag_key("check_factorization",
                                     "compare the intensity propagation against the coherent route"));
            break;
        }
    }
    return rules;
}

const std::map<std::string, Scenario>& scenario_table() {
    static const std::map<std::string, Scenario> table = {
        {"wolf", Scenario::wolf},   {"vacuum", Scenario::vacuum}, {"atoms", Scenario::atoms},
        {"mirror", Scenario::mirror}, {"shg", Scenario::shg},     {"pulse", Scenario::pulse},
    };
    return table;
}

std::string known_scenarios() {
    std::string list;
    for (const auto& [name, value] : scenario_table()) {
        (void)value;
        if (!list.empty()) list += ", ";
        list += name;
    }
    return list;
}

void check_value(const KeyRule& rule, const std::string& value, std::vector<std::string>& problems) {
    switch (rule.type) {
        case ValueType::real: {
            double v = 0.0;
            if (!parse_real(value, v)) {
                problems.push_back("key '" + rule.key + "': expected a finite real number, got '" + value + "'");
            }
            return;
        }
        case ValueType::positive_real: {
            double v = 0.0;
            if (!parse_real(value, v) || !(v > 0.0)) {
                problems.push_back("key '" + rule.key + "': expected a positive real number, got '" + value + "'");
            }
            return;
        }
        case ValueType::integer: {
            long v = 0;
            if (!parse_integer(value, v) || v < rule.min_int || v > rule.max_int) {
                problems.push_back("key '" + rule.key + "': expected an integer in ["
                                   + std::to_string(rule.min_int) + ", " + std::to_string(rule.max_int)
                                   + "], got '" + value + "'");
            }
            return;
        }
        case ValueType::word: {
            if (value.empty()) {
                problems.push_back("key '" + rule.key + "': value must not be empty");
                return;
            }
            if (!rule.allowed.empty()
                && std::find(rule.allowed.begin(), rule.allowed.end(), value) == rule.allowed.end()) {
                std::string options;
                for (const auto& a : rule.allowed) {
                    if (!options.empty()) options += " | ";
                    options += a;
                }
                problems.push_back("key '" + rule.key + "': expected one of {" + options + "}, got '"
                                   + value + "'");
            }
            return;
        }
        case ValueType::flag: {
            if (value != "true" && value != "false") {
                problems.push_back("key '" + rule.key + "': expected true or false, got '" + value + "'");
            }
            return;
        }
    }
}

std::string strip(const std::string& text) {
    std::size_t lo = 0;
    std::size_t hi = text.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    return text.substr(lo, hi - lo);
}

// ------------------------------------------------------------- helpers ----

double real_param(const ScenarioConfig& cfg, const std::string& key) {
    double v = 0.0;
    parse_real(cfg.params.at(key), v);
    return v;
}

std::size_t size_param(const ScenarioConfig& cfg, const std::string& key) {
    long v = 0;
    parse_integer(cfg.params.at(key), v);
    return static_cast<std::size_t>(v);
}

std::string word_param(const ScenarioConfig& cfg, const std::string& key) {
    return cfg.params.at(key);
}

bool flag_param(const ScenarioConfig& cfg, const std::string& key) {
    const auto it = cfg.params.find(key);
    return it != cfg.params.end() && it->second == "true";
}

// ------------------------------------------------------------ scenarios ---

std::vector<ResultTable> run_wolf(const ScenarioConfig& cfg) {
    const FrequencyGrid grid(real_param(cfg, "grid_min"), real_param(cfg, "grid_max"),
                             size_param(cfg, "grid_n"));
    const Spectrum source = lorentzian_spectrum(real_param(cfg, "omega0"), real_param(cfg, "gamma"), grid);

    ComplexSamples mu{grid, {}};
    const std::string model = word_param(cfg, "mu_model");
    if (model == "constant") {
        mu = constant_coherence({real_param(cfg, "mu_re"), real_param(cfg, "mu_im")}, grid);
    } else if (model == "gaussian") {
        mu = gaussian_profile(real_param(cfg, "mu_center"), real_param(cfg, "mu_sigma"), grid);
    } else {
        const std::string path = word_param(cfg, "mu_file");
        std::ifstream in(path);
        if (!in) throw IoError("wolf: cannot open coherence file '" + path + "'");
        mu = read_coherence_csv(in, grid);
    }

    const SourcePairConfig pair{real_param(cfg, "R1"), real_param(cfg, "R2"), source, mu};
    const Spectrum field = field_spectrum(pair);
    const ShiftRecord shifts = wolf_shift(pair);

    ResultTable source_table{"wolf_source_spectrum", {"omega", "power"}, {}};
    ResultTable field_table{"wolf_field_spectrum", {"omega", "power"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        source_table.rows.push_back({grid[i], source.values[i]});
        field_table.rows.push_back({grid[i], field.values[i]});
    }
    ResultTable shift_table{"wolf_shifts",
                            {"peak_shift", "centroid_shift", "source_peak", "field_peak",
                             "source_centroid", "field_centroid"},
                            {{shifts.peak_shift, shifts.centroid_shift, shifts.source_peak,
                              shifts.field_peak, shifts.source_centroid, shifts.field_centroid}}};
    return {source_table, field_table, shift_table};
}

std::vector<ResultTable> run_vacuum(const ScenarioConfig& cfg) {
    const double omega = real_param(cfg, "omega");
    const double wr_min = real_param(cfg, "wr_min");
    const double wr_max = real_param(cfg, "wr_max");
    const std::size_t n = size_param(cfg, "wr_n");
    if (wr_min < 0.0 || !(wr_max > wr_min)) {
        throw InvalidParameterError("vacuum: need 0 <= wr_min < wr_max");
    }
    ResultTable table{"vacuum_coherence", {"wr", "transverse", "longitudinal", "trace"}, {}};
    const double step = (wr_max - wr_min) / static_cast<double>(n - 1);
    const Position3 origin{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double wr = wr_min + static_cast<double>(i) * step;
        const Position3 second{0.0, 0.0, wr / omega};
        const Eigen::Matrix3d m = normalized_vacuum_coherence(origin, second, omega);
        table.rows.push_back({wr, m(0, 0), m(2, 2), m.trace()});
    }
    return {table};
}

AtomPairConfig atoms_pair_from(const ScenarioConfig& cfg) {
    AtomPairConfig pair;
    pair.pos_A = Position3{0.0, 0.0, 0.0};
    pair.pos_B = Position3{0.0, 0.0, real_param(cfg, "separation")};
    const bool collinear = word_param(cfg, "orientation") == "collinear";
    pair.dipole_A = collinear ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
    pair.dipole_B = pair.dipole_A;
    pair.omega_A = real_param(cfg, "omega_A");
    pair.omega_B = real_param(cfg, "omega_B");
    pair.gamma = real_param(cfg, "gamma");
    return pair;
}

std::vector<ResultTable> run_atoms(const ScenarioConfig& cfg) {
    const DrivenConfig driven{atoms_pair_from(cfg), real_param(cfg, "rabi"),
                              FrequencyGrid(real_param(cfg, "scan_min"), real_param(cfg, "scan_max"),
                                            size_param(cfg, "scan_n"))};
    std::vector<ResultTable> tables;
    for (const bool coupled : {true, false}) {
        const std::vector<ScanPoint> scan = excitation_scan(driven, coupled);
        ResultTable table{coupled ? "atoms_scan_coupled" : "atoms_scan_uncoupled",
                          {"omega_l", "p_ee", "total_intensity"},
                          {}};
        for (const ScanPoint& p : scan) table.rows.push_back({p.omega_l, p.p_ee, p.total_intensity});
        tables.push_back(std::move(table));
    }
    return tables;
}

std::vector<ResultTable> run_mirror(const ScenarioConfig& cfg) {
    const double omega = real_param(cfg, "omega");
    const double gamma = real_param(cfg, "gamma");
    const double wb_min = real_param(cfg, "wb_min");
    const double wb_max = real_param(cfg, "wb_max");
    const std::size_t n = size_param(cfg, "wb_n");
    if (!(wb_max > wb_min)) throw InvalidParameterError("mirror: need wb_min < wb_max");
    ResultTable table{"mirror_rates",
                      {"wb", "rate_parallel", "shift_parallel", "rate_perpendicular",
                       "shift_perpendicular"},
                      {}};
    const double step = (wb_max - wb_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double wb = wb_min + static_cast<double>(i) * step;
        const double b = wb / omega;
        const MirrorRates par = mirror_modified_rates(b, MirrorOrientation::parallel, omega, gamma);
        const MirrorRates perp = mirror_modified_rates(b, MirrorOrientation::perpendicular, omega, gamma);
        // Emitted normalized: rates in units of gamma.
        table.rows.push_back({wb, par.rate / gamma, par.shift / gamma, perp.rate / gamma,
                              perp.shift / gamma});
    }
    return {table};
}

std::vector<ResultTable> run_shg(const ScenarioConfig& cfg) {
    const CrystalVolume vol{real_param(cfg, "Lx"), real_param(cfg, "Ly"), real_param(cfg, "Lz")};
    const std::string kind = word_param(cfg, "kind");
    PumpCoherence pc = PumpCoherence::coherent();
    if (kind == "incoherent") {
        pc = PumpCoherence::incoherent_pump(real_param(cfg, "strength"));
    } else if (kind == "gaussian_schell") {
        pc = PumpCoherence::gaussian_schell(real_param(cfg, "intensity"),
                                            real_param(cfg, "coherence_length"));
    }
    const double q_min = real_param(cfg, "q_min");
    const double q_max = real_param(cfg, "q_max");
    const std::size_t n = size_param(cfg, "q_n");
    if (!(q_max > q_min)) throw InvalidParameterError("shg: need q_min < q_max");
    std::vector<MismatchVector> qs(n);
    const double step = (q_max - q_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        qs[i] = MismatchVector{q_min + static_cast<double>(i) * step, 0.0, 0.0};
    }
    const std::vector<PatternPoint> pattern = emission_pattern(vol, pc, qs);
    ResultTable pattern_table{"shg_pattern", {"q_x", "intensity"}, {}};
    for (const PatternPoint& p : pattern) pattern_table.rows.push_back({p.q[0], p.intensity});
    ResultTable scaling_table{"shg_scaling", {"exponent"}, {{scaling_exponent(pc, vol)}}};
    return {pattern_table, scaling_table};
}

std::vector<ResultTable> run_pulse(const ScenarioConfig& cfg) {
    const TimeGrid grid(real_param(cfg, "t_min"), real_param(cfg, "t_max"), size_param(cfg, "n"));
    InputCorrelation corr{grid, Eigen::MatrixXcd()};
    if (cfg.params.count("corr_file") > 0) {
        const std::string path = word_param(cfg, "corr_file");
        std::ifstream in(path);
        if (!in) throw IoError("pulse: cannot open correlation file '" + path + "'");
        corr = read_correlation_csv(in, grid);
    } else {
        corr = gaussian_schell_correlation(real_param(cfg, "T0"), real_param(cfg, "tc"), grid);
    }
    const DispersionConfig dispersion{real_param(cfg, "k2"), real_param(cfg, "z")};
    validate(dispersion);

    const IntensityProfile before = propagate_intensity(corr, DispersionConfig{dispersion.k2, 0.0});
    const IntensityProfile after = propagate_intensity(corr, dispersion);

    ResultTable in_table{"pulse_input_intensity", {"t", "intensity"}, {}};
    for (std::size_t i = 0; i < before.grid.size(); ++i) {
        in_table.rows.push_back({before.grid[i], before.values[i]});
    }
    ResultTable out_table{"pulse_output_intensity", {"t", "intensity"}, {}};
    for (std::size_t i = 0; i < after.grid.size(); ++i) {
        out_table.rows.push_back({after.grid[i], after.values[i]});
    }
    ResultTable summary{"pulse_summary",
                        {"width_in", "width_out", "energy_in", "energy_out"},
                        {{rms_width(before), rms_width(after), total_energy(before),
                          total_energy(after)}}};
    std::vector<ResultTable> tables{in_table, out_table, summary};

    if (flag_param(cfg, "check_factorization")) {
        // Extract the dominant column as a coherent envelope and compare the
        // two propagation routes.
        const auto n = static_cast<Eigen::Index>(grid.size());
        Eigen::Index anchor = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = corr.matrix(i, i).real();
            if (d > best) {
                best = d;
                anchor = i;
            }
        }
        PulseEnvelope envelope{grid, std::vector<std::complex<double>>(grid.size())};
        const double norm = std::sqrt(best);
        for (Eigen::Index i = 0; i < n; ++i) envelope.values[static_cast<std::size_t>(i)] =
            corr.matrix(i, anchor) / norm;
        const PulseEnvelope propagated = propagate_coherent(envelope, dispersion);
        if (!(propagated.grid == after.grid)) {
            throw NumericalDegeneracyError("pulse: the two propagation routes disagreed about the"
                                           " output window; widen the time grid");
        }
        double peak = 0.0;
        double dev = 0.0;
        for (std::size_t i = 0; i < after.values.size(); ++i) {
            peak = std::max(peak, after.values[i]);
            dev = std::max(dev, std::abs(after.values[i] - std::norm(propagated.values[i])));
        }
        tables.push_back(ResultTable{"pulse_consistency", {"max_relative_deviation"}, {{dev / peak}}});
    }
    return tables;
}

// ------------------------------------------------------------- outputs ----

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        if (c > 0) out << ',';
        out << table.column_names[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_value(row[c]);
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Minimal static line chart: first column is the abscissa, every further
// column one series.
void write_svg(const ResultTable& table, const std::filesystem::path& path) {
    constexpr double width = 800.0;
    constexpr double height = 600.0;
    constexpr double left = 80.0;
    constexpr double right = 640.0;
    constexpr double top = 50.0;
    constexpr double bottom = 540.0;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    double x_min = table.rows.front()[0];
    double x_max = x_min;
    double y_min = table.rows.front()[1];
    double y_max = y_min;
    for (const auto& row : table.rows) {
        x_min = std::min(x_min, row[0]);
        x_max = std::max(x_max, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            y_min = std::min(y_min, row[c]);
            y_max = std::max(y_max, row[c]);
        }
    }
    if (!(x_max > x_min)) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (!(y_max > y_min)) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    const auto map_x = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
    const auto map_y = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">"
        << table.name << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = x_min + (x_max - x_min) * tick / 4.0;
        const double fy = y_min + (y_max - y_min) * tick / 4.0;
        out << "<text x=\"" << format_coord(map_x(fx)) << "\" y=\"" << bottom + 20.0
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << format_tick(fx) << "</text>\n";
        out << "<text x=\"" << left - 8.0 << "\" y=\"" << format_coord(map_y(fy) + 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << format_tick(fy) << "</text>\n";
    }
    out << "<text x=\"" << 0.5 * (left + right) << "\" y=\"" << bottom + 40.0
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << table.column_names[0] << "</text>\n";

    for (std::size_t c = 1; c < table.column_names.size(); ++c) {
        const char* color = palette[(c - 1) % 6];
        if (table.rows.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                if (r > 0) out << ' ';
                out << format_coord(map_x(table.rows[r][0])) << ',' << format_coord(map_y(table.rows[r][c]));
            }
            out << "\"/>\n";
        } else {
            out << "<circle cx=\"" << format_coord(map_x(table.rows[0][0])) << "\" cy=\""
                << format_coord(map_y(table.rows[0][c])) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        }
        const double ly = top + 18.0 * static_cast<double>(c);
        out << "<rect x=\"" << right + 12.0 << "\" y=\"" << ly - 9.0
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << right + 30.0 << "\" y=\"" << ly + 2.0
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << table.column_names[c] << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::wolf: return "wolf";
        case Scenario::vacuum: return "vacuum";
        case Scenario::atoms: return "atoms";
        case Scenario::mirror: return "mirror";
        case Scenario::shg: return "shg";
        case Scenario::pulse: return "pulse";
    }
    return "?";
}

ScenarioConfig parse_config(const std::string& text) {
    std::vector<std::string> problems;
    std::map<std::string, std::string> raw;

    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string content = strip(line);
        if (content.empty()) continue;
        const std::size_t eq = content.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key = strip(content.substr(0, eq));
        const std::string value = strip(content.substr(eq + 1));
        if (key.empty()) {
            problems.push_back("line " + std::to_string(line_no) + ": empty key");
            continue;
        }
        if (raw.count(key) > 0) {
            problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            continue;
        }
        raw[key] = value;
    }

    const auto scenario_it = raw.find("scenario");
    if (scenario_it == raw.end()) {
        problems.push_back("missing required key 'scenario' (one of: " + known_scenarios() + ")");
    } else if (scenario_table().count(scenario_it->second) == 0) {
        problems.push_back("unknown scenario '" + scenario_it->second + "' (known: " + known_scenarios()
                           + ")");
    }
    if (scenario_it == raw.end() || scenario_table().count(scenario_it->second) == 0) {
        throw ValidationError("configuration invalid:\n  - " + problems.front());
    }

    ScenarioConfig cfg;
    cfg.scenario = scenario_table().at(scenario_it->second);
    cfg.output_dir = "out";

    const std::vector<KeyRule> rules = scenario_rules(cfg.scenario, raw, problems);
    for (const KeyRule& rule : rules) {
        const auto it = raw.find(rule.key);
        if (it == raw.end()) {
            if (rule.required) {
                problems.push_back("missing required key '" + rule.key + "' (" + type_name(rule.type)
                                   + "): " + rule.description);
            }
            continue;
        }
        check_value(rule, it->second, problems);
    }
    for (const auto& [key, value] : raw) {
        (void)value;
        if (key == "scenario" || key == "output_dir") continue;
        const bool known = std::any_of(rules.begin(), rules.end(),
                                       [&](const KeyRule& r) { return r.key == key; });
        if (!known) {
            problems.push_back("unknown key '" + key + "' for scenario '" + scenario_it->second + "'");
        }
    }

    if (!problems.empty()) {
        std::string message = "configuration invalid:";
        for (const auto& p : problems) message += "\n  - " + p;
        throw ValidationError(message);
    }

    if (raw.count("output_dir") > 0 && !raw.at("output_dir").empty()) {
        cfg.output_dir = raw.at("output_dir");
    }
    cfg.params = std::move(raw);
    cfg.params.erase("scenario");
    cfg.params.erase("output_dir");
    return cfg;
}

std::string schema_text(const std::string& scenario) {
    const auto it = scenario_table().find(scenario);
    if (it == scenario_table().end()) {
        throw ValidationError("unknown scenario '" + scenario + "' (known: " + known_scenarios() + ")");
    }
    std::vector<std::string> ignored;
    // Resolve the schema with every selector branch listed: run once with an
    // empty map for the base keys, then surface the conditional keys.
    std::ostringstream out;
    out << "scenario " << scenario << "\n";
    out << "  scenario = " << scenario << " (required)\n";
    out << "  output_dir = <path> (optional; overridden by --out)\n";
    std::map<std::string, std::string> probe;
    if (it->second == Scenario::wolf) probe["mu_model"] = "?";
    if (it->second == Scenario::shg) probe["kind"] = "?";
    std::vector<KeyRule> rules = scenario_rules(it->second, probe, ignored);
    if (it->second == Scenario::wolf) {
        for (const char* model : {"constant", "gaussian", "file"}) {
            probe["mu_model"] = model;
            for (auto& r : scenario_rules(it->second, probe, ignored)) {
                if (std::none_of(rules.begin(), rules.end(),
                                 [&](const KeyRule& k) { return k.key == r.key; })) {
                    r.description += " [mu_model = " + std::string(model) + "]";
                    r.required = false;
                    rules.push_back(r);
                }
            }
        }
    }
    if (it->second == Scenario::shg) {
        for (const char* kind : {"incoherent", "gaussian_schell"}) {
            probe["kind"] = kind;
            for (auto& r : scenario_rules(it->second, probe, ignored)) {
                if (std::none_of(rules.begin(), rules.end(),
                                 [&](const KeyRule& k) { return k.key == r.key; })) {
                    r.description += " [kind = " + std::string(kind) + "]";
                    r.required = false;
                    rules.push_back(r);
                }
            }
        }
    }
    if (it->second == Scenario::pulse) {
        probe["corr_file"] = "?";
        for (auto& r : scenario_rules(it->second, probe, ignored)) {
            if (std::none_of(rules.begin(), rules.end(),
                             [&](const KeyRule& k) { return k.key == r.key; })) {
                r.description += " [replaces T0/tc]";
                r.required = false;
                rules.push_back(r);
            }
        }
    }
    for (const KeyRule& rule : rules) {
        out << "  " << rule.key << " = <" << type_name(rule.type) << ">";
        if (rule.type == ValueType::word && !rule.allowed.empty()) {
            out << " {";
            for (std::size_t i = 0; i < rule.allowed.size(); ++i) {
                if (i > 0) out << " | ";
                out << rule.allowed[i];
            }
            out << "}";
        }
        out << (rule.required ? " (required)" : " (optional)");
        out << "  " << rule.description << "\n";
    }
    return out.str();
}

std::vector<ResultTable> run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::wolf: return run_wolf(cfg);
        case Scenario::vacuum: return run_vacuum(cfg);
        case Scenario::atoms: return run_atoms(cfg);
        case Scenario::mirror: return run_mirror(cfg);
        case Scenario::shg: return run_shg(cfg);
        case Scenario::pulse: return run_pulse(cfg);
    }
    throw InvalidParameterError("run_scenario: unknown scenario");
}

std::vector<std::filesystem::path> write_outputs(const std::vector<ResultTable>& tables,
                                                 const std::filesystem::path& dir, bool plot) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    for (const ResultTable& table : tables) {
        if (table.name.empty() || table.rows.empty() || table.column_names.size() < 1) {
            throw InvalidParameterError("write_outputs: malformed table");
        }
        for (const auto& row : table.rows) {
            if (row.size() != table.column_names.size()) {
                throw InvalidParameterError("write_outputs: ragged rows in table '" + table.name + "'");
            }
        }
        const std::filesystem::path csv = dir / (table.name + ".csv");
        write_csv(table, csv);
        written.push_back(csv);
        if (plot && table.column_names.size() >= 2) {
            const std::filesystem::path svg = dir / (table.name + ".svg");
            write_svg(table, svg);
            written.push_back(svg);
        }
    }
    return written;
}

} // namespace cohlab
