#include "cohlab/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohlab/spectral.hpp"
#include "cohlab/threads.hpp"

namespace cohlab {

namespace {

using Matrix16cd = Eigen::Matrix<std::complex<double>, 16, 16>;
using Vector16cd = Eigen::Matrix<std::complex<double>, 16, 1>;

// Kronecker product for the 4-dimensional pair space.  Basis order is
// {gg, eg, ge, ee}: atom A is the fast index, so an operator acting on atom A
// alone is kron(I2, op) and one acting on atom B alone is kron(op, I2).
Eigen::Matrix4d kron2(const Eigen::Matrix2d& slow, const Eigen::Matrix2d& fast) {
    Eigen::Matrix4d out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = slow(i, j) * fast;
        }
    }
    return out;
}

Matrix16cd kron4(const Eigen::Matrix4cd& slow, const Eigen::Matrix4cd& fast) {
    Matrix16cd out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.block<4, 4>(4 * i, 4 * j) = slow(i, j) * fast;
        }
    }
    return out;
}

// vec(A rho B) = (B^T kron A) vec(rho) for column-major vec.
Matrix16cd left_right(const Eigen::Matrix4cd& left, const Eigen::Matrix4cd& right) {
    return kron4(right.transpose(), left);
}

struct PairOperators {
    Eigen::Matrix4cd lower_A;
    Eigen::Matrix4cd lower_B;
    Eigen::Matrix4cd raise_A;
    Eigen::Matrix4cd raise_B;
};

PairOperators pair_operators() {
    Eigen::Matrix2d lower = Eigen::Matrix2d::Zero();
    lower(0, 1) = 1.0; // |g><e|
    const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
    PairOperators ops;
    ops.lower_A = kron2(eye, lower).cast<std::complex<double>>();
    ops.lower_B = kron2(lower, eye).cast<std::complex<double>>();
    ops.raise_A = ops.lower_A.adjoint();
    ops.raise_B = ops.lower_B.adjoint();
    return ops;
}

// gamma_XY (2 sY rho sX+ - sX+ sY rho - rho sX+ sY) as a superoperator.
Matrix16cd dissipator(const Eigen::Matrix4cd& lower_X, const Eigen::Matrix4cd& lower_Y, double rate) {
    const Eigen::Matrix4cd raise_X = lower_X.adjoint();
    const Eigen::Matrix4cd eye = Eigen::Matrix4cd::Identity();
    const Eigen::Matrix4cd number = raise_X * lower_Y;
    return rate * (2.0 * left_right(lower_Y, raise_X) - left_right(number, eye) - left_right(eye, number));
}

Matrix16cd liouvillian(const DrivenConfig& d, double omega_l, bool include_coupling,
                       const CollectiveParams& cp) {
    const PairOperators ops = pair_operators();
    const double delta_A = omega_l - d.pair.omega_A;
    const double delta_B = omega_l - d.pair.omega_B;
    const double coupling = include_coupling ? cp.omega_dd : 0.0;
    const double cross_rate = include_coupling ? cp.gamma_cross : 0.0;

    Eigen::Matrix4cd h = -delta_A * (ops.raise_A * ops.lower_A) - delta_B * (ops.raise_B * ops.lower_B)
                       + coupling * (ops.raise_A * ops.lower_B + ops.raise_B * ops.lower_A)
                       + 0.5 * d.rabi * (ops.raise_A + ops.lower_A + ops.raise_B + ops.lower_B);

    const Eigen::Matrix4cd eye = Eigen::Matrix4cd::Identity();
    const std::complex<double> minus_i(0.0, -1.0);
    Matrix16cd lv = minus_i * (left_right(h, eye) - left_right(eye, h));
    lv += dissipator(ops.lower_A, ops.lower_A, d.pair.gamma);
    lv += dissipator(ops.lower_B, ops.lower_B, d.pair.gamma);
    lv += dissipator(ops.lower_A, ops.lower_B, cross_rate);
    lv += dissipator(ops.lower_B, ops.lower_A, cross_rate);
    return lv;
}

void check_dipole(const Eigen::Vector3d& dipole, const char* name) {
    if (!dipole.allFinite()) {
        throw InvalidParameterError(std::string("AtomPairConfig: ") + name + " has non-finite components");
    }
    if (std::abs(dipole.norm() - 1.0) > 1e-9) {
        throw InvalidParameterError(std::string("AtomPairConfig: ") + name
                                    + " must be unit-normalized (|d| = " + std::to_string(dipole.norm()) + ")");
    }
}

} // namespace

void validate(const AtomPairConfig& pair) {
    check_dipole(pair.dipole_A, "dipole_A");
    check_dipole(pair.dipole_B, "dipole_B");
    if (!(pair.omega_A > 0.0) || !(pair.omega_B > 0.0)
        || !std::isfinite(pair.omega_A) || !std::isfinite(pair.omega_B)) {
        throw InvalidParameterError("AtomPairConfig: transition frequencies must be positive");
    }
    if (!(pair.gamma > 0.0) || !std::isfinite(pair.gamma)) {
        throw InvalidParameterError("AtomPairConfig: gamma must be positive");
    }
    if (distance(pair.pos_A, pair.pos_B) == 0.0) {
        throw CoincidenceError("AtomPairConfig: atoms must not coincide");
    }
}

CollectiveParams collective_params(const AtomPairConfig& pair) {
    validate(pair);
    const double mean_omega = 0.5 * (pair.omega_A + pair.omega_B);
    const GreenTensor chi = chi_tensor(pair.pos_A, pair.pos_B, mean_omega);
    const double scale = mean_omega * mean_omega * mean_omega;
    const double imag_proj = pair.dipole_A.dot(chi.entries.imag() * pair.dipole_B);
    const double real_proj = pair.dipole_A.dot(chi.entries.real() * pair.dipole_B);

    CollectiveParams cp;
    cp.gamma_cross = pair.gamma * imag_proj / ((2.0 / 3.0) * scale);
    cp.omega_dd = pair.gamma * real_proj / ((4.0 / 3.0) * scale);
    if (std::abs(cp.gamma_cross) > pair.gamma * (1.0 + 1e-12)) {
        throw NumericalDegeneracyError("collective_params: |gamma_cross| exceeded gamma");
    }
    // Round-off at near coincidence may graze the physical bound; clamp.
    cp.gamma_cross = std::clamp(cp.gamma_cross, -pair.gamma, pair.gamma);
    return cp;
}

CollectiveRates collective_rates(const AtomPairConfig& pair) {
    if (pair.omega_A != pair.omega_B) {
        throw NotApplicableError("collective_rates: defined only for identical atoms (omega_A == omega_B)");
    }
    const CollectiveParams cp = collective_params(pair);
    CollectiveRates rates;
    rates.gamma_plus = pair.gamma + cp.gamma_cross;
    // Writing the second rate as 2*gamma minus the first keeps the sum rule
    // gamma_plus + gamma_minus == 2*gamma exact in floating point.
    rates.gamma_minus = 2.0 * pair.gamma - rates.gamma_plus;
    return rates;
}

Spectrum emission_spectrum_pair(const AtomPairConfig& pair, const FrequencyGrid& grid) {
    if (pair.omega_A != pair.omega_B) {
        throw NotApplicableError("emission_spectrum_pair: defined only for identical atoms");
    }
    const double omega0 = pair.omega_A;
    const double gamma = pair.gamma;
    if (grid.omega_min() > omega0 - 10.0 * gamma || grid.omega_max() < omega0 + 10.0 * gamma) {
        throw InvalidParameterError("emission_spectrum_pair: grid must span omega0 +- 10*gamma");
    }
    const CollectiveParams cp = collective_params(pair);
    const CollectiveRates rates = collective_rates(pair);
    if (!(rates.gamma_minus > 0.0)) {
        throw DegenerateLinewidthError("emission_spectrum_pair: antisymmetric linewidth collapsed to "
                                       + std::to_string(rates.gamma_minus));
    }
    const Spectrum plus = lorentzian_spectrum(omega0 + cp.omega_dd, rates.gamma_plus, grid);
    const Spectrum minus = lorentzian_spectrum(omega0 - cp.omega_dd, rates.gamma_minus, grid);
    Spectrum out{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = 0.5 * (plus.values[i] + minus.values[i]);
    }
    return out;
}

void validate(const DrivenConfig& d) {
    validate(d.pair);
    if (!(d.rabi > 0.0) || !std::isfinite(d.rabi)) {
        throw InvalidParameterError("DrivenConfig: rabi must be positive");
    }
}

void validate(const DensityMatrix4& rho) {
    const Eigen::Matrix4cd& m = rho.entries;
    if (!m.allFinite()) throw NumericalDegeneracyError("DensityMatrix4: non-finite entries");
    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10) {
        throw NumericalDegeneracyError("DensityMatrix4: Hermiticity violated by " + std::to_string(herm_dev));
    }
    const std::complex<double> tr = m.trace();
    if (std::abs(tr - std::complex<double>(1.0, 0.0)) > 1e-10) {
        throw NumericalDegeneracyError("DensityMatrix4: trace deviates from 1");
    }
    const Eigen::Matrix4cd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9) {
        throw NumericalDegeneracyError("DensityMatrix4: negative population "
                                       + std::to_string(solver.eigenvalues().minCoeff()));
    }
}

DensityMatrix4 steady_state(const DrivenConfig& d, double omega_l, bool include_coupling) {
    validate(d);
    if (!std::isfinite(omega_l)) throw InvalidParameterError("steady_state: omega_l must be finite");
    const CollectiveParams cp = collective_params(d.pair);
    const Matrix16cd lv = liouvillian(d, omega_l, include_coupling, cp);

    Matrix16cd system = lv;
    Vector16cd rhs = Vector16cd::Zero();
    // Replace the first row with Tr(rho) = 1; diagonal entries of the
    // column-major vectorization sit at stride 5.
    system.row(0).setZero();
    for (int k = 0; k < 4; ++k) system(0, 5 * k) = 1.0;
    rhs(0) = 1.0;

    const Vector16cd solution = system.partialPivLu().solve(rhs);
    if (!solution.allFinite()) {
        throw NumericalDegeneracyError("steady_state: linear solve produced non-finite entries");
    }
    // The full Liouvillian (including the replaced row) must annihilate the
    // solution; a large residual flags a defective system.
    const double residual = (lv * solution).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, lv.cwiseAbs().maxCoeff());
    if (residual > 1e-8 * scale) {
        throw NumericalDegeneracyError("steady_state: stationarity residual " + std::to_string(residual));
    }

    DensityMatrix4 rho;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) {
            rho.entries(i, j) = solution(i + 4 * j);
        }
    }
    validate(rho);
    return rho;
}

std::vector<ScanPoint> excitation_scan(const DrivenConfig& d, bool include_coupling) {
    validate(d);
    const double min_omega = std::min(d.pair.omega_A, d.pair.omega_B);
    const double max_omega = std::max(d.pair.omega_A, d.pair.omega_B);
    const double mean_omega = 0.5 * (d.pair.omega_A + d.pair.omega_B);
    if (d.laser_grid.omega_min() > min_omega - 10.0 * d.pair.gamma
        || d.laser_grid.omega_max() < max_omega + 10.0 * d.pair.gamma) {
        throw InvalidParameterError("excitation_scan: laser grid must span both transitions +- 10*gamma");
    }
    if (d.laser_grid.omega_min() > mean_omega || d.laser_grid.omega_max() < mean_omega) {
        throw InvalidParameterError("excitation_scan: laser grid must include the mean frequency");
    }
    const CollectiveParams cp = collective_params(d.pair);
    const double cross = include_coupling ? cp.gamma_cross : 0.0;

    std::vector<ScanPoint> scan(d.laser_grid.size());
    parallel_for(d.laser_grid.size(), [&](std::size_t i) {
        const double omega_l = d.laser_grid[i];
        const DensityMatrix4 rho = steady_state(d, omega_l, include_coupling);
        const Eigen::Matrix4cd& m = rho.entries;
        const double n_A = m(1, 1).real() + m(3, 3).real();
        const double n_B = m(2, 2).real() + m(3, 3).real();
        // <s+_A s-_B> = Tr(rho |eg><ge|) = <ge| rho |eg>.
        const double cross_coherence = m(2, 1).real();
        scan[i] = ScanPoint{omega_l, m(3, 3).real(),
                            2.0 * d.pair.gamma * (n_A + n_B) + 4.0 * cross * cross_coherence};
    });
    return scan;
}

MirrorRates mirror_modified_rates(double b, MirrorOrientation orientation, double omega, double gamma) {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw InvalidParameterError("mirror_modified_rates: distance b must be positive");
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidParameterError("mirror_modified_rates: omega must be positive");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameterError("mirror_modified_rates: gamma must be positive");
    }
    // Mirror occupies z < 0; the atom sits at +b on the normal and its image
    // at -b.  A parallel dipole images reversed, a perpendicular one upright.
    const Position3 atom{0.0, 0.0, b};
    const Position3 image{0.0, 0.0, -b};
    const Eigen::Vector3d dipole = (orientation == MirrorOrientation::parallel)
                                       ? Eigen::Vector3d::UnitX()
                                       : Eigen::Vector3d::UnitZ();
    const double image_sign = (orientation == MirrorOrientation::parallel) ? -1.0 : 1.0;
    const Eigen::Vector3d image_dipole = image_sign * dipole;

    const GreenTensor chi = chi_tensor(atom, image, omega);
    const double scale = omega * omega * omega;
    const double imag_proj = dipole.dot(chi.entries.imag() * image_dipole) / ((2.0 / 3.0) * scale);
    const double real_proj = dipole.dot(chi.entries.real() * image_dipole) / ((4.0 / 3.0) * scale);

    MirrorRates out;
    out.rate = gamma * (1.0 + imag_proj);
    out.shift = -0.5 * gamma * real_proj;
    // Interference can only modulate within [0, 2*gamma]; round-off may graze it.
    if (out.rate < -1e-9 * gamma || out.rate > (2.0 + 1e-9) * gamma) {
        throw NumericalDegeneracyError("mirror_modified_rates: rate outside [0, 2*gamma]");
    }
    out.rate = std::clamp(out.rate, 0.0, 2.0 * gamma);
    return out;
}

} // namespace cohlab
