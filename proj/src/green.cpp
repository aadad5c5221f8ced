#include "cohlab/green.hpp"

#include <cmath>
#include <complex>

namespace cohlab {

double distance(const Position3& a, const Position3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

void check_finite(const Position3& p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw InvalidParameterError(std::string(what) + ": position components must be finite");
    }
}

} // namespace

GreenTensor chi_tensor(const Position3& rA, const Position3& rB, double omega) {
    check_finite(rA, "chi_tensor");
    check_finite(rB, "chi_tensor");
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidParameterError("chi_tensor: omega must be positive");
    }
    const double r = distance(rA, rB);
    if (r == 0.0) {
        throw CoincidenceError("chi_tensor: field points coincide; use coincidence_imag for the limit");
    }
    const double nx = (rA.x - rB.x) / r;
    const double ny = (rA.y - rB.y) / r;
    const double nz = (rA.z - rB.z) / r;
    const double n[3] = {nx, ny, nz};

    const std::complex<double> phase = std::exp(std::complex<double>(0.0, omega * r)) / r;
    const std::complex<double> far = omega * omega;                      // transverse 1/r term
    const std::complex<double> near(-1.0 / (r * r), omega / r);          // i w / r - 1/r^2

    GreenTensor g{Eigen::Matrix3cd::Zero(), r, omega};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double delta = (i == j) ? 1.0 : 0.0;
            const double nn = n[i] * n[j];
            g.entries(i, j) = phase * (far * (delta - nn) + near * (delta - 3.0 * nn));
        }
    }
    return g;
}

Eigen::Matrix3d coincidence_imag(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidParameterError("coincidence_imag: omega must be positive");
    }
    return (2.0 / 3.0) * omega * omega * omega * Eigen::Matrix3d::Identity();
}

Eigen::Matrix3d vacuum_csd(const Position3& r1, const Position3& r2, double omega) {
    check_finite(r1, "vacuum_csd");
    check_finite(r2, "vacuum_csd");
    if (!std::isfinite(omega)) throw InvalidParameterError("vacuum_csd: omega must be finite");
    if (omega <= 0.0) return Eigen::Matrix3d::Zero();
    if (distance(r1, r2) == 0.0) return 2.0 * coincidence_imag(omega);
    return 2.0 * chi_tensor(r1, r2, omega).entries.imag();
}

Eigen::Matrix3d normalized_vacuum_coherence(const Position3& r1, const Position3& r2, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidParameterError("normalized_vacuum_coherence: omega must be positive");
    }
    check_finite(r1, "normalized_vacuum_coherence");
    check_finite(r2, "normalized_vacuum_coherence");
    const double scale = (2.0 / 3.0) * omega * omega * omega;
    if (distance(r1, r2) == 0.0) return Eigen::Matrix3d::Identity();
    return chi_tensor(r1, r2, omega).entries.imag() / scale;
}

} // namespace cohlab
