#pragma once

#include <Eigen/Dense>

#include "cohlab/errors.hpp"

namespace cohlab {

struct Position3 {
    double x;
    double y;
    double z;
};

double distance(const Position3& a, const Position3& b);

// Free-space field susceptibility between two points (units c = 1).  With
// u = rA - rB, r = |u|, n = u/r the closed form is
//   chi_ij = e^{i w r}/r [ w^2 (d_ij - n_i n_j) + (d_ij - 3 n_i n_j)(i w / r - 1/r^2) ],
// i.e. (w^2 d_ij + d^2/du_i du_j) applied to e^{i w r}/r.  The overall sign is
// the one that makes the coincidence limit of the imaginary part positive.
struct GreenTensor {
    Eigen::Matrix3cd entries;
    double separation;
    double omega;
};

// Throws CoincidenceError at rA == rB and InvalidParameterError for omega <= 0.
GreenTensor chi_tensor(const Position3& rA, const Position3& rB, double omega);

// Coincidence limit of Im chi: (2/3) omega^3 times the identity (omega > 0).
Eigen::Matrix3d coincidence_imag(double omega);

// Vacuum cross-spectral density tensor: 2 Im chi for omega > 0, the zero
// matrix for omega <= 0 (no negative-frequency vacuum fluctuations).  The
// coincidence point is handled through coincidence_imag.
Eigen::Matrix3d vacuum_csd(const Position3& r1, const Position3& r2, double omega);

// Im chi_ij normalized by its coincidence diagonal (2/3) omega^3, so the
// tensor approaches the identity as the separation vanishes.
Eigen::Matrix3d normalized_vacuum_coherence(const Position3& r1, const Position3& r2, double omega);

} // namespace cohlab
