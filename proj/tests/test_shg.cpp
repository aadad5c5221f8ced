#include <doctest.h>

#include <cohlab/errors.hpp>
#include <cohlab/shg.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace cohlab;

namespace {

const CrystalVolume kUnitCube{1.0, 1.0, 1.0};

// Brute-force Riemann evaluation of the normalized box integral
// (1/V) * integral over the volume of e^{i Q . r}, midpoint rule, 64^3 cells.
std::complex<double> riemann_box_factor(const CrystalVolume& vol, const MismatchVector& q) {
    const int n = 64;
    std::complex<double> acc(0.0, 0.0);
    for (int ix = 0; ix < n; ++ix) {
        const double x = (-0.5 + (ix + 0.5) / n) * vol.Lx;
        for (int iy = 0; iy < n; ++iy) {
            const double y = (-0.5 + (iy + 0.5) / n) * vol.Ly;
            double phase_xy = q[0] * x + q[1] * y;
            for (int iz = 0; iz < n; ++iz) {
                const double z = (-0.5 + (iz + 0.5) / n) * vol.Lz;
                acc += std::exp(std::complex<double>(0.0, phase_xy + q[2] * z));
            }
        }
    }
    return acc / static_cast<double>(n) / static_cast<double>(n) / static_cast<double>(n);
}

// One-dimensional closed form of the box-autocorrelation integral
//   integral_{-L}^{L} (L - |s|) e^{-s^2/lc^2} ds
// used as an independent reference for the Gaussian-correlated pump at Q = 0.
double autocorrelation_axis_closed_form(double L, double lc) {
    return L * std::sqrt(M_PI) * lc * std::erf(L / lc) -
           lc * lc * (1.0 - std::exp(-(L / lc) * (L / lc)));
}

} // namespace

TEST_CASE("the box factor is one at perfect matching and zero at the first null") {
    CHECK(phase_matching_coherent(kUnitCube, {0.0, 0.0, 0.0}) == std::complex<double>(1.0, 0.0));
    const std::complex<double> null =
        phase_matching_coherent(kUnitCube, {2.0 * M_PI / kUnitCube.Lx, 0.0, 0.0});
    CHECK(std::abs(null) < 1e-12);
}

TEST_CASE("the box factor matches a brute-force volume sum") {
    std::mt19937_64 rng(777ULL);
    std::uniform_real_distribution<double> comp(-3.0, 3.0);
    const CrystalVolume vol{1.0, 1.4, 0.8};
    for (int k = 0; k < 5; ++k) {
        const MismatchVector q{comp(rng), comp(rng), comp(rng)};
        const std::complex<double> fast = phase_matching_coherent(vol, q);
        const std::complex<double> slow = riemann_box_factor(vol, q);
        CHECK(std::abs(fast - slow) < 1e-3);
    }
}

TEST_CASE("the box factor is bounded by one and even in the mismatch") {
    std::mt19937_64 rng(778ULL);
    std::uniform_real_distribution<double> comp(-10.0, 10.0);
    for (int k = 0; k < 20; ++k) {
        const MismatchVector q{comp(rng), comp(rng), comp(rng)};
        const MismatchVector minus_q{-q[0], -q[1], -q[2]};
        const std::complex<double> f = phase_matching_coherent(kUnitCube, q);
        CHECK(std::abs(f) <= 1.0 + 1e-15);
        CHECK(f == phase_matching_coherent(kUnitCube, minus_q));
    }
}

TEST_CASE("pump correlation models evaluate pointwise") {
    const PumpCoherence gs = PumpCoherence::gaussian_schell(2.0, 0.5);
    CHECK(pump_correlation(gs, {0.0, 0.0, 0.0}) == doctest::Approx(8.0).epsilon(1e-15));
    // at one coherence length the correlation falls by e^{-1}
    CHECK(pump_correlation(gs, {0.5, 0.0, 0.0}) ==
          doctest::Approx(8.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(pump_correlation(gs, {0.3, 0.4, 0.0}) ==
          doctest::Approx(8.0 * std::exp(-1.0)).epsilon(1e-14));

    const PumpCoherence coh = PumpCoherence::coherent();
    CHECK(pump_correlation(coh, {12.0, -3.0, 0.5}) == 1.0);

    const PumpCoherence inc = PumpCoherence::incoherent_pump(2.5);
    CHECK_THROWS_AS(pump_correlation(inc, {0.0, 0.0, 0.0}), UnsupportedQueryError);
}

TEST_CASE("pump models validate their parameters") {
    CHECK_THROWS_AS(validate(PumpCoherence::gaussian_schell(0.0, 1.0)), InvalidParameterError);
    CHECK_THROWS_AS(validate(PumpCoherence::gaussian_schell(1.0, -1.0)), InvalidParameterError);
    CHECK_THROWS_AS(validate(PumpCoherence::incoherent_pump(0.0)), InvalidParameterError);
    CHECK_THROWS_AS(validate(CrystalVolume{0.0, 1.0, 1.0}), InvalidParameterError);
    CHECK_THROWS_AS(validate(CrystalVolume{1.0, -1.0, 1.0}), InvalidParameterError);
}

TEST_CASE("coherent pumping yields the squared box factor") {
    const CrystalVolume vol{2.0, 1.0, 1.5};
    const double v2 = vol.volume() * vol.volume();
    CHECK(shg_intensity(vol, PumpCoherence::coherent(), {0.0, 0.0, 0.0}) == v2);
    const MismatchVector q{1.3, -0.4, 2.2};
    const double direct = shg_intensity(vol, PumpCoherence::coherent(), q);
    const double factor = std::norm(phase_matching_coherent(vol, q));
    CHECK(direct == doctest::Approx(v2 * factor).epsilon(1e-13));
}

TEST_CASE("incoherent pumping is flat in the mismatch and linear in volume") {
    const PumpCoherence inc = PumpCoherence::incoherent_pump(2.5);
    const CrystalVolume vol{2.0, 1.0, 1.5};
    const double at_zero = shg_intensity(vol, inc, {0.0, 0.0, 0.0});
    const double off_axis = shg_intensity(vol, inc, {3.7, -1.2, 0.4});
    CHECK(at_zero == 2.5 * vol.volume());
    CHECK(off_axis == at_zero);
}

TEST_CASE("gaussian-correlated pumping matches the closed-form axis integral") {
    const PumpCoherence gs = PumpCoherence::gaussian_schell(std::sqrt(0.5), 0.4); // 2 I^2 = 1
    const double numeric = shg_intensity(kUnitCube, gs, {0.0, 0.0, 0.0});
    const double axis = autocorrelation_axis_closed_form(1.0, 0.4);
    const double reference = axis * axis * axis;
    CHECK(std::abs(numeric - reference) / reference < 2e-3);
}

TEST_CASE("gaussian-correlated intensity is even in the mismatch") {
    const PumpCoherence gs = PumpCoherence::gaussian_schell(std::sqrt(0.5), 0.5);
    const MismatchVector q{2.0, -1.0, 0.7};
    const MismatchVector minus_q{-2.0, 1.0, -0.7};
    CHECK(shg_intensity(kUnitCube, gs, q) == shg_intensity(kUnitCube, gs, minus_q));
}

TEST_CASE("long coherence lengths recover the coherent limit") {
    const PumpCoherence gs = PumpCoherence::gaussian_schell(std::sqrt(0.5), 100.0); // lc = 100 L
    const double numeric = shg_intensity(kUnitCube, gs, {0.0, 0.0, 0.0});
    const double coherent = shg_intensity(kUnitCube, PumpCoherence::coherent(), {0.0, 0.0, 0.0});
    CHECK(std::abs(numeric - coherent) / coherent < 0.01);
}

TEST_CASE("matched intensity grows monotonically with the coherence length") {
    double prev = 0.0;
    for (double lc : {0.125, 0.25, 0.5, 1.0, 100.0}) {
        const double value =
            shg_intensity(kUnitCube, PumpCoherence::gaussian_schell(std::sqrt(0.5), lc),
                          {0.0, 0.0, 0.0});
        CHECK(value > prev);
        prev = value;
    }
    CHECK(prev <= shg_intensity(kUnitCube, PumpCoherence::coherent(), {0.0, 0.0, 0.0}) * 1.001);
}

TEST_CASE("volume scaling exponents separate the coherence regimes") {
    CHECK(scaling_exponent(PumpCoherence::coherent(), kUnitCube) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(scaling_exponent(PumpCoherence::incoherent_pump(3.0), kUnitCube) ==
          doctest::Approx(1.0).epsilon(1e-9));
    const double partially =
        scaling_exponent(PumpCoherence::gaussian_schell(std::sqrt(0.5), 1.0 / 50.0), kUnitCube);
    CHECK(partially >= 1.0);
    CHECK(partially <= 1.1);
}

TEST_CASE("the difference-coordinate reduction agrees with a six-dimensional monte carlo") {
    const PumpCoherence gs = PumpCoherence::gaussian_schell(std::sqrt(0.5), 0.5);
    const MismatchVector q{2.0, 0.0, 0.0};
    const double value = shg_intensity(kUnitCube, gs, q);

    std::mt19937_64 rng(4242ULL);
    std::uniform_real_distribution<double> coord(-0.5, 0.5);
    const std::size_t samples = 2'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        double s[3], phase = 0.0, norm_sq = 0.0;
        for (int d = 0; d < 3; ++d) {
            const double rp = coord(rng);
            const double rpp = coord(rng);
            s[d] = rp - rpp;
            phase += q[d] * s[d];
            norm_sq += s[d] * s[d];
        }
        const double f = std::exp(-norm_sq / 0.25) * std::cos(phase); // W(s) cos(Q.s), 2 I^2 = 1
        sum += f;
        sum_sq += f * f;
    }
    const double mean = sum / samples;
    const double variance = (sum_sq / samples - mean * mean) / samples;
    const double sigma = std::sqrt(variance);
    CHECK(std::abs(value - mean) < 3.0 * sigma); // volume factor is one for the unit cube
}

TEST_CASE("quadrature refinement gives up on unresolvable correlation spikes") {
    const PumpCoherence spike = PumpCoherence::gaussian_schell(std::sqrt(0.5), 1e-8);
    CHECK_THROWS_AS(shg_intensity(kUnitCube, spike, {0.0, 0.0, 0.0}), ConvergenceError);
}

TEST_CASE("emission patterns are normalized and broaden as coherence shrinks") {
    std::vector<MismatchVector> qs;
    for (int i = 0; i <= 200; ++i) qs.push_back({i * 0.1, 0.0, 0.0});

    const std::vector<PatternPoint> coherent_pattern =
        emission_pattern(kUnitCube, PumpCoherence::coherent(), qs);
    REQUIRE(coherent_pattern.size() == qs.size());
    CHECK(coherent_pattern[0].intensity == 1.0);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double expected = std::norm(phase_matching_coherent(kUnitCube, qs[i]));
        CHECK(std::abs(coherent_pattern[i].intensity - expected) < 1e-6);
    }

    // half-width grows monotonically as the coherence length shrinks
    auto half_width = [&](double lc) {
        const std::vector<PatternPoint> p =
            emission_pattern(kUnitCube, PumpCoherence::gaussian_schell(std::sqrt(0.5), lc), qs);
        for (std::size_t i = 1; i < p.size(); ++i) {
            if (p[i].intensity < 0.5) {
                const double t = (0.5 - p[i - 1].intensity) / (p[i].intensity - p[i - 1].intensity);
                return p[i - 1].q[0] + t * (p[i].q[0] - p[i - 1].q[0]);
            }
        }
        return qs.back()[0];
    };
    double prev = 0.0;
    for (double lc : {1.0, 0.5, 0.25, 0.125}) {
        const double w = half_width(lc);
        CHECK(w > prev);
        prev = w;
    }

    // a delta-correlated pump radiates equally in every direction
    const std::vector<PatternPoint> flat =
        emission_pattern(kUnitCube, PumpCoherence::incoherent_pump(1.0), qs);
    for (const PatternPoint& p : flat) CHECK(p.intensity == 1.0);
}
