#include <doctest.h>

#include <cohlab/errors.hpp>
#include <cohlab/grid.hpp>
#include <cohlab/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace cohlab;

namespace {

// Independent reference: argmax over a dense grid, refined by a parabola
// through the three samples around the maximum (written out locally so the
// test does not depend on the library's own refinement).
double dense_peak(const std::vector<double>& v, const FrequencyGrid& g) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[k]) k = i;
    const double a = v[k - 1], b = v[k], c = v[k + 1];
    const double denom = a - 2.0 * b + c;
    const double offset = denom == 0.0 ? 0.0 : 0.5 * (a - c) / denom;
    return g[k] + offset * g.step();
}

double ramped_lorentzian(double w) {
    return (1.0 + 0.01 * w) * (0.5 / M_PI) / ((w - 5.0) * (w - 5.0) + 0.25);
}

} // namespace

TEST_CASE("lorentzian line has the textbook peak and half width") {
    const FrequencyGrid grid(90.0, 110.0, 2001); // puts 100 +/- 1 exactly on the grid
    const Spectrum s = lorentzian_spectrum(100.0, 1.0, grid);
    const double peak = 1.0 / M_PI;
    CHECK(s.values[1000] == doctest::Approx(peak).epsilon(1e-14));
    CHECK(s.values[1100] == doctest::Approx(peak / 2.0).epsilon(1e-13)); // omega0 + gamma
    CHECK(s.values[900] == doctest::Approx(peak / 2.0).epsilon(1e-13));  // omega0 - gamma
    for (double v : s.values) CHECK(v > 0.0);
}

TEST_CASE("lorentzian area approaches one on a wide window") {
    const FrequencyGrid grid(100.0 - 200.0, 100.0 + 200.0, 100001);
    const Spectrum s = lorentzian_spectrum(100.0, 1.0, grid);
    const double area = trapezoid(s.values, grid.step());
    CHECK(std::abs(area - 1.0) < 1e-2); // missing tails ~ 2/(pi * 200)
}

TEST_CASE("lorentzian rejects non-positive width") {
    const FrequencyGrid grid(0.0, 10.0, 101);
    CHECK_THROWS_AS(lorentzian_spectrum(5.0, 0.0, grid), InvalidParameterError);
    CHECK_THROWS_AS(lorentzian_spectrum(5.0, -1.0, grid), InvalidParameterError);
}

TEST_CASE("gaussian profile peaks at one and falls by exp(-1/2) at one sigma") {
    const FrequencyGrid grid(92.0, 108.0, 1601); // center and center +/- sigma on-grid
    const ComplexSamples g = gaussian_profile(100.0, 2.0, grid);
    CHECK(g.values[800].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.values[800].imag() == 0.0);
    CHECK(g.values[1000].real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        CHECK(g.values[i].imag() == 0.0);
        // mirror symmetry about the center
        const double mirror = g.values[g.values.size() - 1 - i].real();
        CHECK(g.values[i].real() == doctest::Approx(mirror).epsilon(1e-12));
    }
}

TEST_CASE("gaussian profile rejects non-positive width") {
    const FrequencyGrid grid(0.0, 10.0, 101);
    CHECK_THROWS_AS(gaussian_profile(5.0, 0.0, grid), InvalidParameterError);
    CHECK_THROWS_AS(gaussian_profile(5.0, -2.0, grid), InvalidParameterError);
}

TEST_CASE("peak frequency recovers a symmetric line center") {
    const FrequencyGrid grid(0.0, 10.0, 2001);
    const Spectrum s = lorentzian_spectrum(5.0, 0.5, grid);
    const double p = peak_frequency(s);
    CHECK(std::abs(p - 5.0) < 0.5 * grid.step());
    CHECK(std::abs(p - 5.0) < 1e-9); // symmetric spectrum: refinement lands on the center
}

TEST_CASE("peak frequency ignores positive rescaling") {
    const FrequencyGrid grid(0.0, 10.0, 2001);
    Spectrum s = lorentzian_spectrum(5.0, 0.5, grid);
    const double p1 = peak_frequency(s);
    for (double& v : s.values) v *= 7.25; // unrepresentable scale on purpose
    const double p2 = peak_frequency(s);
    CHECK(std::abs(p1 - p2) < 1e-10);
}

TEST_CASE("peak frequency of a tilted line matches a dense-grid argmax") {
    const FrequencyGrid grid(0.0, 10.0, 2001);
    Spectrum s = lorentzian_spectrum(5.0, 0.5, grid);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= 1.0 + 0.01 * grid[i];
    const double p = peak_frequency(s);

    const FrequencyGrid dense(0.0, 10.0, 1000001);
    std::vector<double> dv(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) dv[i] = ramped_lorentzian(dense[i]);
    const double reference = dense_peak(dv, dense);

    CHECK(p > 5.0); // the upward ramp drags the maximum above the line center
    CHECK(std::abs(p - reference) < 1e-6);
}

TEST_CASE("peak frequency rejects flat and boundary-peaked spectra") {
    const FrequencyGrid grid(0.0, 10.0, 101);
    Spectrum flat{grid, std::vector<double>(grid.size(), 1.0)};
    CHECK_THROWS_AS(peak_frequency(flat), BoundaryPeakError);

    Spectrum rising{grid, {}};
    rising.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rising.values[i] = static_cast<double>(i);
    CHECK_THROWS_AS(peak_frequency(rising), BoundaryPeakError);

    Spectrum falling = rising;
    std::reverse(falling.values.begin(), falling.values.end());
    CHECK_THROWS_AS(peak_frequency(falling), BoundaryPeakError);
}

TEST_CASE("centroid of a symmetric line sits at the center") {
    const FrequencyGrid grid(90.0, 110.0, 4001);
    const Spectrum s = lorentzian_spectrum(100.0, 1.0, grid);
    CHECK(std::abs(centroid_frequency(s) - 100.0) < 1e-10 * 100.0);
}

TEST_CASE("centroid of a single occupied bin is that bin") {
    const FrequencyGrid grid(0.0, 10.0, 11);
    Spectrum s{grid, std::vector<double>(11, 0.0)};
    s.values[7] = 3.5;
    CHECK(centroid_frequency(s) == grid[7]);
}

TEST_CASE("centroid under asymmetric truncation matches a dense quadrature") {
    const FrequencyGrid grid(4.0, 9.0, 2001); // window lopsided around the line at 5
    const Spectrum s = lorentzian_spectrum(5.0, 0.5, grid);
    const double c = centroid_frequency(s);

    const FrequencyGrid dense(4.0, 9.0, 1000001);
    std::vector<double> num(dense.size()), den(dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double w = dense[i];
        den[i] = (0.5 / M_PI) / ((w - 5.0) * (w - 5.0) + 0.25);
        num[i] = w * den[i];
    }
    const double reference = trapezoid(num, dense.step()) / trapezoid(den, dense.step());

    CHECK(c > 5.0); // more tail retained on the high side
    CHECK(std::abs(c - reference) < 1e-6);
}

TEST_CASE("centroid is covariant under a rigid frequency shift") {
    const FrequencyGrid grid(4.0, 9.0, 2001);
    const double c1 = centroid_frequency(lorentzian_spectrum(5.0, 0.5, grid));
    const FrequencyGrid shifted(4.0 + 7.0, 9.0 + 7.0, 2001);
    const double c2 = centroid_frequency(lorentzian_spectrum(12.0, 0.5, shifted));
    CHECK(std::abs((c2 - c1) - 7.0) < 1e-9);
}

TEST_CASE("centroid rejects spectra with no power") {
    const FrequencyGrid grid(0.0, 10.0, 101);
    Spectrum empty{grid, std::vector<double>(grid.size(), 0.0)};
    CHECK_THROWS_AS(centroid_frequency(empty), DegenerateSpectrumError);
}
