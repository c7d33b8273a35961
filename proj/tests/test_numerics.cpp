// SPDX-License-Identifier: Apache-2.0
//
// oamtopo - reconfigurable antenna array topologies for OAM beam links
// Copyright (C) 2026 oamtopo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "oamtopo/numerics.hpp"
#include "test_util.hpp"

using namespace oamtopo;

TEST_CASE("bessel_j at the origin") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(-5, 0.0) == 0.0);
}

TEST_CASE("bessel_j_integral trivial values") {
    CHECK(bessel_j_integral(0, 0.0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(bessel_j_integral(1, 0.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(bessel_j_integral(2, 1.5) == Catch::Approx(bessel_j(2, 1.5)).margin(1e-8));
}

TEST_CASE("first zero of J0 located by bisection against the quadrature oracle") {
    double lo = 2.0, hi = 3.0; // J0(2) > 0 > J0(3)
    REQUIRE(bessel_j_integral(0, lo) > 0.0);
    REQUIRE(bessel_j_integral(0, hi) < 0.0);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (bessel_j_integral(0, mid) > 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    CHECK(root == Catch::Approx(2.404825557695773).margin(1e-10)); // frozen from this oracle
    CHECK(std::abs(bessel_j(0, root)) < 1e-10);
}

TEST_CASE("bessel_j agrees with the quadrature oracle on the |l|<=8 grid") {
    for (int l = -8; l <= 8; ++l)
        for (double a : {0.1, 1.0, 5.0, 20.0}) {
            CAPTURE(l, a);
            CHECK(std::abs(bessel_j(l, a) - bessel_j_integral(l, a)) < 1e-8);
        }
}

TEST_CASE("three-term recurrence J_{l-1} + J_{l+1} = (2l/a) J_l") {
    for (int l = -8; l <= 8; ++l)
        for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 100.0}) {
            const double lhs = bessel_j(l - 1, a) + bessel_j(l + 1, a);
            const double rhs = 2.0 * l / a * bessel_j(l, a);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
            CAPTURE(l, a);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
        }
}

TEST_CASE("bessel_j reflection symmetries") {
    for (int l : {1, 2, 5, 9})
        for (double a : {0.3, 2.0, 7.5}) {
            CHECK(bessel_j(-l, a) == Catch::Approx((l % 2 ? -1.0 : 1.0) * bessel_j(l, a)));
            CHECK(bessel_j(l, -a) == Catch::Approx((l % 2 ? -1.0 : 1.0) * bessel_j(l, a)));
        }
}

TEST_CASE("bessel_j large-argument sanity against the leading asymptotic") {
    const double x = 1e4;
    const double asym = std::sqrt(2.0 / (kPi * x)) * std::cos(x - kPi / 4.0);
    CHECK(std::abs(bessel_j(0, x) - asym) < 1e-6);
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(bessel_j(65, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, 1.1e4), std::domain_error);
    CHECK_THROWS_AS(bessel_j_integral(65, 1.0), std::domain_error);
}

TEST_CASE("zf_pseudo_inverse on identities and scalings") {
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    const ComplexMatrix g = zf_pseudo_inverse(i3);
    CHECK(max_abs_diff(g, i3) < 1e-14);

    ComplexMatrix two = ComplexMatrix::identity(2);
    two(0, 0) = two(1, 1) = 2.0;
    const ComplexMatrix half = zf_pseudo_inverse(two);
    CHECK(std::abs(half(0, 0) - cplx{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(half(1, 0)) < 1e-14);
}

TEST_CASE("zf_pseudo_inverse residual on random tall matrices") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        for (auto [m, n] : {std::pair<int, int>{4, 2}, {8, 5}, {16, 8}}) {
            const ComplexMatrix h = test::random_matrix(m, n, seed * 100 + m);
            const ComplexMatrix g = zf_pseudo_inverse(h);
            CHECK(max_abs_diff(g * h, ComplexMatrix::identity(n)) < 1e-9);
        }
    }
}

TEST_CASE("zf_noise_amplification values and the row-norm route") {
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    for (std::size_t s = 0; s < 3; ++s) CHECK(zf_noise_amplification(i3, s) == Catch::Approx(1.0));

    ComplexMatrix two = ComplexMatrix::identity(2);
    two(0, 0) = two(1, 1) = 2.0;
    CHECK(zf_noise_amplification(two, 0) == Catch::Approx(0.25));

    const ComplexMatrix h = test::random_matrix(4, 2, 42);
    const ComplexMatrix g = zf_pseudo_inverse(h);
    for (std::size_t s = 0; s < 2; ++s) {
        double row_norm2 = 0.0;
        for (std::size_t c = 0; c < 4; ++c) row_norm2 += std::norm(g(s, c));
        CHECK(zf_noise_amplification(h, s) == Catch::Approx(row_norm2).epsilon(1e-10));
    }
}

TEST_CASE("zf_noise_amplification is invariant under left-unitary factors") {
    const ComplexMatrix h = test::random_matrix(8, 4, 7);
    const ComplexMatrix u = test::random_unitary(8, 11);
    const ComplexMatrix uh = u * h;
    for (std::size_t s = 0; s < 4; ++s)
        CHECK(zf_noise_amplification(uh, s) ==
              Catch::Approx(zf_noise_amplification(h, s)).epsilon(1e-9));
}

TEST_CASE("singular and ill-conditioned inputs raise with a condition estimate") {
    ComplexMatrix h(4, 2); // duplicate columns -> rank 1
    for (std::size_t r = 0; r < 4; ++r) h(r, 0) = h(r, 1) = cplx{1.0 + static_cast<double>(r), 0.5};
    CHECK_THROWS_AS(zf_pseudo_inverse(h), singular_matrix_error);

    ComplexMatrix bad = ComplexMatrix::identity(2);
    bad(1, 1) = 1e-8; // Gram condition ~ 1e16
    try {
        zf_pseudo_inverse(bad);
        FAIL("expected singular_matrix_error");
    } catch (const singular_matrix_error& e) {
        CHECK(e.condition() > 1e12);
    }
    CHECK_NOTHROW(zf_pseudo_inverse(bad, 1e18)); // looser bound admits it
    CHECK_THROWS_AS(zf_pseudo_inverse(test::random_matrix(2, 4, 1)), std::invalid_argument);
}

TEST_CASE("gram matrices of full-rank inputs are HPD and factor cleanly") {
    const ComplexMatrix h = test::random_matrix(6, 6, 99);
    const ComplexMatrix a = gram(h);
    const HermitianFactor f = factor_hpd(a, 1e14);
    CHECK(f.condition > 1.0);
    // solve residual
    std::vector<cplx> b(6, cplx{1.0, -0.5});
    const std::vector<cplx> x = f.solve_refined(a, b);
    const std::vector<cplx> ax = a.apply(x);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(ax[i] - b[i]) < 1e-10);
}
