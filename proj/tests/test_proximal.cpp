#include <doctest.h>

#include "test_util.hpp"
#include "texseg/haar.hpp"
#include "texseg/proximal.hpp"

using namespace texseg;

TEST_CASE("shrink closed forms") {
    CHECK(shrink(3.0, 1.0) == doctest::Approx(2.0));
    CHECK(shrink(-0.5, 1.0) == doctest::Approx(0.0));
    CHECK(shrink(-3.0, 1.0) == doctest::Approx(-2.0));

    std::mt19937_64 rng(31);
    Image x = testutil::random_image(5, 5, rng);
    Image y = shrink(x, 0.0);
    for (size_t k = 0; k < x.size(); ++k) CHECK(y.data[k] == x.data[k]);
    CHECK_THROWS(shrink(x, -0.1));
}

TEST_CASE("shrink is a contraction") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        Image x = testutil::random_image(6, 6, rng);
        Image y = testutil::random_image(6, 6, rng);
        CHECK(norm2(shrink(x, 0.3) - shrink(y, 0.3)) <= norm2(x - y) + 1e-14);
    }
}

TEST_CASE("haar transform is orthonormal and invertible") {
    std::mt19937_64 rng(33);
    for (auto [r, c] : {std::pair{8, 8}, {16, 4}, {6, 6}, {5, 7}, {64, 64}}) {
        Image x = testutil::random_image(r, c, rng);
        Image w = haar_forward(x);
        CHECK(norm2(w) == doctest::Approx(norm2(x)).epsilon(1e-12));
        Image back = haar_inverse(w);
        for (size_t k = 0; k < x.size(); ++k)
            CHECK(back.data[k] == doctest::Approx(x.data[k]).epsilon(1e-10));
    }
    // odd dims degrade to the identity
    Image odd = testutil::random_image(5, 7, rng);
    CHECK(haar_levels(5, 7) == 0);
    Image w = haar_forward(odd);
    for (size_t k = 0; k < odd.size(); ++k) CHECK(w.data[k] == odd.data[k]);
}

TEST_CASE("cst trivial thresholds") {
    std::mt19937_64 rng(34);
    Image x = testutil::random_image(8, 8, rng);

    Image id = cst(x, 0.0);
    for (size_t k = 0; k < x.size(); ++k)
        CHECK(id.data[k] == doctest::Approx(x.data[k]).epsilon(1e-12));

    const double big = max_abs(haar_forward(x)) + 1.0;
    Image zero = cst(x, big);
    for (double v : zero.data) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("projection clips every coefficient to the ball") {
    std::mt19937_64 rng(35);
    Image x = testutil::random_image(8, 8, rng);
    const double nu = 0.5;
    Image eps = project_noise(x, NoiseBall{nu});
    Image coeff = haar_forward(eps);
    CHECK(max_abs(coeff) <= nu + 1e-10);
    // explicit coefficient-domain clip oracle
    Image wx = haar_forward(x);
    for (size_t k = 0; k < wx.size(); ++k) {
        const double clipped = std::min(nu, std::max(-nu, wx.data[k]));
        CHECK(coeff.data[k] == doctest::Approx(clipped).epsilon(1e-10));
    }
}

TEST_CASE("project_noise is idempotent and kills the trivial cases") {
    std::mt19937_64 rng(36);
    Image zero(8, 8);
    for (double v : project_noise(zero, NoiseBall{0.3}).data) CHECK(v == 0.0);

    Image x = testutil::random_image(8, 8, rng);
    for (double v : project_noise(x, NoiseBall{0.0}).data) CHECK(std::abs(v) < 1e-12);

    Image once = project_noise(x, NoiseBall{0.4});
    Image twice = project_noise(once, NoiseBall{0.4});
    CHECK(norm2(twice - once) < 1e-10);
}

TEST_CASE("clip_unit clamps to [0,1]") {
    Image x(1, 3);
    x(0, 0) = 0.5;
    x(0, 1) = -3.0;
    x(0, 2) = 7.0;
    Image y = clip_unit(x);
    CHECK(y(0, 0) == 0.5);
    CHECK(y(0, 1) == 0.0);
    CHECK(y(0, 2) == 1.0);
    Image ok(2, 2, 0.25);
    Image same = clip_unit(ok);
    for (size_t k = 0; k < ok.size(); ++k) CHECK(same.data[k] == ok.data[k]);
}

TEST_CASE("softmax_phases symmetry and frozen high-precision values") {
    Image s0(1, 1, 1.0), s1(1, 1, 1.0);
    PhaseSet p = softmax_phases({s0, s1}, 0.5);
    CHECK(p[0](0, 0) == doctest::Approx(0.5));
    CHECK(p[1](0, 0) == doctest::Approx(0.5));

    // scores (0, 1, 2) at xi = 1, independent high-precision evaluation
    Image a(1, 1, 0.0), b(1, 1, 1.0), c(1, 1, 2.0);
    PhaseSet q = softmax_phases({a, b, c}, 1.0);
    CHECK(q[0](0, 0) == doctest::Approx(0.66524095577482195).epsilon(1e-12));
    CHECK(q[1](0, 0) == doctest::Approx(0.24472847105479764).epsilon(1e-12));
    CHECK(q[2](0, 0) == doctest::Approx(0.09003057317038046).epsilon(1e-12));

    // huge gap at tiny xi saturates the winner
    Image lo(1, 1, 0.0), hi(1, 1, 10.0);
    PhaseSet r = softmax_phases({lo, hi}, 0.001);
    CHECK(r[0](0, 0) == doctest::Approx(1.0));
    CHECK(r[1](0, 0) < 1e-300);

    CHECK_THROWS(softmax_phases({a, b}, 0.0));
    CHECK_THROWS(softmax_phases({a}, 1.0));
}

TEST_CASE("softmax_phases simplex and shift invariance") {
    std::mt19937_64 rng(37);
    std::vector<Image> scores;
    for (int n = 0; n < 4; ++n) scores.push_back(testutil::random_image(6, 6, rng, 0, 5));
    PhaseSet p = softmax_phases(scores, 0.7);
    for (size_t k = 0; k < scores[0].size(); ++k) {
        double sum = 0;
        for (int n = 0; n < 4; ++n) {
            CHECK(p[n].data[k] > 0.0);
            sum += p[n].data[k];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // adding a per-pixel constant to every score leaves p unchanged
    Image off = testutil::random_image(6, 6, rng, -3, 3);
    std::vector<Image> shifted;
    for (int n = 0; n < 4; ++n) shifted.push_back(scores[n] + off);
    PhaseSet p2 = softmax_phases(shifted, 0.7);
    for (int n = 0; n < 4; ++n)
        for (size_t k = 0; k < off.size(); ++k)
            CHECK(p2[n].data[k] == doctest::Approx(p[n].data[k]).epsilon(1e-10));
}

TEST_CASE("softmax at small xi agrees with the per-pixel argmin") {
    std::mt19937_64 rng(38);
    std::vector<Image> scores;
    for (int n = 0; n < 3; ++n) scores.push_back(testutil::random_image(8, 8, rng, 0, 1));
    PhaseSet p = softmax_phases(scores, 1e-4);
    for (size_t k = 0; k < scores[0].size(); ++k) {
        int amin = 0, amax = 0;
        for (int n = 1; n < 3; ++n) {
            if (scores[n].data[k] < scores[amin].data[k]) amin = n;
            if (p[n].data[k] > p[amax].data[k]) amax = n;
        }
        CHECK(amin == amax);
    }
}
