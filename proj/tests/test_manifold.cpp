#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "iwt/dispersion.hpp"
#include "iwt/manifold.hpp"

using namespace iwt;

namespace {
PhysicalParams unit(double f = 0.0) { return {f, 1.0, 1.0, 1.0}; }
}  // namespace

TEST_CASE("solve_k2 inverts the f = 0 dispersion") {
    const auto r = solve_k2(2.0, 3.0, unit());
    REQUIRE(r.has_value());
    CHECK(r->k == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(r->jacobian == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("solve_k2 inertial limit and off-manifold signal") {
    const PhysicalParams p{0.5, 1.0, 1.0, 1.0};
    const auto at_f = solve_k2(0.5, 2.0, p);
    REQUIRE(at_f.has_value());
    CHECK(at_f->k == 0.0);
    CHECK(std::isinf(at_f->jacobian));
    CHECK_FALSE(solve_k2(0.49, 2.0, p).has_value());
    CHECK_THROWS_AS(solve_k2(1.0, 0.0, p), std::domain_error);
}

TEST_CASE("solve_k2 round-trips through the dispersion relation") {
    const PhysicalParams p{1e-4, 9.81, 1e-2, 1000.0};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double w = p.f * (1.0 + std::pow(10.0, u(rng)));
        const double m2 = std::pow(10.0, u(rng));
        const auto r = solve_k2(w, m2, p);
        REQUIRE(r.has_value());
        if (r->k == 0.0) continue;
        CHECK(omega({r->k, m2}, p) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("solve_k2 is linear in omega and |m2| at f = 0") {
    const PhysicalParams p = unit();
    const auto a = solve_k2(1.3, 2.0, p);
    const auto b = solve_k2(2.6, 2.0, p);
    const auto c = solve_k2(1.3, 4.0, p);
    CHECK(b->k == doctest::Approx(2.0 * a->k).epsilon(1e-15));
    CHECK(c->k == doctest::Approx(2.0 * a->k).epsilon(1e-15));
}

TEST_CASE("triangle kernel values") {
    const auto eq = triangle_kernel(1.0, 1.0, 1.0);
    REQUIRE(eq.has_value());
    CHECK(*eq == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

    const auto degenerate = triangle_kernel(2.0, 1.2, 0.8);
    REQUIRE(degenerate.has_value());
    CHECK(std::isinf(*degenerate));

    CHECK_FALSE(triangle_kernel(5.0, 1.0, 1.0).has_value());
    CHECK_THROWS_AS(triangle_kernel(-1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("triangle kernel is permutation symmetric") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int i = 0; i < 100; ++i) {
        double a = u(rng), b = u(rng), c = std::uniform_real_distribution<double>(
                                               std::fabs(a - b) * 1.001, (a + b) * 0.999)(rng);
        const double ref = *triangle_kernel(a, b, c);
        CHECK(*triangle_kernel(a, c, b) == ref);
        CHECK(*triangle_kernel(b, a, c) == ref);
        CHECK(*triangle_kernel(b, c, a) == ref);
        CHECK(*triangle_kernel(c, a, b) == ref);
        CHECK(*triangle_kernel(c, b, a) == ref);
    }
}

TEST_CASE("enumerate_manifold emits exact vertical resonance per branch") {
    const PhysicalParams p{0.05, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(0.1, 10.0, 9, 0.1, 10.0, 9);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector target = grid.node(4, 4);

    for (CollisionBranch branch : all_branches) {
        const auto points = enumerate_manifold(target, branch, p, quad);
        REQUIRE(!points.empty());
        for (const ResonantPoint& pt : points) {
            switch (branch) {
                case CollisionBranch::direct: CHECK(pt.m2 == target.m - pt.m1); break;
                case CollisionBranch::mirror1: CHECK(pt.m2 == pt.m1 - target.m); break;
                case CollisionBranch::mirror2: CHECK(pt.m2 == pt.m1 + target.m); break;
            }
            CHECK(pt.jacobian > 0.0);
            CHECK(std::isfinite(pt.jacobian));
            CHECK(pt.weight > 0.0);
        }
    }
}

TEST_CASE("enumerate_manifold frequency resonance to 1e-12 after solving") {
    const PhysicalParams p{1e-3, 2.0, 0.7, 1.3};
    SpectralGrid grid = make_log_grid(0.05, 50.0, 9, 0.05, 50.0, 9);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector target = grid.node(4, 4);
    const double w_t = omega(target, p);

    for (CollisionBranch branch : all_branches) {
        for (const ResonantPoint& pt : enumerate_manifold(target, branch, p, quad)) {
            const double w1 = omega({pt.k1, pt.m1}, p);
            const double w2 = omega({pt.k2, pt.m2}, p);
            double resonance = 0.0;
            switch (branch) {
                case CollisionBranch::direct: resonance = w_t - w1 - w2; break;
                case CollisionBranch::mirror1: resonance = w1 - w_t - w2; break;
                case CollisionBranch::mirror2: resonance = w2 - w1 - w_t; break;
            }
            CHECK(std::fabs(resonance) <= 1e-12 * (w_t + w1 + w2));
            // bookkept frequencies agree with recomputation
            CHECK(w1 == doctest::Approx(pt.omega1).epsilon(1e-13));
            CHECK(w2 == doctest::Approx(pt.omega2).epsilon(1e-13));
        }
    }
}

TEST_CASE("every emitted point satisfies the triangle inequality strictly") {
    const PhysicalParams p = unit();
    SpectralGrid grid = make_log_grid(0.2, 20.0, 7, 0.2, 20.0, 7);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector target = grid.node(3, 3);
    for (CollisionBranch branch : all_branches) {
        for (const ResonantPoint& pt : enumerate_manifold(target, branch, p, quad)) {
            CHECK(triangle_valid(target.k, pt.k1, pt.k2));
            CHECK(pt.delta > 0.0);
            CHECK(pt.inv_delta == 1.0 / pt.delta);
        }
    }
}

TEST_CASE("no resonance inside cutoffs yields an empty list") {
    // Target with omega barely above f: omega - f is below every partner
    // frequency reachable inside the k cutoffs, so the direct branch has no
    // solutions.
    const PhysicalParams p{1.0, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(1.0, 2.0, 3, 1.0, 2.0, 3);
    QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector target{1.0, 2.0};  // omega = sqrt(1 + 1/4) ~ 1.118, omega - f ~ 0.118
    const auto points = enumerate_manifold(target, CollisionBranch::direct, p, quad);
    CHECK(points.empty());
}

TEST_CASE("manifold point count is invariant under f = 0 rescaling") {
    const PhysicalParams p = unit();
    SpectralGrid grid = make_log_grid(0.25, 16.0, 7, 0.25, 16.0, 7);
    QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const double lambda = 4.0;  // power of two keeps the ratios bit-exact
    SpectralGrid scaled = make_log_grid(0.25 * lambda, 16.0 * lambda, 7, 0.25 * lambda,
                                        16.0 * lambda, 7);
    QuadratureSettings quad_scaled = QuadratureSettings::for_grid(scaled);

    const Wavevector a = grid.node(3, 4);
    const Wavevector b{a.k * lambda, a.m * lambda};
    for (CollisionBranch branch : all_branches) {
        const auto pa = enumerate_manifold(a, branch, p, quad);
        const auto pb = enumerate_manifold(b, branch, p, quad_scaled);
        CHECK(pa.size() == pb.size());
    }
}

TEST_CASE("manifold measure converges under refinement") {
    const PhysicalParams p{0.01, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(0.1, 10.0, 9, 0.1, 10.0, 9);
    const Wavevector target = grid.node(4, 4);
    for (CollisionBranch branch : all_branches) {
        double prev = 0.0;
        std::vector<double> measures;
        for (int level = 0; level <= 2; ++level) {
            const QuadratureSettings quad = QuadratureSettings::for_grid(grid, level);
            measures.push_back(manifold_measure(target, branch, p, quad));
        }
        prev = measures[1];
        CHECK(std::fabs(measures[2] / prev - 1.0) < 0.02);
    }
}

TEST_CASE("deterministic ordering: two enumerations are identical") {
    const PhysicalParams p{0.02, 1.0, 1.0, 1.0};
    SpectralGrid grid = make_log_grid(0.1, 10.0, 6, 0.1, 10.0, 6);
    const QuadratureSettings quad = QuadratureSettings::for_grid(grid);
    const Wavevector target = grid.node(2, 3);
    const auto a = enumerate_manifold(target, CollisionBranch::direct, p, quad);
    const auto b = enumerate_manifold(target, CollisionBranch::direct, p, quad);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].k1 == b[i].k1);
        CHECK(a[i].m1 == b[i].m1);
        CHECK(a[i].weight == b[i].weight);
    }
}

TEST_CASE("quadrature settings validation") {
    SpectralGrid grid = make_log_grid(1.0, 10.0, 4, 1.0, 10.0, 4);
    QuadratureSettings q = QuadratureSettings::for_grid(grid);
    q.refinement = -1;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = QuadratureSettings::for_grid(grid);
    q.kernel_norm = 0.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = QuadratureSettings::for_grid(grid);
    q.k_cut_max = 0.5;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}
