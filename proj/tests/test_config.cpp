#include <doctest.h>

#include "iwt/config.hpp"

using namespace iwt;

TEST_CASE("minimal config: only the overridden keys change") {
    const RunConfig defaults;
    const RunConfig c = parse_config("[physical]\nf = 0.5\n[grid]\nnk = 8\nnm = 8\n");
    CHECK(c.physical.f == 0.5);
    CHECK(c.grid.nk == 8);
    CHECK(c.physical.g == defaults.physical.g);
    CHECK(c.quad.kernel_norm == defaults.quad.kernel_norm);
    CHECK(c.hamlab.model == defaults.hamlab.model);
}

TEST_CASE("validation errors name the failed constraint") {
    CHECK_THROWS_WITH_AS(parse_config("[physical]\nf = -1\n"),
                         doctest::Contains("f must be >= 0"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[grid]\nk_min = 5\nk_max = 2\n"),
                         doctest::Contains("inverted"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[locality]\nfactors = 4 2\n"),
                         doctest::Contains("ascending"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[hamlab]\nmodel = vortex\n"),
                         doctest::Contains("unknown model"), ConfigError);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("[physical]\nzzz = 1\n"),
                         doctest::Contains("line 2: unknown key 'physical.zzz'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[nope]\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[physical]\nf : 1\n"), doctest::Contains("line 2"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[physical]\nf = abc\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("f = 1\n"), doctest::Contains("outside"), ConfigError);
}

TEST_CASE("effective config round-trips through emission and parsing") {
    RunConfig c;
    c.physical.f = 3.14159e-5;
    c.grid.k_min = 0.123456789012345;
    c.quad.kernel_norm = 2.0 / 3.0;
    c.scan.nx = 7;
    c.locality.factors = {1.0, 1.5, 4.0};
    c.law.x = -3.5000000001;
    c.hamlab.model = "rotating_internal_waves";
    c.hamlab.nr = 8;
    c.hamlab.mode = {1, 2, 3};
    c.run.output = "artifacts";
    c.validate();

    const std::string text = to_text(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(to_text(back) == text);
    // doubles survive exactly through the 17-digit emission
    CHECK(back.grid.k_min == c.grid.k_min);
    CHECK(back.law.x == c.law.x);
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig c = parse_config("# header comment\n\n[run]\n# inner\nseed = 7\n");
    CHECK(c.run.seed == 7u);
}

TEST_CASE("quadrature assembly honors the cutoff extension") {
    RunConfig c;
    c.quad.cutoff_extend = 2.0;
    const QuadratureSettings q = c.quadrature();
    CHECK(q.k_cut_min == doctest::Approx(c.grid.k_min / 2.0));
    CHECK(q.k_cut_max == doctest::Approx(c.grid.k_max * 2.0));
    CHECK(q.m_cut_max == doctest::Approx(c.grid.m_max * 2.0));
}
