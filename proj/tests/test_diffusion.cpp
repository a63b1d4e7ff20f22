#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace hbdiff;

TEST_CASE("init_state is uniform on vertices, zero on hb-edges") {
    auto g = hbtest::example3();
    auto s = init_state(g);
    CHECK(s.t == 0);
    for (double a : s.alpha) CHECK(a == doctest::Approx(1.0 / 3.0));
    for (double e : s.epsilon) CHECK(e == 0.0);

    std::vector<HbEdge> edges(1);
    edges[0].members = {{0, 1.0}};
    HbGraph one(1, std::move(edges));
    auto s1 = init_state(one);
    REQUIRE(s1.alpha.size() == 1);
    CHECK(s1.alpha[0] == doctest::Approx(1.0));

    std::vector<HbEdge> disjoint(2);
    disjoint[0].members = {{0, 1.0}};
    disjoint[1].members = {{1, 1.0}};
    HbGraph bad(2, std::move(disjoint));
    CHECK_THROWS_AS(init_state(bad), std::invalid_argument);
}

TEST_CASE("half steps on the 3-vertex example") {
    auto g = hbtest::example3();
    auto sys = build_biased_system(g, BiasFunction::identity(), BiasFunction::identity());
    auto s = init_state(g);

    double r1 = half_step_v_to_e(s, sys);
    CHECK(r1 <= 1e-12);
    CHECK(s.epsilon[0] == doctest::Approx(0.5));
    CHECK(s.epsilon[1] == doctest::Approx(0.5));
    for (double a : s.alpha) CHECK(a == 0.0);  // exact zero, set not subtracted

    double r2 = half_step_e_to_v(s, sys);
    CHECK(r2 <= 1e-12);
    CHECK(s.alpha[0] == doctest::Approx(1.0 / 3.0));
    CHECK(s.alpha[1] == doctest::Approx(5.0 / 12.0));
    CHECK(s.alpha[2] == doctest::Approx(0.25));
    CHECK(s.t == 1);
}

TEST_CASE("single hb-edge sends all mass through and back") {
    std::vector<HbEdge> edges(1);
    edges[0].members = {{0, 1.0}, {1, 1.0}};
    HbGraph g(2, std::move(edges));
    auto sys = build_biased_system(g, BiasFunction::identity(), BiasFunction::identity());
    auto s = init_state(g);
    half_step_v_to_e(s, sys);
    CHECK(s.epsilon[0] == doctest::Approx(1.0));
    half_step_e_to_v(s, sys);
    CHECK(s.alpha[0] == doctest::Approx(0.5));
    CHECK(s.alpha[1] == doctest::Approx(0.5));

    // T is rank one: stationary after a single step
    auto r = run(g, sys, 5, 1e-15);
    CHECK(r.converged);
    CHECK(r.steps_done <= 2);
}

TEST_CASE("phase remainders vanish") {
    auto g = hbtest::random_small_graph(3, 20);
    auto sys = build_biased_system(g, BiasFunction::exponential(2), BiasFunction::power(0.2));
    auto s = init_state(g);
    auto alpha_before = s.alpha;
    half_step_v_to_e(s, sys);
    CHECK(phase_remainders(alpha_before, s.epsilon, sys) <= 1e-12);
}

TEST_CASE("run converges to weighted-degree stationary state under identity bias") {
    auto g = hbtest::example3();
    auto sys = build_biased_system(g, BiasFunction::identity(), BiasFunction::identity());
    auto r = run(g, sys, 10000, 1e-15);
    CHECK(r.converged);
    CHECK(r.max_residual <= 1e-9);
    CHECK(r.state.alpha[0] == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(r.state.alpha[1] == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(r.state.alpha[2] == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("conservation holds over long runs on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = hbtest::random_small_graph(seed, 40);
        auto sys = build_biased_system(g, BiasFunction::exponential(-2), BiasFunction::power(2));
        auto r = run(g, sys, 200);
        CHECK(r.steps_done == 200);
        CHECK(r.max_residual <= 1e-9);
        double total = 0.0;
        for (double a : r.state.alpha) total += a;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        double etotal = 0.0;
        for (double e : r.state.epsilon) etotal += e;
        CHECK(etotal == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("full step equals one multiplication by T") {
    auto g = hbtest::random_small_graph(11, 25);
    auto sys = build_biased_system(g, BiasFunction::power(2), BiasFunction::exponential(2));
    const std::size_t n = g.vertex_count();
    auto t = sys.transition_matrix();
    auto s = init_state(g);
    auto x = s.alpha;
    half_step_v_to_e(s, sys);
    half_step_e_to_v(s, sys);
    for (std::size_t k = 0; k < n; ++k) {
        double want = 0.0;
        for (std::size_t i = 0; i < n; ++i) want += x[i] * t[i * n + k];
        CHECK(std::abs(want - s.alpha[k]) <= 1e-12);
    }
}

TEST_CASE("stationary state via power iteration") {
    auto g = hbtest::example3();
    auto sys = build_biased_system(g, BiasFunction::identity(), BiasFunction::identity());
    auto st = stationary_by_power_iteration(sys);
    CHECK(st.pi_v[0] == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(st.pi_v[1] == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(st.pi_v[2] == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(st.pi_e[0] == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(st.pi_e[1] == doctest::Approx(0.4).epsilon(1e-9));

    // uniform on a single symmetric hb-edge
    std::vector<HbEdge> edges(1);
    edges[0].members = {{0, 1.0}, {1, 1.0}};
    HbGraph sym(2, std::move(edges));
    auto st2 = stationary_by_power_iteration(
        build_biased_system(sym, BiasFunction::exponential(2), BiasFunction::exponential(2)));
    CHECK(st2.pi_v[0] == doctest::Approx(0.5));
    CHECK(st2.pi_v[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(stationary_by_power_iteration(sys, 0.0, 3), ConvergenceError);
}

TEST_CASE("stationary state independent of the start distribution") {
    auto g = hbtest::random_small_graph(17, 30);
    auto sys = build_biased_system(g, BiasFunction::exponential(2), BiasFunction::power(0.2));
    auto st = stationary_by_power_iteration(sys, 1e-13, 100000);
    // restart from a lopsided distribution
    const std::size_t n = g.vertex_count();
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    std::vector<double> next;
    for (int it = 0; it < 100000; ++it) {
        sys.apply_transition(x, next);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::abs(next[i] - x[i]);
        x.swap(next);
        if (diff <= 1e-13) break;
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::abs(x[i] - st.pi_v[i]);
    CHECK(l1 <= 1e-9);
}

TEST_CASE("extract_ranking ordering and tie groups") {
    auto r = extract_ranking({0.4, 0.4, 0.2}, 1e-9);
    CHECK(r.order == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(r.group_of[0] == r.group_of[1]);
    CHECK(r.group_of[2] != r.group_of[0]);
    CHECK(r.group_count() == 2);

    auto strict = extract_ranking({0.5, 0.3, 0.1}, 1e-9);
    CHECK(strict.group_count() == 3);

    auto near_tie = extract_ranking({0.2 + 1e-12, 0.2}, 1e-10);
    CHECK(near_tie.group_count() == 1);

    CHECK_THROWS_AS(extract_ranking({0.1, std::nan("")}, 1e-9), std::invalid_argument);
}
