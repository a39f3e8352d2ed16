#include <random>

#include "doctest.h"
#include "homology.hpp"
#include "oracles.hpp"
#include "persistence.hpp"

using namespace cubeph;

namespace {

ElementaryCube cube(std::vector<int> base, std::vector<int> ext) { return ElementaryCube(base, ext); }

std::int64_t count_q(const std::vector<ElementaryCube>& set, int q) {
    return std::count_if(set.begin(), set.end(), [q](const ElementaryCube& c) { return c.dimension() == q; });
}

// X(t) ⊂ Y(t): raise some births of y and repair monotonicity.
Filtration nested_inside(const Filtration& y, std::mt19937_64& rng) {
    Filtration x = y;
    const auto& grid = x.grid();
    std::uniform_int_distribution<int> bump(0, 4);
    std::bernoulli_distribution drop(0.05);
    for (std::size_t i = 0; i < grid.size(); ++i)
        x.set_birth_at(i, drop(rng) ? kNever : y.birth_at(i) + bump(rng) / 10.0);
    for (int q = 1; q <= x.dim(); ++q)
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid.dimension(i) != q) continue;
            double t = x.birth_at(i);
            grid.for_each_face(i, [&](std::size_t f, int) { t = std::max(t, x.birth_at(f)); });
            x.set_birth_at(i, t);
        }
    return x;
}

}  // namespace

TEST_CASE("validate") {
    Filtration f(Window{1, 1});
    CHECK_FALSE(validate(f).has_value());  // everything never born

    f.set_birth(cube({0}, {0}), 0.0);
    f.set_birth(cube({1}, {0}), 0.0);
    f.set_birth(cube({0}, {1}), 1.0);
    CHECK_FALSE(validate(f).has_value());

    f.set_birth(cube({0}, {1}), 0.0);
    f.set_birth(cube({1}, {0}), 1.0);
    const auto v = validate(f);
    REQUIRE(v.has_value());
    CHECK(v->face == cube({1}, {0}));
    CHECK(v->cube == cube({0}, {1}));
    CHECK_THROWS_AS(compute_diagram(f), InvalidFiltration);

    Filtration negative(Window{1, 1});
    negative.set_birth(cube({0}, {0}), -1.0);
    CHECK(validate(negative).has_value());
}

TEST_CASE("sublevel sets") {
    const auto f = oracle::hollow_then_filled();
    CHECK(sublevel(f, 0.5).empty());
    const auto all = sublevel(f, 2.0);
    CHECK(all.size() == 9);
    const auto hollow = sublevel(f, 1.5);
    CHECK(hollow.size() == 8);
    CHECK(count_q(hollow, 2) == 0);
    CHECK(betti_numbers(hollow, 2) == std::vector<std::int64_t>{1, 1, 0});
}

TEST_CASE("persistent Betti numbers from ranks on the hollow-then-filled square") {
    const auto f = oracle::hollow_then_filled();
    CHECK(persistent_betti_direct(f, 1, 1.0, 1.5) == 1);
    CHECK(persistent_betti_direct(f, 1, 1.0, 2.0) == 0);
    CHECK(persistent_betti_direct(f, 0, 1.0, 5.0) == 1);
    CHECK(persistent_betti_direct(f, 0, 0.5, 5.0) == 0);
    CHECK_THROWS_AS(persistent_betti_direct(f, 1, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(persistent_betti_direct(f, 2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("diagram of the hollow-then-filled square") {
    const auto f = oracle::hollow_then_filled();

    // Recover the diagram from the rank route: with birth/death values in
    // {1, 2, inf}, masses of (0.5,1] x (1.5,2.5] and [0,1] x (t,inf] pin it down.
    const double s_lo = 0.5, s_hi = 1.0, t_lo = 1.5, t_hi = 2.5;
    const auto beta = [&](int q, double s, double t) { return persistent_betti_direct(f, q, s, t); };
    const auto box_mass = [&](int q) {
        return beta(q, s_hi, t_lo) - beta(q, s_hi, t_hi) + beta(q, s_lo, t_hi) - beta(q, s_lo, t_lo);
    };
    REQUIRE(box_mass(1) == 1);       // one pair in (0.5,1] x (1.5,2.5] → (1,2)
    REQUIRE(beta(1, 1.0, 2.5) == 0);  // nothing survives past 2.5
    REQUIRE(box_mass(0) == 0);
    REQUIRE(beta(0, 1.0, 2.5) == 1);  // one essential component born at 1

    const auto dgm = compute_diagram(f);
    REQUIRE(dgm.max_degree() == 1);
    REQUIRE(dgm.size(1) == 1);
    CHECK(dgm.pairs(1)[0] == BirthDeathPair{1.0, 2.0});
    REQUIRE(dgm.size(0) == 1);
    CHECK(dgm.pairs(0)[0] == BirthDeathPair{1.0, kNever});

    CHECK(quadrant_mass(dgm, 1, 1.0, 1.5) == 1);
    CHECK(quadrant_mass(dgm, 1, 0.5, 1.5) == 0);
    CHECK(quadrant_mass(dgm, 0, 0.0, 100.0) == 0);
    CHECK(quadrant_mass(dgm, 0, 1.0, 100.0) == static_cast<std::int64_t>(dgm.infinite_count(0)));
    CHECK(rectangle_mass(dgm, 1, 0.5, 1.0, 1.5, 2.5) == 1);
    CHECK(rectangle_mass(dgm, 1, 1.0, 1.0, 1.5, 2.5) == 0);
    CHECK(rectangle_mass(dgm, 1, 0.0, 1.0, 1.5, 10.0) == 1);
    CHECK(rectangle_mass(dgm, 1, 0.0, 2.0, 2.0, 10.0) == 0);
    CHECK(rectangle_mass(dgm, 0, 0.0, 2.0, 2.0, 1e300) == 0);  // essential classes never counted
    CHECK_THROWS_AS(rectangle_mass(dgm, 1, 1.0, 0.5, 1.5, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(rectangle_mass(dgm, 1, 0.5, 1.6, 1.5, 2.5), std::invalid_argument);
}

TEST_CASE("trivial diagrams") {
    Filtration empty(Window{2, 2});
    CHECK(compute_diagram(empty).size() == 0);

    Filtration single(Window{2, 1});
    single.set_birth(cube({0, 0}, {0, 0}), 0.0);
    const auto dgm = compute_diagram(single);
    REQUIRE(dgm.size() == 1);
    CHECK(dgm.pairs(0)[0] == BirthDeathPair{0.0, kNever});

    Filtration line(Window{1, 2});
    for (const auto& c : enumerate_cubes(Window{1, 2}, 0)) line.set_birth(c, 0.0);
    for (const auto& c : enumerate_cubes(Window{1, 2}, 1)) line.set_birth(c, 0.0);
    const auto flat = compute_diagram(line);  // zero-persistence pairs drop
    REQUIRE(flat.size() == 1);
    CHECK(flat.pairs(0)[0] == BirthDeathPair{0.0, kNever});
}

TEST_CASE("diagram ignores the tie-break order") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 2;
        const auto f = oracle::random_filtration(rng, d, 1 + trial % 3);
        const auto base = compute_diagram(f);
        for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(compute_diagram(f, DiagramOptions{seed}) == base);
    }
}

TEST_CASE("k-triangle lemma and persistent Betti properties on random filtrations") {
    std::mt19937_64 rng(5);
    const std::vector<int> offsets{0, 1, 2, 4, 10};
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 2;
        const int n = 1 + trial % 3;
        const auto f = oracle::random_filtration(rng, d, n);
        const auto dgm = compute_diagram(f);
        for (int q = 0; q < d; ++q) {
            CHECK(static_cast<std::int64_t>(dgm.size(q)) <= window_cube_count(Window{d, n}, q));
            for (int is = 1; is <= 9; is += 2) {
                const double s = is / 10.0;
                std::int64_t previous_t = std::numeric_limits<std::int64_t>::max();
                for (int off : offsets) {
                    const double t = (is + off) / 10.0;
                    const auto direct = persistent_betti_direct(f, q, s, t);
                    CHECK(quadrant_mass(dgm, q, s, t) == direct);
                    CHECK(direct <= previous_t);  // nonincreasing in t
                    previous_t = direct;
                    const auto xs = sublevel(f, s);
                    CHECK(direct <= betti(xs, q));
                    CHECK(betti(xs, q) <= count_q(xs, q));
                    if (off == 0) CHECK(direct == betti(xs, q));
                    if (is >= 3) CHECK(persistent_betti_direct(f, q, s - 0.2, t) <= direct);  // nondecreasing in s
                }
            }
        }
    }
}

TEST_CASE("difference bound for nested filtrations") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 2;
        const auto y = oracle::random_filtration(rng, d, 1 + trial % 2);
        const auto x = nested_inside(y, rng);
        REQUIRE_FALSE(validate(x).has_value());
        for (int q = 0; q < d; ++q) {
            for (auto [s, t] : {std::pair{0.3, 0.5}, std::pair{0.5, 0.5}, std::pair{0.6, 1.2}, std::pair{1.0, 1.4}}) {
                const auto xs = sublevel(x, s), ys = sublevel(y, s);
                const auto xt = sublevel(x, t), yt = sublevel(y, t);
                const auto bound = (count_q(ys, q) - count_q(xs, q)) + (count_q(yt, q + 1) - count_q(xt, q + 1));
                const auto diff = persistent_betti_direct(y, q, s, t) - persistent_betti_direct(x, q, s, t);
                CHECK(std::abs(diff) <= bound);
            }
        }
    }
}
