#include <random>
#include <sstream>

#include "doctest.h"
#include "homology.hpp"
#include "oracles.hpp"

using namespace cubeph;

namespace {

ElementaryCube cube(std::vector<int> base, std::vector<int> ext) { return ElementaryCube(base, ext); }

std::vector<ElementaryCube> full_square() { return faces_contained(cube({0, 0}, {1, 1})); }

std::vector<ElementaryCube> hollow_square() {
    auto all = full_square();
    std::erase_if(all, [](const ElementaryCube& c) { return c.dimension() == 2; });
    return all;
}

}  // namespace

TEST_CASE("GF(p) field axioms on random elements") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> pick(-5'000'000'000LL, 5'000'000'000LL);
    for (int i = 0; i < 2000; ++i) {
        const Mersenne31 a(pick(rng)), b(pick(rng)), c(pick(rng));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Mersenne31(0));
        CHECK(a + (-a) == Mersenne31(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == Mersenne31(1));
    }
    CHECK(Mersenne31(-1).value() == 2147483646u);
    CHECK_THROWS(Mersenne31(0).inverse());
    CHECK(GF2(3) == GF2(1));
}

TEST_CASE("boundary matrix of the full square") {
    const auto set = full_square();
    const auto b2 = boundary_matrix<Mersenne31>(set, 2);
    REQUIRE(b2.matrix.cols() == 1);
    REQUIRE(b2.matrix.rows() == 4);
    auto coeff = [&](const ElementaryCube& edge) {
        for (std::size_t i = 0; i < b2.row_cubes.size(); ++i)
            if (b2.row_cubes[i] == edge) return b2.matrix.at(i, 0).value_or(Mersenne31(0));
        FAIL("edge missing");
        return Mersenne31(0);
    };
    CHECK(coeff(cube({0, 0}, {1, 0})) == Mersenne31(1));   // [0,1]x{0}
    CHECK(coeff(cube({1, 0}, {0, 1})) == Mersenne31(1));   // {1}x[0,1]
    CHECK(coeff(cube({0, 1}, {1, 0})) == Mersenne31(-1));  // [0,1]x{1}
    CHECK(coeff(cube({0, 0}, {0, 1})) == Mersenne31(-1));  // {0}x[0,1]

    const std::vector<ElementaryCube> segment = faces_contained(cube({0, 0}, {1, 0}));
    const auto b1 = boundary_matrix<Mersenne31>(segment, 1);
    REQUIRE(b1.matrix.cols() == 1);
    CHECK(b1.matrix.at(1, 0) == Mersenne31(1));   // head (1,0)
    CHECK(b1.matrix.at(0, 0) == Mersenne31(-1));  // tail (0,0)

    const std::vector<ElementaryCube> points{cube({0, 0}, {0, 0})};
    CHECK(boundary_matrix<Mersenne31>(points, 1).matrix.cols() == 0);

    std::ostringstream os;
    b1.matrix.dump(os);
    CHECK(os.str() == "0 0 2147483646\n1 0 1\n");
}

TEST_CASE("boundary matrix rejects sets that are not face-closed") {
    const std::vector<ElementaryCube> lonely_edge{cube({0, 0}, {1, 0})};
    CHECK_THROWS_AS(boundary_matrix<Mersenne31>(lonely_edge, 1), NotFaceClosed);
}

TEST_CASE("rank") {
    CHECK(rank(SparseMatrix<Mersenne31>(3, 4)) == 0);
    CHECK(rank(SparseMatrix<Mersenne31>::identity(5)) == 5);
    CHECK(rank(boundary_matrix<Mersenne31>(hollow_square(), 1).matrix) == 3);
    CHECK(rank(boundary_matrix<Rational>(hollow_square(), 1).matrix) == 3);
}

TEST_CASE("Betti numbers of small sets") {
    CHECK(betti_numbers(full_square(), 2) == std::vector<std::int64_t>{1, 0, 0});
    CHECK(betti_numbers(hollow_square(), 2) == std::vector<std::int64_t>{1, 1, 0});
    const std::vector<ElementaryCube> two_points{cube({0, 0}, {0, 0}), cube({3, 1}, {0, 0})};
    CHECK(betti(two_points, 0) == 2);
    CHECK(betti(std::vector<ElementaryCube>{}, 0) == 0);

    // hollow unit cube in R^3: a 2-sphere
    auto shell = faces_contained(cube({0, 0, 0}, {1, 1, 1}));
    std::erase_if(shell, [](const ElementaryCube& c) { return c.dimension() == 3; });
    CHECK(betti_numbers(shell, 3) == std::vector<std::int64_t>{1, 0, 1, 0});
}

TEST_CASE("chain complex law, Euler-Poincare and components on random sets") {
    std::mt19937_64 rng(2024);
    for (int d = 2; d <= 4; ++d) {
        const int trials = d == 4 ? 25 : 60;
        for (int trial = 0; trial < trials; ++trial) {
            const int n = 1 + trial % 2;
            const double keep = d == 4 ? 0.02 : 0.15;
            const auto set = oracle::random_face_closed(rng, d, n, keep);
            std::int64_t euler_cubes = 0, euler_betti = 0;
            for (int q = 0; q <= d; ++q) {
                const auto count = static_cast<std::int64_t>(cubes_of_dimension(set, q).size());
                euler_cubes += (q % 2 ? -1 : 1) * count;
                euler_betti += (q % 2 ? -1 : 1) * betti(set, q);
            }
            CHECK(euler_cubes == euler_betti);
            CHECK(betti(set, 0) == oracle::components(set));

            for (int q = 1; q < d; ++q) {
                const auto lower = boundary_matrix<Mersenne31>(set, q);
                const auto upper = boundary_matrix<Mersenne31>(set, q + 1);
                // lower.col_cubes == upper.row_cubes, so compose directly
                for (std::size_t j = 0; j < upper.matrix.cols(); ++j) {
                    SparseMatrix<Mersenne31>::Column acc;
                    for (const auto& e : upper.matrix.column(j))
                        add_scaled<Mersenne31>(acc, lower.matrix.column(e.row), e.value);
                    CHECK(acc.empty());
                }
            }
        }
    }
}

TEST_CASE("Betti numbers agree between GF(2^31-1) and the rationals") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 2 + trial % 2;
        const auto set = oracle::random_face_closed(rng, d, 1 + trial % 2, 0.2);
        CHECK(betti_numbers(set, d, FieldKind::mersenne31) == betti_numbers(set, d, FieldKind::rational));
    }
}
