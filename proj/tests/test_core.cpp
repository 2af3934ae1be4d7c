#include "doctest.h"

#include "subdiv/catalog.hpp"
#include "subdiv/complex.hpp"
#include "subdiv/error.hpp"
#include "subdiv/matrix.hpp"
#include "subdiv/polynomial.hpp"

using namespace subdiv;

TEST_CASE("rationals round-trip as p/q strings")
{
    CHECK(to_pq_string(Rational(3)) == "3/1");
    CHECK(to_pq_string(Rational(-2, 6)) == "-1/3");
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("build_complex closes under faces")
{
    CHECK(face_vector(build_complex({{0, 1, 2}})) == std::vector<std::size_t>{3, 3, 1});
    CHECK(face_vector(build_complex({{0, 1}, {1, 2}})) == std::vector<std::size_t>{3, 2});
    CHECK(face_vector(build_complex({{0, 1, 2}, {2, 3}})) == std::vector<std::size_t>{4, 4, 1});
    CHECK_THROWS_AS(build_complex(std::span<const Simplex>{}), Error);

    const auto K = build_complex({{2, 0, 1}, {3, 2}});
    CHECK(K.simplices(1) == std::vector<Simplex>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    const auto again = build_complex(std::span<const Simplex>(K.maximal_simplices()));
    CHECK(again == K);
}

TEST_CASE("boundary matrices")
{
    const auto edge = catalog::simplex(1);
    const auto d = boundary_matrix(edge, 1);
    CHECK(d == RationalMatrix{{-1}, {1}});

    for (int n = 2; n <= 4; ++n)
    {
        const auto K = catalog::simplex(n);
        for (int k = 2; k <= n; ++k)
            CHECK((boundary_matrix(K, k - 1) * boundary_matrix(K, k)).is_zero());
    }
    CHECK_THROWS_AS(boundary_matrix(edge, 2), Error);
    CHECK_THROWS_AS(boundary_matrix(edge, 0), Error);
}

TEST_CASE("euler characteristic and Betti numbers")
{
    CHECK(euler_characteristic(catalog::simplex(2)) == 1);
    const auto bary = stellar_subdivide(catalog::simplex(2), {0, 1, 2});
    CHECK(face_vector(bary.fine) == std::vector<std::size_t>{4, 6, 3});
    CHECK(euler_characteristic(bary.fine) == 1);
    CHECK(betti_numbers(catalog::triangle_boundary()) == std::vector<std::size_t>{1, 1});
    CHECK(betti_numbers(catalog::simplex(3)) == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("star and link")
{
    const auto bary = stellar_subdivide(catalog::simplex(2), {0, 1, 2});
    const auto lk = link(bary.fine, {3});
    CHECK(face_vector(lk) == std::vector<std::size_t>{3, 3});

    const auto edge_sub = catalog::triangle_edge_stellar();
    const auto lk_edge = link(edge_sub.fine, {3});
    CHECK(face_vector(lk_edge) == std::vector<std::size_t>{3, 2});

    const auto edge = catalog::simplex(1);
    CHECK(star(edge, {0}) == edge);
    CHECK_THROWS_AS(star(edge, {5}), Error);
}

TEST_CASE("exact linear algebra")
{
    const RationalMatrix A{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank(A) == 2);
    const auto ker = kernel(A);
    CHECK(ker.cols() == 1);
    CHECK((A * ker).is_zero());
    CHECK(determinant(A) == 0);

    const RationalMatrix B{{2, 1}, {1, 3}};
    CHECK(determinant(B) == 5);
    CHECK(B * inverse(B) == RationalMatrix::identity(2));
    CHECK(is_positive_definite(B));
    CHECK_FALSE(is_positive_definite(RationalMatrix{{1, 2}, {2, 1}}));
    CHECK_THROWS_AS(inverse(A), Error);

    const RationalMatrix C{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}};
    CHECK(determinant(C) == Rational(1, 10) - Rational(1, 12));
    CHECK(same_column_span(RationalMatrix{{1, 0}, {0, 1}}, RationalMatrix{{1, 1}, {1, -1}}));
}

TEST_CASE("polynomial interpolation recovers a determinant polynomial")
{
    const Polynomial q = Rational(16) * Polynomial::linear_root(Rational(2, 9)) * Polynomial::linear_root(Rational(1, 3))
                         * Polynomial::linear_root(Rational(1, 3));
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= 3; ++i)
    {
        xs.emplace_back(i);
        ys.push_back(q(Rational(i)));
    }
    CHECK(interpolate(xs, ys) == q);

    const auto roots = real_roots(q);
    REQUIRE(roots.size() == 2);
    CHECK(*roots[0].exact == Rational(2, 9));
    CHECK(roots[0].multiplicity == 1);
    CHECK(*roots[1].exact == Rational(1, 3));
    CHECK(roots[1].multiplicity == 2);
}

TEST_CASE("real roots: irrational, repeated, none")
{
    const auto r2 = real_roots(Polynomial({-2, 0, 1}));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].value == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r2[1].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_FALSE(r2[1].exact);
    CHECK(r2[1].hi - r2[1].lo <= Rational(1, 1000000000000));

    const auto cube = real_roots(Polynomial({-1, 3, -3, 1}));
    REQUIRE(cube.size() == 1);
    CHECK(*cube[0].exact == 1);
    CHECK(cube[0].multiplicity == 3);

    CHECK(real_roots(Polynomial({1, 0, 1})).empty());
    CHECK_THROWS_AS(real_roots(Polynomial{}), Error);
}

TEST_CASE("nearest double")
{
    CHECK(to_double(Rational(1, 5)) == 0.2);
    CHECK(to_double(Rational(-1, 3)) == -1.0 / 3.0);
    CHECK(to_double(Rational(2, 9)) == 2.0 / 9.0);
    CHECK(to_double(Rational(0)) == 0.0);
    const Rational big(Integer("123456789012345678901234567890"), Integer("7"));
    CHECK(to_double(big) == doctest::Approx(123456789012345678901234567890.0 / 7.0).epsilon(1e-15));
    for (int n = 1; n < 200; ++n)
        for (int d = 1; d < 50; ++d)
            CHECK(to_double(Rational(n, d)) == static_cast<double>(n) / d);
}
