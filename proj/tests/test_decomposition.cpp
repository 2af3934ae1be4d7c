#include "doctest.h"

#include "subdiv/catalog.hpp"
#include "subdiv/decomposition.hpp"
#include "subdiv/error.hpp"

using namespace subdiv;

namespace {

bool spans(const RationalMatrix& basis, std::initializer_list<std::initializer_list<Rational>> vectors)
{
    RationalMatrix expected(basis.rows(), vectors.size());
    std::size_t j = 0;
    for (const auto& v : vectors)
    {
        std::size_t i = 0;
        for (const auto& x : v)
            expected(i++, j) = x;
        ++j;
    }
    return basis.cols() == vectors.size() && same_column_span(basis, expected);
}

}   // namespace

TEST_CASE("V on the interval examples")
{
    const Subdivision Y(catalog::interval_halves());
    CHECK(spans(compute_V(Y).V_at(1).vectors, {{-1, 1}}));

    const Subdivision Z(compose(catalog::interval_halves(), catalog::interval_quarters()));
    CHECK(spans(compute_V(Z).V_at(1).vectors, {{-1, 1, 0}, {-1, 0, 1}}));

    const Subdivision triv(trivial_subdivision(catalog::simplex(3)));
    const auto dec = compute_V(triv);
    for (int k = 0; k <= 3; ++k)
        CHECK(dec.V_at(k).size() == 0);
}

TEST_CASE("direct sums, injectivity and the dimension formula on the corpus")
{
    for (const auto& entry : catalog::corpus())
    {
        INFO(entry.name);
        const Subdivision sub(entry.map);
        const auto dec = compute_V(sub);
        CHECK(dim_V_formula(sub, 0) == 0);
        for (int k = 0; k <= sub.dim(); ++k)
        {
            const auto& V = dec.V_at(k).vectors;
            const auto all = hstack(hstack(sub.inclusion(k), dec.boundary_at(k).vectors), V);
            CHECK(rank(all) == sub.fine().count(k));
            CHECK(sub.fine().count(k) == sub.coarse().count(k) + dec.boundary_at(k).size() + V.cols());
            CHECK(static_cast<long>(V.cols()) == dim_V_formula(sub, k));
            CHECK(dim_V_formula(sub, k) >= 0);
            CHECK((V.transpose() * all.select_cols(std::vector<std::size_t>(
                                       [&] {
                                           std::vector<std::size_t> idx;
                                           for (std::size_t c = 0; c + V.cols() < all.cols(); ++c)
                                               idx.push_back(c);
                                           return idx;
                                       }())))
                      .is_zero());
            if (k >= 1)
                CHECK(rank(boundary_matrix(sub.fine(), k) * V) == V.cols());
        }
    }
}

TEST_CASE("coboundaries of simplices off the parties lie in V")
{
    for (const auto& entry : catalog::corpus())
    {
        INFO(entry.name);
        const Subdivision sub(entry.map);
        const auto dec = compute_V(sub);
        for (int k = 0; k < sub.dim(); ++k)
        {
            const auto d = boundary_matrix(sub.fine(), k + 1);
            for (std::size_t j = 0; j < sub.fine().count(k); ++j)
                if (!sub.party_of(k, j))
                    CHECK(in_column_span(dec.V_at(k + 1).vectors, d.row(j)));
        }
    }
}

TEST_CASE("dimension formula examples")
{
    CHECK(dim_V_formula(Subdivision(stellar_subdivide(catalog::simplex(2), {0, 1, 2})), 1) == 1);
    const Subdivision med(catalog::medial_triangle());
    CHECK(dim_V_formula(med, 2) == 3);
    CHECK(compute_V(med).V_at(2).size() == 3);
}

TEST_CASE("explicit bases of V_1 and V_2")
{
    const Subdivision Y(catalog::interval_halves());
    CHECK(spans(basis_V1(Y).vectors, {{-1, 1}}));
    CHECK(basis_V1(Subdivision(trivial_subdivision(catalog::simplex(2)))).size() == 0);
    CHECK(basis_V2(Subdivision(trivial_subdivision(catalog::simplex(2)))).basis.size() == 0);

    const Subdivision med(catalog::medial_triangle());
    CHECK(rank(basis_V1(med).vectors) == 3);
    const auto m2 = basis_V2(med);
    CHECK_FALSE(m2.fallback);
    CHECK(m2.trees.empty());
    CHECK(m2.edges == std::vector<Simplex>{{3, 4}, {3, 5}, {4, 5}});

    const Subdivision bary(stellar_subdivide(catalog::simplex(2), {0, 1, 2}));
    const auto b2 = basis_V2(bary);
    CHECK_FALSE(b2.fallback);
    REQUIRE(b2.trees.size() == 1);
    CHECK(b2.trees[0].tree_edges.empty());
    CHECK(b2.trees[0].anchors.size() == 1);
    CHECK(b2.off_edge_parties == 1);
    CHECK(b2.on_edge_parties == 0);
    CHECK(b2.basis.size() == 2);

    std::size_t fallbacks = 0;
    for (const auto& entry : catalog::corpus())
    {
        INFO(entry.name);
        const Subdivision sub(entry.map);
        const auto dec = compute_V(sub);
        CHECK(same_column_span(basis_V1(sub).vectors, dec.V_at(1).vectors));
        const auto v2 = basis_V2(sub);
        CHECK(same_column_span(v2.basis.vectors, dec.V_at(2).vectors));
        CHECK(v2.basis.size() == dec.V_at(2).size());
        if (v2.fallback)
            MESSAGE(entry.name << ": " << v2.note);
        fallbacks += v2.fallback;
    }
    MESSAGE("basis_V2 fallbacks on the corpus: " << fallbacks);
}

TEST_CASE("canonical metric")
{
    const Subdivision triv(trivial_subdivision(catalog::simplex(2)));
    const auto std_triv = GramMetric::standard(triv.fine());
    const auto g0 = canonical_gram(triv, GramMetric::standard(triv.coarse()), std_triv);
    for (int k = 0; k <= 2; ++k)
        CHECK(g0[k] == std_triv[k]);

    for (const auto& entry : catalog::corpus())
    {
        INFO(entry.name);
        const Subdivision sub(entry.map);
        const auto h = GramMetric::standard(sub.coarse());
        const auto g = GramMetric::standard(sub.fine());
        const auto gp = canonical_gram(sub, h, g);
        gp.validate(sub.fine());
        const auto dec = compute_V(sub, g);
        for (int k = 0; k <= sub.dim(); ++k)
        {
            const auto& I = sub.inclusion(k);
            const auto& D = dec.boundary_at(k).vectors;
            const auto& V = dec.V_at(k).vectors;
            CHECK(I.transpose() * gp[k] * I == h[k]);
            CHECK(D.transpose() * gp[k] * D == D.transpose() * g[k] * D);
            CHECK(V.transpose() * gp[k] * V == V.transpose() * g[k] * V);
            CHECK((I.transpose() * gp[k] * D).is_zero());
            CHECK((I.transpose() * gp[k] * V).is_zero());
            CHECK((D.transpose() * gp[k] * V).is_zero());
        }
    }

    const Subdivision Y(catalog::interval_halves());
    const auto gY = canonical_gram(Y, GramMetric::standard(Y.coarse()), GramMetric::standard(Y.fine()));
    const std::vector<Rational> ones{1, 1};
    CHECK(bilinear(ones, gY[1], ones) == 1);

    GramMetric bad = GramMetric::standard(Y.fine());
    bad.by_dim[1](0, 0) = -1;
    CHECK_THROWS_AS(canonical_gram(Y, GramMetric::standard(Y.coarse()), bad), Error);
    CHECK_THROWS_AS(compute_V(Y, bad), Error);
}

TEST_CASE("successive subdivisions of the interval")
{
    const Subdivision first(catalog::interval_halves());
    const Subdivision second(catalog::interval_quarters());
    const Subdivision both(compose(catalog::interval_halves(), catalog::interval_quarters()));

    CHECK(spans(both.inclusion(1), {{1, 1, 1}}));
    const auto A1 = compute_V(first).V_at(1).vectors;
    const auto jA1 = second.inclusion(1) * A1;
    CHECK(spans(jA1, {{-1, -1, 1}}));
    CHECK(!(jA1.transpose() * both.inclusion(1)).is_zero());

    const auto dV1 = compute_V(both).boundary_at(0).vectors;
    CHECK_FALSE(in_column_span(dV1, std::vector<Rational>{1, 0, -2, 1}));
}

TEST_CASE("boundaries of pushed-forward and fresh complements are not orthogonal in general")
{
    // For a in A_1 (from [0,4] -> [0,2,4]) and b in B_1 (from [0,2,4] -> [0,1,2,4]),
    // <d j_* a, d b> = <j_* a, d^T d b> and d^T d b leaves B_1, so the pairing is nonzero.
    const Subdivision first(catalog::interval_halves());
    const Subdivision second(catalog::interval_quarters());
    const auto a = second.inclusion(1) * compute_V(first).V_at(1).vectors;
    const auto b = compute_V(second).V_at(1).vectors;
    REQUIRE(a.cols() == 1);
    REQUIRE(b.cols() == 1);
    const auto d = boundary_matrix(second.fine(), 1);
    const Rational pairing = ((d * a).transpose() * (d * b))(0, 0);
    CHECK(abs(pairing) == 1);

    const auto dtdb = d.transpose() * d * b;
    CHECK_FALSE((second.inclusion(1).transpose() * dtdb).is_zero());
}
