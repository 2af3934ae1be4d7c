#include "doctest.h"

#include <algorithm>
#include <array>

#include "subdiv/catalog.hpp"
#include "subdiv/error.hpp"
#include "subdiv/subdivision.hpp"

using namespace subdiv;

namespace {

bool chain_map_holds(const Subdivision& s)
{
    for (int k = 1; k <= s.dim(); ++k)
        if (!(boundary_matrix(s.fine(), k) * s.inclusion(k) == s.inclusion(k - 1) * boundary_matrix(s.coarse(), k)))
            return false;
    return true;
}

}   // namespace

TEST_CASE("carriers")
{
    const Subdivision triv(trivial_subdivision(catalog::simplex(2)));
    for (int k = 0; k <= 2; ++k)
        for (std::size_t j = 0; j < triv.fine().count(k); ++j)
            CHECK(triv.carrier(k, j) == triv.fine().simplices(k)[j]);

    const Subdivision halves(SubdivisionMap{build_complex({{0, 1}, {1, 2}}), build_complex({{0, 3}, {1, 3}, {1, 2}}),
                                            {{3, {0, 1}}}});
    CHECK(halves.carrier(1, halves.fine().index({0, 3})) == Simplex{0, 1});
    CHECK(halves.parties(1).size() == 2);

    const Subdivision bary(stellar_subdivide(catalog::simplex(2), {0, 1, 2}));
    CHECK(bary.carrier(2, bary.fine().index({0, 1, 3})) == Simplex{0, 1, 2});
}

TEST_CASE("party signs follow the induced orientation")
{
    const Subdivision med(catalog::medial_triangle());
    for (const auto& p : med.parties(0))
    {
        CHECK(p.members.size() == 1);
        CHECK(p.signs[0] == 1);
    }
    // Brute force: exactly one of the four sign choices satisfies d(chain) = i(d sigma).
    const auto d1 = boundary_matrix(med.fine(), 1);
    for (const auto& p : med.parties(1))
    {
        REQUIRE(p.members.size() == 2);
        int solutions = 0;
        for (int a : {1, -1})
            for (int b : {1, -1})
            {
                RationalMatrix c(med.fine().count(1), 1);
                c(p.members[0], 0) = a;
                c(p.members[1], 0) = b;
                RationalMatrix target(med.fine().count(1), 0);
                const auto lhs = d1 * c;
                const auto rhs = med.inclusion(0) * boundary_matrix(med.coarse(), 1).select_cols(std::array{p.carrier_index});
                if (lhs == rhs)
                {
                    ++solutions;
                    CHECK(a == p.signs[0]);
                    CHECK(b == p.signs[1]);
                }
            }
        CHECK(solutions == 1);
    }
    CHECK(med.inclusion(1).rows() == 9);
    CHECK(med.inclusion(1).cols() == 3);
    CHECK(rank(med.inclusion(1)) == 3);
    CHECK(chain_map_holds(med));

    const Subdivision edge_sub(catalog::triangle_edge_stellar());
    REQUIRE(edge_sub.parties(1).size() == 3);
    const auto& base = edge_sub.parties(1)[edge_sub.coarse().index({0, 1})];
    CHECK(base.members.size() == 2);
    CHECK(base.signs[0] == -base.signs[1]);   // [0,3] - [1,3] runs 0 -> 3 -> 1
    CHECK(edge_sub.parties(2)[0].members.size() == 2);
    CHECK(chain_map_holds(edge_sub));
}

TEST_CASE("inclusion matrices")
{
    const Subdivision triv(trivial_subdivision(catalog::simplex(3)));
    for (int k = 0; k <= 3; ++k)
        CHECK(triv.inclusion(k) == RationalMatrix::identity(triv.fine().count(k)));

    const Subdivision Z(compose(catalog::interval_halves(), catalog::interval_quarters()));
    CHECK(Z.inclusion(1) == RationalMatrix{{1}, {1}, {1}});
}

TEST_CASE("validation reports")
{
    const auto ok = validate_subdivision(trivial_subdivision(catalog::simplex(2)));
    CHECK(ok.ok());

    const auto Z = validate_subdivision(compose(catalog::interval_halves(), catalog::interval_quarters()));
    CHECK(Z.ok());
    CHECK(Z.betti_fine == std::vector<std::size_t>{1, 0});

    auto bad = catalog::medial_triangle();
    bad.vertex_carrier[3] = {1, 2};   // midpoint of [0,1] claimed by [1,2]
    const auto report = validate_subdivision(bad);
    CHECK_FALSE(report.ok());
    CHECK_THROWS_AS(Subdivision{bad}, Error);
    try
    {
        Subdivision s(bad);
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::InvalidSubdivision);
    }

    for (const auto& entry : catalog::corpus())
    {
        INFO(entry.name);
        CHECK(validate_subdivision(entry.map).ok());
    }
}

TEST_CASE("orientation failures are detected")
{
    // Two triangles glued along an edge, claimed to subdivide a single triangle twice over.
    SubdivisionMap folded{catalog::simplex(2), build_complex({{0, 1, 3}, {0, 1, 2}, {1, 2, 3}, {0, 2, 3}}), {{3, {0, 1, 2}}}};
    CHECK_THROWS_AS(Subdivision{folded}, Error);
    CHECK_FALSE(validate_subdivision(folded).ok());
}

TEST_CASE("incidence statistics")
{
    const Subdivision bary(stellar_subdivide(catalog::simplex(2), {0, 1, 2}));
    const auto sv = incidence_stats(bary, {3});
    CHECK(sv.eligible);
    CHECK(sv.incident == 3);
    CHECK(sv.singly == 3);

    const Subdivision edge_sub(catalog::triangle_edge_stellar());
    const auto e5 = incidence_stats(edge_sub, {2, 3});
    CHECK(e5.eligible);
    CHECK(e5.incident == 2);
    CHECK(e5.singly == 2);
    CHECK_FALSE(incidence_stats(edge_sub, {0, 3}).eligible);

    // Codimension one in a closed surface: every edge meets two triangles.
    const Subdivision sphere(stellar_subdivide(build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}), {0, 1, 2}));
    for (const auto& e : sphere.fine().simplices(1))
        CHECK(incidence_stats(sphere, e).incident == 2);
}

TEST_CASE("stellar subdivisions")
{
    const auto tri = catalog::simplex(2);
    CHECK(face_vector(stellar_subdivide(tri, {0, 1, 2}).fine) == std::vector<std::size_t>{4, 6, 3});
    CHECK(face_vector(stellar_subdivide(tri, {0, 1}).fine) == std::vector<std::size_t>{4, 5, 2});
    CHECK(stellar_subdivide(tri, {1}).fine == tri);
    CHECK_THROWS_AS(stellar_subdivide(tri, {0, 5}), Error);

    const Subdivision s(stellar_subdivide(catalog::interior_star(3, 1), {0, 1}));
    CHECK(s.fine().count(3) == 8);
    CHECK(s.parties(3).size() == 4);
    for (const auto& p : s.parties(3))
        CHECK(p.members.size() == 2);
}

TEST_CASE("composition")
{
    const auto tri = catalog::simplex(2);
    const auto tt = compose(trivial_subdivision(tri), trivial_subdivision(tri));
    CHECK(tt.fine == tri);
    CHECK(Subdivision(tt).inclusion(2) == RationalMatrix::identity(1));

    const auto first = stellar_subdivide(catalog::simplex(3), {0, 1});
    CHECK_THROWS_AS(compose(first, trivial_subdivision(tri)), Error);

    const auto two = compose(first, stellar_subdivide(first.fine, {2, 3}));
    const Subdivision both(two);
    CHECK(both.new_vertices().size() == 2);
    CHECK(validate_subdivision(two).ok());
}

TEST_CASE("relabeling preserves validity")
{
    const auto med = catalog::medial_triangle();
    const auto r = relabel(med, {{0, 10}, {1, 4}, {2, 7}, {3, 2}, {4, 0}, {5, 1}});
    CHECK(validate_subdivision(r).ok());
    CHECK(face_vector(r.fine) == face_vector(med.fine));
}
