#include "subdiv/catalog.hpp"

#include <random>

namespace subdiv::catalog {

SimplicialComplex simplex(int d)
{
    Simplex s;
    for (int v = 0; v <= d; ++v)
        s.push_back(v);
    return build_complex({s});
}

SimplicialComplex triangle_boundary()
{
    return build_complex({{0, 1}, {1, 2}, {0, 2}});
}

SubdivisionMap medial_triangle()
{
    return {simplex(2),
            build_complex({{0, 3, 5}, {1, 3, 4}, {2, 4, 5}, {3, 4, 5}}),
            {{0, {0}}, {1, {1}}, {2, {2}}, {3, {0, 1}}, {4, {1, 2}}, {5, {0, 2}}}};
}

SubdivisionMap interval_halves()
{
    return {build_complex({{0, 4}}), build_complex({{0, 2}, {2, 4}}), {{0, {0}}, {4, {4}}, {2, {0, 4}}}};
}

SubdivisionMap interval_quarters()
{
    return {build_complex({{0, 2}, {2, 4}}), build_complex({{0, 1}, {1, 2}, {2, 4}}),
            {{0, {0}}, {2, {2}}, {4, {4}}, {1, {0, 2}}}};
}

SubdivisionMap triangle_edge_stellar()
{
    return stellar_subdivide(simplex(2), {0, 1});
}

SimplicialComplex interior_star(int d, int k)
{
    const int pairs = d - k;
    std::vector<Simplex> maximal;
    for (int mask = 0; mask < (1 << pairs); ++mask)
    {
        Simplex s;
        for (int v = 0; v <= k; ++v)
            s.push_back(v);
        for (int j = 0; j < pairs; ++j)
            s.push_back(k + 1 + 2 * j + ((mask >> j) & 1));
        maximal.push_back(s);
    }
    return build_complex(std::span<const Simplex>(maximal));
}

namespace {

std::vector<SimplicialComplex> base_complexes()
{
    return {
        simplex(1),
        simplex(2),
        simplex(3),
        simplex(4),
        build_complex({{0, 1}, {1, 2}}),
        build_complex({{0, 1, 2}, {1, 2, 3}}),
        build_complex({{0, 1, 2}, {2, 3}}),
        triangle_boundary(),
        interior_star(3, 1),
        build_complex({{0, 1, 2, 3}, {1, 2, 3, 4}}),
    };
}

Simplex pick_simplex(const SimplicialComplex& K, std::mt19937_64& rng, int min_dim)
{
    std::vector<Simplex> pool;
    for (int k = min_dim; k <= K.dim(); ++k)
        pool.insert(pool.end(), K.simplices(k).begin(), K.simplices(k).end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

}   // namespace

std::vector<CorpusEntry> corpus(std::uint64_t seed, std::size_t random_chains)
{
    std::vector<CorpusEntry> out;
    const auto bases = base_complexes();

    // Every elementary stellar move on the first few simplices.
    for (int d = 1; d <= 3; ++d)
    {
        const auto K = simplex(d);
        for (int k = 1; k <= d; ++k)
            for (const auto& s : K.simplices(k))
                out.push_back({"stellar(D" + std::to_string(d) + "," + to_string(s) + ")", stellar_subdivide(K, s), true, s});
    }
    for (std::size_t b = 4; b < bases.size(); ++b)
    {
        const auto& K = bases[b];
        const Simplex s = K.simplices(1).front();
        out.push_back({"stellar(base" + std::to_string(b) + "," + to_string(s) + ")", stellar_subdivide(K, s), true, s});
    }

    out.push_back({"medial(D2)", medial_triangle(), false, {}});
    out.push_back({"intervals", compose(interval_halves(), interval_quarters()), false, {}});
    {
        const auto medial = medial_triangle();
        const auto next = stellar_subdivide(medial.fine, {3, 4, 5});
        out.push_back({"medial+stellar[3,4,5]", compose(medial, next), false, {}});
        const auto edge = stellar_subdivide(medial.fine, {3, 4});
        out.push_back({"medial+stellar[3,4]", compose(medial, edge), false, {}});
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> which(0, bases.size() - 1);
    std::uniform_int_distribution<int> steps(2, 3);
    for (std::size_t c = 0; c < random_chains; ++c)
    {
        const auto& K = bases[which(rng)];
        const int n = steps(rng);
        SubdivisionMap acc = trivial_subdivision(K);
        std::string name = "chain" + std::to_string(c) + ":";
        for (int i = 0; i < n; ++i)
        {
            const Simplex s = pick_simplex(acc.fine, rng, 1);
            acc = compose(acc, stellar_subdivide(acc.fine, s));
            name += to_string(s);
        }
        out.push_back({name, acc, false, {}});
    }
    return out;
}

}   // namespace subdiv::catalog
