#ifndef SUBDIV_TESTS_SUPPORT_HPP
#define SUBDIV_TESTS_SUPPORT_HPP

#include <algorithm>
#include <deque>
#include <map>

#include "subdiv/catalog.hpp"
#include "subdiv/complex.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv::testing {

// d^T d on the top simplices of interior_star(d, k) subdivided at [0..k], the
// simplices coherently oriented and ordered as party * (k+1) + member: party
// bit j set when the vertex taken from pair j is the second of the pair,
// member = the vertex of [0..k] left out.
inline RationalMatrix interior_top_gram(int d, int k)
{
    Simplex sigma;
    for (int i = 0; i <= k; ++i)
        sigma.push_back(i);
    const Subdivision sub(stellar_subdivide(catalog::interior_star(d, k), sigma));
    const auto& M = sub.fine();
    const auto& tops = M.simplices(d);
    const std::size_t n = tops.size();

    // Coherent orientation: neighbours induce opposite signs on the shared facet.
    const RationalMatrix del = boundary_matrix(M, d);
    std::vector<int> sign(n, 0);
    sign[0] = 1;
    std::deque<std::size_t> queue{0};
    while (!queue.empty())
    {
        const std::size_t a = queue.front();
        queue.pop_front();
        for (std::size_t b = 0; b < n; ++b)
        {
            if (sign[b] != 0)
                continue;
            for (std::size_t f = 0; f < del.rows(); ++f)
                if (!is_zero(del(f, a)) && !is_zero(del(f, b)))
                {
                    sign[b] = -sign[a] * sgn(del(f, a)) * sgn(del(f, b));
                    queue.push_back(b);
                    break;
                }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t t = 0; t < n; ++t)
    {
        const Simplex& s = tops[t];
        std::size_t party = 0;
        for (int j = 0; j < d - k; ++j)
            if (std::binary_search(s.begin(), s.end(), Vertex(k + 2 + 2 * j)))
                party |= std::size_t{1} << j;
        std::size_t member = 0;
        for (int i = 0; i <= k; ++i)
            if (!std::binary_search(s.begin(), s.end(), Vertex(i)))
                member = static_cast<std::size_t>(i);
        order[party * static_cast<std::size_t>(k + 1) + member] = t;
    }

    RationalMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
        {
            Rational acc = 0;
            for (std::size_t f = 0; f < del.rows(); ++f)
                acc += del(f, order[r]) * del(f, order[c]);
            out(r, c) = acc * sign[order[r]] * sign[order[c]];
        }
    return out;
}

// Number of vertices in the link of v.
inline std::size_t link_size(const SimplicialComplex& K, Vertex v)
{
    return link(K, Simplex{v}).count(0);
}

}   // namespace subdiv::testing

#endif
