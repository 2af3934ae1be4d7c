#include "subdiv/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "subdiv/error.hpp"

namespace subdiv {

GramMetric GramMetric::standard(const SimplicialComplex& K)
{
    GramMetric g;
    for (int k = 0; k <= K.dim(); ++k)
        g.by_dim.push_back(RationalMatrix::identity(K.count(k)));
    return g;
}

const RationalMatrix& GramMetric::operator[](int k) const
{
    static const RationalMatrix none;
    if (k < 0 || k >= static_cast<int>(by_dim.size()))
        return none;
    return by_dim[static_cast<std::size_t>(k)];
}

void GramMetric::validate(const SimplicialComplex& K) const
{
    if (static_cast<int>(by_dim.size()) != K.dim() + 1)
        throw Error(ErrorCode::MetricNotPD, "metric has " + std::to_string(by_dim.size()) + " dimensions, complex has "
                                                + std::to_string(K.dim() + 1));
    for (int k = 0; k <= K.dim(); ++k)
    {
        const auto& G = (*this)[k];
        if (G.rows() != K.count(k) || G.cols() != K.count(k))
            throw Error(ErrorCode::MetricNotPD, "Gram matrix in dimension " + std::to_string(k) + " has the wrong size");
        if (!G.is_symmetric())
            throw Error(ErrorCode::MetricNotPD, "Gram matrix in dimension " + std::to_string(k) + " is not symmetric");
        if (!is_positive_definite(G))
            throw Error(ErrorCode::MetricNotPD, "Gram matrix in dimension " + std::to_string(k) + " is not positive definite");
    }
}

std::string_view to_string(BasisLabel label)
{
    switch (label)
    {
        case BasisLabel::ImI: return "im_i";
        case BasisLabel::V: return "V";
        case BasisLabel::DV: return "dV";
        case BasisLabel::Other: return "other";
    }
    return "other";
}

const ChainBasis& Decomposition::V_at(int k) const
{
    static const ChainBasis none;
    if (k < 0 || k >= static_cast<int>(V.size()))
        return none;
    return V[static_cast<std::size_t>(k)];
}

const ChainBasis& Decomposition::boundary_at(int k) const
{
    static const ChainBasis none;
    if (k < 0 || k >= static_cast<int>(boundary.size()))
        return none;
    return boundary[static_cast<std::size_t>(k)];
}

Decomposition compute_V(const Subdivision& sub, const GramMetric& g)
{
    const auto& M = sub.fine();
    g.validate(M);
    const int d = sub.dim();
    Decomposition out;
    out.image.resize(static_cast<std::size_t>(d + 1));
    out.boundary.resize(static_cast<std::size_t>(d + 1));
    out.V.resize(static_cast<std::size_t>(d + 1));

    for (int k = d; k >= 0; --k)
    {
        const auto ku = static_cast<std::size_t>(k);
        out.image[ku] = {k, BasisLabel::ImI, sub.inclusion(k)};
        RationalMatrix dv(M.count(k), 0);
        if (k < d)
            dv = boundary_matrix(M, k + 1) * out.V[ku + 1].vectors;
        out.boundary[ku] = {k, BasisLabel::DV, dv};

        const RationalMatrix X = hstack(out.image[ku].vectors, dv);
        out.V[ku] = {k, BasisLabel::V, kernel(X.transpose() * g[k])};

        const RationalMatrix all = hstack(X, out.V[ku].vectors);
        if (all.cols() != M.count(k) || rank(all) != M.count(k))
            throw Error(ErrorCode::ConstructionFailed,
                        "chain decomposition is not a direct sum in dimension " + std::to_string(k));
    }
    return out;
}

Decomposition compute_V(const Subdivision& sub)
{
    return compute_V(sub, GramMetric::standard(sub.fine()));
}

long dim_V_formula(const Subdivision& sub, int k)
{
    if (k <= 0)
        return 0;
    long acc = 0;
    for (int j = 0; j < k; ++j)
    {
        const long sign = j % 2 == 0 ? 1 : -1;
        acc += sign * (static_cast<long>(sub.coarse().count(j)) - static_cast<long>(sub.fine().count(j)));
    }
    return k % 2 == 0 ? acc : -acc;
}

ChainBasis basis_V1(const Subdivision& sub)
{
    const auto& M = sub.fine();
    const auto fresh = sub.new_vertices();
    RationalMatrix B(M.count(1), fresh.size());
    if (M.dim() >= 1)
    {
        const RationalMatrix d1 = boundary_matrix(M, 1);
        for (std::size_t j = 0; j < fresh.size(); ++j)
        {
            const std::size_t v = M.index(Simplex{fresh[j]});
            for (std::size_t e = 0; e < d1.cols(); ++e)
                B(e, j) = d1(v, e);
        }
    }
    return {1, BasisLabel::V, B};
}

BasisV2 basis_V2(const Subdivision& sub)
{
    const auto& N = sub.coarse();
    const auto& M = sub.fine();
    BasisV2 out;
    out.basis = {2, BasisLabel::V, RationalMatrix(M.count(2), 0)};
    if (M.dim() < 2)
        return out;

    auto carrier_of_vertex = [&](Vertex v) -> const Simplex& { return sub.carrier(0, M.index(Simplex{v})); };
    auto is_old = [&](Vertex v) { return N.contains(Simplex{v}); };

    std::set<std::size_t> excluded;   // edge indices in M
    const auto& edges = M.simplices(1);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (sub.carrier(1, e).size() == 2)
            excluded.insert(e);

    std::map<Simplex, std::vector<Vertex>> interior;
    for (Vertex v : sub.new_vertices())
    {
        const Simplex& c = carrier_of_vertex(v);
        if (c.size() == 2)
            ++out.on_edge_parties;
        else
        {
            ++out.off_edge_parties;
            interior[c].push_back(v);
        }
    }

    auto fail = [&](const std::string& why) {
        const Decomposition dec = compute_V(sub);
        out.fallback = true;
        out.note = why;
        out.basis = dec.V_at(2);
        out.edges.clear();
        return out;
    };

    for (const auto& [party, verts] : interior)
    {
        TreeAnchorData data;
        data.party = party;
        data.interior = verts;
        const std::set<Vertex> inside(verts.begin(), verts.end());

        // Party edges, lexicographic, so BFS and anchor choice are deterministic.
        std::map<Vertex, std::vector<std::size_t>> adjacent;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (sub.carrier(1, e) == party)
            {
                adjacent[edges[e][0]].push_back(e);
                adjacent[edges[e][1]].push_back(e);
            }

        std::set<Vertex> seen;
        for (Vertex root : verts)
        {
            if (seen.count(root))
                continue;
            std::vector<Vertex> component{root};
            std::deque<Vertex> queue{root};
            seen.insert(root);
            while (!queue.empty())
            {
                const Vertex a = queue.front();
                queue.pop_front();
                for (std::size_t e : adjacent[a])
                {
                    const Vertex b = edges[e][0] == a ? edges[e][1] : edges[e][0];
                    if (!inside.count(b) || seen.count(b))
                        continue;
                    seen.insert(b);
                    queue.push_back(b);
                    component.push_back(b);
                    data.tree_edges.push_back(edges[e]);
                    excluded.insert(e);
                }
            }
            // Prefer an old vertex; otherwise any vertex on the party's boundary (checked by span below).
            std::optional<std::size_t> anchor, boundary_anchor;
            for (Vertex a : component)
                for (std::size_t e : adjacent[a])
                {
                    const Vertex b = edges[e][0] == a ? edges[e][1] : edges[e][0];
                    if (inside.count(b))
                        continue;
                    auto& slot = is_old(b) ? anchor : boundary_anchor;
                    if (!slot || edges[e] < edges[*slot])
                        slot = e;
                }
            if (!anchor)
            {
                anchor = boundary_anchor;
                if (anchor)
                    out.note = "anchor of " + to_string(party) + " ends on a new boundary vertex";
            }
            if (!anchor)
                return fail("no anchor edge from the interior of " + to_string(party));
            data.anchors.push_back(edges[*anchor]);
            excluded.insert(*anchor);
        }
        out.trees.push_back(std::move(data));
    }

    const RationalMatrix d2 = boundary_matrix(M, 2);
    std::vector<std::size_t> chosen;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!excluded.count(e))
            chosen.push_back(e);
    for (auto e : chosen)
        out.edges.push_back(edges[e]);
    out.basis.vectors = d2.select_rows(chosen).transpose();

    const long expected = dim_V_formula(sub, 2);
    if (static_cast<long>(chosen.size()) != expected)
        return fail("edge count " + std::to_string(chosen.size()) + " differs from dim V_2 = " + std::to_string(expected));
    const Decomposition dec = compute_V(sub);
    if (rank(out.basis.vectors) != chosen.size() || !same_column_span(out.basis.vectors, dec.V_at(2).vectors))
        return fail("edge coboundaries do not span V_2");
    return out;
}

GramMetric canonical_gram(const Subdivision& sub, const GramMetric& h, const GramMetric& g)
{
    h.validate(sub.coarse());
    const Decomposition dec = compute_V(sub, g);
    GramMetric out;
    for (int k = 0; k <= sub.dim(); ++k)
    {
        const auto& D = dec.boundary_at(k).vectors;
        const auto& V = dec.V_at(k).vectors;
        const RationalMatrix B = hstack(hstack(sub.inclusion(k), D), V);
        const std::vector<RationalMatrix> blocks{h[k], D.transpose() * g[k] * D, V.transpose() * g[k] * V};
        const RationalMatrix Binv = inverse(B);
        out.by_dim.push_back(Binv.transpose() * block_diagonal(blocks) * Binv);
    }
    return out;
}

}   // namespace subdiv
