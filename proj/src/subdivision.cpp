#include "subdiv/subdivision.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "subdiv/error.hpp"

namespace subdiv {

namespace {

Simplex union_of(const Simplex& a, const Simplex& b)
{
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}   // namespace

CarrierMap derive_carriers(const SubdivisionMap& sub)
{
    const auto& N = sub.coarse;
    const auto& M = sub.fine;
    if (N.empty() || M.empty())
        throw Error(ErrorCode::InvalidSubdivision, "empty complex");

    std::map<Vertex, Simplex> vc;
    for (Vertex v : M.vertices())
    {
        auto it = sub.vertex_carrier.find(v);
        Simplex c;
        if (it != sub.vertex_carrier.end())
            c = make_simplex(it->second);
        else if (N.contains(Simplex{v}))
            c = Simplex{v};
        else
            throw Error(ErrorCode::InvalidSubdivision, "no carrier for fine vertex " + std::to_string(v));
        if (!N.contains(c))
            throw Error(ErrorCode::InvalidSubdivision,
                        "carrier " + to_string(c) + " of vertex " + std::to_string(v) + " is not a coarse simplex");
        vc.emplace(v, std::move(c));
    }
    for (const auto& [v, c] : sub.vertex_carrier)
        if (!M.contains(Simplex{v}))
            throw Error(ErrorCode::InvalidSubdivision, "carrier given for unknown vertex " + std::to_string(v));
    for (Vertex u : N.vertices())
    {
        auto it = vc.find(u);
        if (it == vc.end() || it->second != Simplex{u})
            throw Error(ErrorCode::InvalidSubdivision,
                        "coarse vertex " + std::to_string(u) + " is not a fine vertex carried by itself");
    }

    CarrierMap carriers(static_cast<std::size_t>(M.dim() + 1));
    for (int k = 0; k <= M.dim(); ++k)
    {
        auto& out = carriers[static_cast<std::size_t>(k)];
        out.reserve(M.count(k));
        for (const auto& tau : M.simplices(k))
        {
            Simplex c;
            for (Vertex v : tau)
                c = union_of(c, vc.at(v));
            if (!N.contains(c))
                throw Error(ErrorCode::InvalidSubdivision,
                            "no coarse simplex carries " + to_string(tau) + " (join " + to_string(c) + ")");
            if (c.size() < tau.size())
                throw Error(ErrorCode::InvalidSubdivision,
                            to_string(tau) + " collapses onto lower-dimensional carrier " + to_string(c));
            out.push_back(std::move(c));
        }
    }
    return carriers;
}

Subdivision::Subdivision(SubdivisionMap map) : map_(std::move(map))
{
    carriers_ = derive_carriers(map_);
    if (map_.coarse.dim() != map_.fine.dim())
        throw Error(ErrorCode::InvalidSubdivision, "coarse and fine dimensions differ");
    derive_parties();
}

const Simplex& Subdivision::carrier(int k, std::size_t fine_index) const
{
    return carriers_.at(static_cast<std::size_t>(k)).at(fine_index);
}

const std::vector<Party>& Subdivision::parties(int k) const
{
    static const std::vector<Party> none;
    if (k < 0 || k > dim())
        return none;
    return parties_[static_cast<std::size_t>(k)];
}

std::optional<std::pair<std::size_t, int>> Subdivision::party_of(int k, std::size_t fine_index) const
{
    if (k < 0 || k > dim())
        return std::nullopt;
    return membership_[static_cast<std::size_t>(k)].at(fine_index);
}

const RationalMatrix& Subdivision::inclusion(int k) const
{
    static const RationalMatrix none;
    if (k < 0 || k > dim())
        return none;
    return inclusion_[static_cast<std::size_t>(k)];
}

std::vector<Vertex> Subdivision::new_vertices() const
{
    std::vector<Vertex> out;
    for (Vertex v : fine().vertices())
        if (!coarse().contains(Simplex{v}))
            out.push_back(v);
    return out;
}

void Subdivision::derive_parties()
{
    const auto& N = coarse();
    const auto& M = fine();
    const int d = dim();
    parties_.assign(static_cast<std::size_t>(d + 1), {});
    membership_.assign(static_cast<std::size_t>(d + 1), {});
    inclusion_.assign(static_cast<std::size_t>(d + 1), {});

    for (int k = 0; k <= d; ++k)
    {
        const auto ku = static_cast<std::size_t>(k);
        auto& ps = parties_[ku];
        ps.resize(N.count(k));
        for (std::size_t j = 0; j < N.count(k); ++j)
        {
            ps[j].dim = k;
            ps[j].carrier = N.simplices(k)[j];
            ps[j].carrier_index = j;
        }
        for (std::size_t i = 0; i < M.count(k); ++i)
        {
            const Simplex& c = carriers_[ku][i];
            if (static_cast<int>(c.size()) - 1 == k)
                ps[N.index(c)].members.push_back(i);
        }

        membership_[ku].assign(M.count(k), std::nullopt);
        for (std::size_t j = 0; j < ps.size(); ++j)
        {
            Party& p = ps[j];
            if (p.members.empty())
                throw Error(ErrorCode::InvalidSubdivision, "coarse simplex " + to_string(p.carrier) + " has no members");
            p.signs.assign(p.members.size(), 0);

            if (k == 0)
            {
                if (p.members.size() != 1)
                    throw Error(ErrorCode::InvalidSubdivision,
                                "several fine vertices carried by vertex " + to_string(p.carrier));
                p.signs[0] = 1;
            }
            else
            {
                // Interior facets of the party join pairs of members; adjacent
                // members must induce opposite orientations on the shared facet.
                std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> interior;
                for (std::size_t m = 0; m < p.members.size(); ++m)
                {
                    const auto fs = facets(M.simplices(k)[p.members[m]]);
                    for (std::size_t pos = 0; pos < fs.size(); ++pos)
                    {
                        const std::size_t fi = M.index(fs[pos]);
                        if (carriers_[ku - 1][fi] == p.carrier)
                            interior[fi].emplace_back(m, pos % 2 == 0 ? 1 : -1);
                    }
                }
                std::vector<std::vector<std::pair<std::size_t, int>>> adj(p.members.size());
                for (const auto& [fi, inc] : interior)
                {
                    if (inc.size() != 2)
                        throw Error(ErrorCode::OrientationConflict,
                                    "interior face " + to_string(M.simplices(k - 1)[fi]) + " of party "
                                        + to_string(p.carrier) + " lies on " + std::to_string(inc.size()) + " members");
                    const int rel = -inc[0].second * inc[1].second;
                    adj[inc[0].first].emplace_back(inc[1].first, rel);
                    adj[inc[1].first].emplace_back(inc[0].first, rel);
                }

                std::deque<std::size_t> queue{0};
                p.signs[0] = 1;
                while (!queue.empty())
                {
                    const std::size_t a = queue.front();
                    queue.pop_front();
                    for (auto [b, rel] : adj[a])
                    {
                        const int want = p.signs[a] * rel;
                        if (p.signs[b] == 0)
                        {
                            p.signs[b] = want;
                            queue.push_back(b);
                        }
                        else if (p.signs[b] != want)
                            throw Error(ErrorCode::OrientationConflict,
                                        "inconsistent member orientation in party " + to_string(p.carrier));
                    }
                }
                if (std::find(p.signs.begin(), p.signs.end(), 0) != p.signs.end())
                    throw Error(ErrorCode::DisconnectedParty, "members of party " + to_string(p.carrier) + " are not connected");

                // Fix the global sign against i_*(d sigma).
                std::vector<int> chain_bd(M.count(k - 1), 0), target(M.count(k - 1), 0);
                for (std::size_t m = 0; m < p.members.size(); ++m)
                {
                    const auto fs = facets(M.simplices(k)[p.members[m]]);
                    for (std::size_t pos = 0; pos < fs.size(); ++pos)
                        chain_bd[M.index(fs[pos])] += p.signs[m] * (pos % 2 == 0 ? 1 : -1);
                }
                const auto cfs = facets(p.carrier);
                for (std::size_t pos = 0; pos < cfs.size(); ++pos)
                {
                    const Party& q = parties_[ku - 1][N.index(cfs[pos])];
                    const int s = pos % 2 == 0 ? 1 : -1;
                    for (std::size_t m = 0; m < q.members.size(); ++m)
                        target[q.members[m]] += s * q.signs[m];
                }
                std::vector<int> negated(target);
                for (auto& x : negated)
                    x = -x;
                if (chain_bd == negated)
                    for (auto& s : p.signs)
                        s = -s;
                else if (chain_bd != target)
                    throw Error(ErrorCode::OrientationConflict,
                                "party " + to_string(p.carrier) + " boundary does not match the included boundary of its carrier");
            }
            for (std::size_t m = 0; m < p.members.size(); ++m)
                membership_[ku][p.members[m]] = std::make_pair(j, p.signs[m]);
        }

        RationalMatrix inc(M.count(k), N.count(k));
        for (std::size_t j = 0; j < ps.size(); ++j)
            for (std::size_t m = 0; m < ps[j].members.size(); ++m)
                inc(ps[j].members[m], j) = ps[j].signs[m];
        inclusion_[ku] = std::move(inc);
    }
}

const std::vector<Party>& parties(const Subdivision& sub, int k)
{
    return sub.parties(k);
}

const RationalMatrix& inclusion_matrix(const Subdivision& sub, int k)
{
    return sub.inclusion(k);
}

bool ValidationReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport validate_subdivision(const SubdivisionMap& map)
{
    ValidationReport report;
    auto add = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    try
    {
        derive_carriers(map);
        add("carriers", true, "");
    }
    catch (const Error& e)
    {
        add("carriers", false, e.what());
        return report;
    }

    const bool same_dim = map.coarse.dim() == map.fine.dim();
    add("dimension", same_dim,
        same_dim ? "" : "coarse dim " + std::to_string(map.coarse.dim()) + " vs fine dim " + std::to_string(map.fine.dim()));

    std::optional<Subdivision> sub;
    try
    {
        sub.emplace(map);
        std::size_t smallest = SIZE_MAX;
        for (int k = 0; k <= sub->dim(); ++k)
            for (const auto& p : sub->parties(k))
                smallest = std::min(smallest, p.members.size());
        add("parties", smallest >= 1, "");
    }
    catch (const Error& e)
    {
        add("parties", false, e.what());
    }

    if (sub)
    {
        bool commutes = true;
        std::string where;
        for (int k = 1; k <= sub->dim(); ++k)
        {
            const auto lhs = boundary_matrix(sub->fine(), k) * sub->inclusion(k);
            const auto rhs = sub->inclusion(k - 1) * boundary_matrix(sub->coarse(), k);
            if (!(lhs == rhs))
            {
                commutes = false;
                where = "fails in dimension " + std::to_string(k);
                break;
            }
        }
        add("chain_map", commutes, where);
    }

    report.betti_coarse = betti_numbers(map.coarse);
    report.betti_fine = betti_numbers(map.fine);
    add("homology", report.betti_coarse == report.betti_fine, "");
    return report;
}

IncidenceStats incidence_stats(const Subdivision& sub, const Simplex& sigma)
{
    const auto& M = sub.fine();
    const Simplex s = make_simplex(sigma);
    const int k = static_cast<int>(s.size()) - 1;
    const std::size_t si = M.index(s);

    IncidenceStats stats;
    stats.simplex = s;
    stats.eligible = !sub.party_of(k, si).has_value();

    std::set<std::size_t> faces;
    for (const auto& t : M.simplices(k + 1))
    {
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
            continue;
        ++stats.incident;
        for (const auto& f : facets(t))
            if (f != s)
                faces.insert(M.index(f));
    }

    std::map<std::size_t, std::size_t> per_party;
    for (auto fi : faces)
        if (auto p = sub.party_of(k, fi))
            ++per_party[p->first];
    for (const auto& [party, n] : per_party)
        if (n == 1)
            ++stats.singly;
    return stats;
}

SubdivisionMap trivial_subdivision(const SimplicialComplex& K)
{
    SubdivisionMap map{K, K, {}};
    for (Vertex v : K.vertices())
        map.vertex_carrier.emplace(v, Simplex{v});
    return map;
}

SubdivisionMap stellar_subdivide(const SimplicialComplex& K, const Simplex& sigma)
{
    const Simplex s = make_simplex(sigma);
    if (!K.contains(s))
        throw Error(ErrorCode::SimplexNotFound, to_string(s));
    if (s.size() == 1)
        return trivial_subdivision(K);

    const Vertex v = K.vertices().back() + 1;
    std::vector<Simplex> maximal;
    for (const auto& tau : K.maximal_simplices())
    {
        if (!std::includes(tau.begin(), tau.end(), s.begin(), s.end()))
        {
            maximal.push_back(tau);
            continue;
        }
        Simplex rest;
        std::set_difference(tau.begin(), tau.end(), s.begin(), s.end(), std::back_inserter(rest));
        for (const auto& f : facets(s))
        {
            Simplex cone = union_of(f, rest);
            cone.push_back(v);
            maximal.push_back(make_simplex(std::move(cone)));
        }
    }

    SubdivisionMap map{K, build_complex(std::span<const Simplex>(maximal)), {}};
    for (Vertex u : K.vertices())
        map.vertex_carrier.emplace(u, Simplex{u});
    map.vertex_carrier.emplace(v, s);
    return map;
}

SubdivisionMap compose(const SubdivisionMap& first, const SubdivisionMap& second)
{
    if (!(first.fine == second.coarse))
        throw Error(ErrorCode::ComplexMismatch, "fine complex of the first subdivision is not the coarse complex of the second");

    auto carrier_in_first = [&](Vertex y) {
        auto it = first.vertex_carrier.find(y);
        return it != first.vertex_carrier.end() ? it->second : Simplex{y};
    };

    SubdivisionMap out{first.coarse, second.fine, {}};
    for (Vertex z : second.fine.vertices())
    {
        auto it = second.vertex_carrier.find(z);
        const Simplex tau = it != second.vertex_carrier.end() ? it->second : Simplex{z};
        Simplex c;
        for (Vertex y : tau)
            c = union_of(c, carrier_in_first(y));
        out.vertex_carrier.emplace(z, std::move(c));
    }
    return out;
}

SubdivisionMap relabel(const SubdivisionMap& map, const std::map<Vertex, Vertex>& perm)
{
    auto image = [&](Vertex v) {
        auto it = perm.find(v);
        return it == perm.end() ? v : it->second;
    };
    auto apply = [&](const Simplex& s) {
        Simplex t;
        for (Vertex v : s)
            t.push_back(image(v));
        return make_simplex(std::move(t));
    };
    auto apply_all = [&](const SimplicialComplex& K) {
        std::vector<Simplex> maximal;
        for (const auto& s : K.maximal_simplices())
            maximal.push_back(apply(s));
        return build_complex(std::span<const Simplex>(maximal));
    };

    SubdivisionMap out{apply_all(map.coarse), apply_all(map.fine), {}};
    for (const auto& [v, c] : map.vertex_carrier)
        out.vertex_carrier.emplace(image(v), apply(c));
    return out;
}

}   // namespace subdiv
