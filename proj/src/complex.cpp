#include "subdiv/complex.hpp"

#include <algorithm>
#include <set>

#include "subdiv/error.hpp"

namespace subdiv {

Simplex make_simplex(std::vector<Vertex> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw Error(ErrorCode::InvalidSubdivision, "repeated vertex in simplex " + to_string(vertices));
    return vertices;
}

std::string to_string(const Simplex& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

std::vector<Simplex> facets(const Simplex& sigma)
{
    std::vector<Simplex> out;
    if (sigma.size() <= 1)
        return out;
    out.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
    {
        Simplex f;
        f.reserve(sigma.size() - 1);
        for (std::size_t j = 0; j < sigma.size(); ++j)
            if (j != i)
                f.push_back(sigma[j]);
        out.push_back(std::move(f));
    }
    return out;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const
{
    static const std::vector<Simplex> none;
    if (k < 0 || k > dim())
        return none;
    return by_dim_[static_cast<std::size_t>(k)];
}

std::size_t SimplicialComplex::count(int k) const noexcept
{
    if (k < 0 || k > dim())
        return 0;
    return by_dim_[static_cast<std::size_t>(k)].size();
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const
{
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > dim())
        return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(k)];
    auto it = idx.find(s);
    if (it == idx.end())
        return std::nullopt;
    return it->second;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    return find(s).has_value();
}

std::size_t SimplicialComplex::index(const Simplex& s) const
{
    auto i = find(s);
    if (!i)
        throw Error(ErrorCode::SimplexNotFound, to_string(s));
    return *i;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (int k = 0; k <= dim(); ++k)
    {
        std::set<Simplex> covered;
        for (const auto& t : simplices(k + 1))
            for (auto& f : facets(t))
                covered.insert(std::move(f));
        for (const auto& s : simplices(k))
            if (!covered.count(s))
                out.push_back(s);
    }
    return out;
}

SimplicialComplex build_complex(std::span<const Simplex> maximal_simplices)
{
    if (maximal_simplices.empty())
        throw Error(ErrorCode::EmptyInput, "no simplices given");

    std::vector<std::set<Simplex>> closure;
    for (const auto& raw : maximal_simplices)
    {
        if (raw.empty())
            throw Error(ErrorCode::EmptyInput, "empty vertex tuple");
        Simplex s = make_simplex(raw);
        // Every nonempty subset of s, enumerated by bitmask.
        const std::size_t n = s.size();
        if (n > 20)
            throw Error(ErrorCode::DimOutOfRange, "simplex dimension too large");
        if (closure.size() < n)
            closure.resize(n);
        for (unsigned long mask = 1; mask < (1UL << n); ++mask)
        {
            Simplex f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1UL << i))
                    f.push_back(s[i]);
            closure[f.size() - 1].insert(std::move(f));
        }
    }

    SimplicialComplex K;
    K.by_dim_.reserve(closure.size());
    K.index_.resize(closure.size());
    for (std::size_t k = 0; k < closure.size(); ++k)
    {
        K.by_dim_.emplace_back(closure[k].begin(), closure[k].end());
        for (std::size_t i = 0; i < K.by_dim_[k].size(); ++i)
            K.index_[k].emplace(K.by_dim_[k][i], i);
    }
    for (const auto& v : K.by_dim_[0])
        K.vertices_.push_back(v[0]);
    return K;
}

SimplicialComplex build_complex(std::initializer_list<Simplex> maximal_simplices)
{
    std::vector<Simplex> v(maximal_simplices);
    return build_complex(std::span<const Simplex>(v));
}

RationalMatrix boundary_matrix(const SimplicialComplex& K, int k)
{
    if (k < 1 || k > K.dim())
        throw Error(ErrorCode::DimOutOfRange, "boundary_matrix: k=" + std::to_string(k));
    const auto& top = K.simplices(k);
    RationalMatrix d(K.count(k - 1), top.size());
    for (std::size_t j = 0; j < top.size(); ++j)
    {
        const auto faces = facets(top[j]);
        for (std::size_t i = 0; i < faces.size(); ++i)
            d(K.index(faces[i]), j) = (i % 2 == 0) ? 1 : -1;
    }
    return d;
}

RationalMatrix boundary_or_zero(const SimplicialComplex& K, int k)
{
    if (k >= 1 && k <= K.dim())
        return boundary_matrix(K, k);
    return RationalMatrix(K.count(k - 1), K.count(k));
}

std::vector<std::size_t> face_vector(const SimplicialComplex& K)
{
    std::vector<std::size_t> s;
    for (int k = 0; k <= K.dim(); ++k)
        s.push_back(K.count(k));
    return s;
}

long euler_characteristic(const SimplicialComplex& K)
{
    long chi = 0;
    for (int k = 0; k <= K.dim(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(K.count(k));
    return chi;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& K)
{
    const int d = K.dim();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(d + 2), 0);   // ranks[k] = rank d_k
    for (int k = 1; k <= d; ++k)
        ranks[static_cast<std::size_t>(k)] = rank(boundary_matrix(K, k));
    std::vector<std::size_t> b;
    for (int k = 0; k <= d; ++k)
        b.push_back(K.count(k) - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k + 1)]);
    return b;
}

namespace {

bool is_subset(const Simplex& small, const Simplex& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const Simplex& a, const Simplex& b)
{
    for (auto v : a)
        if (std::binary_search(b.begin(), b.end(), v))
            return false;
    return true;
}

}   // namespace

SimplicialComplex star(const SimplicialComplex& K, const Simplex& sigma)
{
    const Simplex s = make_simplex(sigma);
    if (!K.contains(s))
        throw Error(ErrorCode::SimplexNotFound, to_string(s));
    std::vector<Simplex> cofaces;
    for (int k = static_cast<int>(s.size()) - 1; k <= K.dim(); ++k)
        for (const auto& t : K.simplices(k))
            if (is_subset(s, t))
                cofaces.push_back(t);
    return build_complex(std::span<const Simplex>(cofaces));
}

SimplicialComplex link(const SimplicialComplex& K, const Simplex& sigma)
{
    const Simplex s = make_simplex(sigma);
    const SimplicialComplex st = star(K, s);
    std::vector<Simplex> lk;
    for (int k = 0; k <= st.dim(); ++k)
        for (const auto& t : st.simplices(k))
            if (disjoint(s, t))
                lk.push_back(t);
    if (lk.empty())
        return {};
    return build_complex(std::span<const Simplex>(lk));
}

}   // namespace subdiv
