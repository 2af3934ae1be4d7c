#include "subdiv/spectral.hpp"

#include <algorithm>

#include "subdiv/error.hpp"

namespace subdiv {

RationalMatrix adjoint_boundary(const RationalMatrix& G_k, const RationalMatrix& G_km1, const RationalMatrix& d_k)
{
    if (!G_k.is_symmetric() || !is_positive_definite(G_k) || !G_km1.is_symmetric() || !is_positive_definite(G_km1))
        throw Error(ErrorCode::MetricNotPD, "adjoint needs positive definite metrics");
    if (d_k.cols() == 0 || d_k.rows() == 0)
        return RationalMatrix(d_k.cols(), d_k.rows());
    return solve(G_k, d_k.transpose() * G_km1);
}

namespace {

RationalMatrix adjoint_at(const SimplicialComplex& K, const GramMetric& G, int k)
{
    return adjoint_boundary(G[k], G[k - 1], boundary_or_zero(K, k));
}

// G-orthogonal projection onto the column span of A.
std::vector<Rational> project(const RationalMatrix& A, const RationalMatrix& G, const std::vector<Rational>& c)
{
    if (A.cols() == 0)
        return std::vector<Rational>(c.size());
    const auto B = A.select_cols(independent_columns(A));
    if (B.cols() == 0)
        return std::vector<Rational>(c.size());
    const RationalMatrix rhs = B.transpose() * G * RationalMatrix::column_vector(c);
    const RationalMatrix coeffs = solve(B.transpose() * G * B, rhs);
    return (B * coeffs).column(0);
}

}   // namespace

LaplacianOperator laplacian(const SimplicialComplex& K, const GramMetric& G, int k)
{
    if (k < 0 || k > K.dim())
        throw Error(ErrorCode::DimOutOfRange, "laplacian: k=" + std::to_string(k));
    const std::size_t n = K.count(k);
    RationalMatrix L(n, n);
    if (k >= 1)
        L += adjoint_at(K, G, k) * boundary_matrix(K, k);
    if (k + 1 <= K.dim())
        L += boundary_matrix(K, k + 1) * adjoint_at(K, G, k + 1);
    return {k, L};
}

std::size_t harmonic_dimension(const SimplicialComplex& K, const GramMetric& G, int k)
{
    return K.count(k) - rank(laplacian(K, G, k).matrix);
}

HodgeParts hodge_decompose(const SimplicialComplex& K, const GramMetric& G, int k, const std::vector<Rational>& c)
{
    if (k < 0 || k > K.dim())
        throw Error(ErrorCode::DimOutOfRange, "hodge_decompose: k=" + std::to_string(k));
    if (c.size() != K.count(k))
        throw Error(ErrorCode::DimOutOfRange, "chain has the wrong length");
    HodgeParts parts;
    parts.boundary = project(boundary_or_zero(K, k + 1), G[k], c);
    parts.coboundary = k >= 1 ? project(adjoint_at(K, G, k), G[k], c) : std::vector<Rational>(c.size());
    parts.harmonic = c;
    for (std::size_t i = 0; i < c.size(); ++i)
        parts.harmonic[i] -= parts.boundary[i] + parts.coboundary[i];
    return parts;
}

bool CommuteReport::ok() const
{
    return std::all_of(residual.begin(), residual.end(), [](const RationalMatrix& r) { return r.is_zero(); });
}

CommuteReport commute_check(const Subdivision& sub, const GramMetric& h, const GramMetric& g)
{
    CommuteReport report;
    report.canonical = canonical_gram(sub, h, g);
    for (int k = 0; k <= sub.dim(); ++k)
    {
        const auto& I = sub.inclusion(k);
        const auto Lh = laplacian(sub.coarse(), h, k).matrix;
        const auto Lg = laplacian(sub.fine(), report.canonical, k).matrix;
        report.residual.push_back(I * Lh - Lg * I);
    }
    return report;
}

}   // namespace subdiv
