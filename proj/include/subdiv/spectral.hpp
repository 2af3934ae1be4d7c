#ifndef SUBDIV_SPECTRAL_HPP
#define SUBDIV_SPECTRAL_HPP

#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/decomposition.hpp"
#include "subdiv/matrix.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

/// Metric adjoint of d_k: G_k^{-1} d_k^T G_{k-1}.  Throws Error(MetricNotPD).
RationalMatrix adjoint_boundary(const RationalMatrix& G_k, const RationalMatrix& G_km1, const RationalMatrix& d_k);

struct LaplacianOperator
{
    int dim = 0;
    RationalMatrix matrix;
};

/// d*_k d_k + d_{k+1} d*_{k+1} in the metric G.  Throws Error(DimOutOfRange) outside [0, dim].
LaplacianOperator laplacian(const SimplicialComplex& K, const GramMetric& G, int k);

/// Exact dimension of the harmonic space ker of the k-Laplacian.
std::size_t harmonic_dimension(const SimplicialComplex& K, const GramMetric& G, int k);

struct HodgeParts
{
    std::vector<Rational> harmonic;
    std::vector<Rational> boundary;     // in im d_{k+1}
    std::vector<Rational> coboundary;   // in im d*_k
};

/// G-orthogonal splitting of a k-chain; exact.
HodgeParts hodge_decompose(const SimplicialComplex& K, const GramMetric& G, int k, const std::vector<Rational>& c);

struct CommuteReport
{
    GramMetric canonical;                   // g' on M
    std::vector<RationalMatrix> residual;   // i_* L_h - L_g' i_*, per dimension

    bool ok() const;
};

/// Checks that the inclusion intertwines the Laplacians of h and of the canonical metric.
CommuteReport commute_check(const Subdivision& sub, const GramMetric& h, const GramMetric& g);

}   // namespace subdiv

#endif
