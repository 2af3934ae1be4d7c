#ifndef SUBDIV_DECOMPOSITION_HPP
#define SUBDIV_DECOMPOSITION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/matrix.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

/// Inner product on every chain space of a complex, as Gram matrices in the simplex basis.
struct GramMetric
{
    std::vector<RationalMatrix> by_dim;

    /// The metric in which simplices are orthonormal.
    static GramMetric standard(const SimplicialComplex& K);

    /// Gram matrix on C_k; a 0x0 matrix outside the stored range.
    const RationalMatrix& operator[](int k) const;

    /// Throws Error(MetricNotPD) unless every matrix is square of size s_k, symmetric and positive definite.
    void validate(const SimplicialComplex& K) const;
};

enum class BasisLabel { ImI, V, DV, Other };

std::string_view to_string(BasisLabel label);

/// Linearly independent chains in C_k(M), stored as the columns of `vectors`.
struct ChainBasis
{
    int dim = 0;
    BasisLabel label = BasisLabel::Other;
    RationalMatrix vectors;

    std::size_t size() const noexcept { return vectors.cols(); }
};

/**
 * C_k(M) = (im i_* + dV_{k+1}) + V_k, with V_k the g-orthogonal complement of
 * the first two summands; computed from the top dimension down.
 */
struct Decomposition
{
    std::vector<ChainBasis> image;      // im i_* in C_k(M)
    std::vector<ChainBasis> boundary;   // d V_{k+1} in C_k(M)
    std::vector<ChainBasis> V;          // V_k

    const ChainBasis& V_at(int k) const;
    const ChainBasis& boundary_at(int k) const;
};

/// Throws Error(MetricNotPD) for a bad metric and Error(ConstructionFailed) if the direct sum check fails.
Decomposition compute_V(const Subdivision& sub, const GramMetric& g);
Decomposition compute_V(const Subdivision& sub);

/// Alternating-sum prediction of dim V_k from the face vectors alone.
long dim_V_formula(const Subdivision& sub, int k);

/// {d^T v} over the new vertices v, in ascending vertex order.
ChainBasis basis_V1(const Subdivision& sub);

/// Spanning forest over the interior new vertices of one party of dimension >= 2.
struct TreeAnchorData
{
    Simplex party;
    std::vector<Vertex> interior;           // new vertices carried by the party
    std::vector<Simplex> tree_edges;
    std::vector<Simplex> anchors;           // one per component of the forest
};

struct BasisV2
{
    ChainBasis basis;
    std::vector<TreeAnchorData> trees;
    std::vector<Simplex> edges;             // the e_j whose coboundaries form the basis
    std::size_t on_edge_parties = 0;        // T: new vertices carried by coarse edges
    std::size_t off_edge_parties = 0;       // F: new vertices carried by higher simplices
    bool fallback = false;                  // true when the exact-kernel basis was substituted
    std::string note;
};

/**
 * Coboundaries of the edges left after removing edges on 1-parties and one
 * spanning forest plus anchors per higher party.  The result always spans
 * V_2; if the construction fails the exact-kernel basis is returned with
 * `fallback` set and the reason in `note`.
 */
BasisV2 basis_V2(const Subdivision& sub);

/**
 * Metric on C_*(M) making im i_*, dV_{k+1} and V_k mutually orthogonal,
 * pulling back to h on im i_* and agreeing with g on the other two summands.
 * Throws Error(MetricNotPD).
 */
GramMetric canonical_gram(const Subdivision& sub, const GramMetric& h, const GramMetric& g);

}   // namespace subdiv

#endif
