#ifndef SUBDIV_SUBDIVISION_HPP
#define SUBDIV_SUBDIVISION_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/matrix.hpp"

namespace subdiv {

/**
 * Combinatorial description of a subdivision i: N -> M.
 *
 * vertex_carrier maps every fine vertex to the smallest coarse simplex
 * containing it.  Old vertices may be omitted; they default to being carried
 * by themselves.
 */
struct SubdivisionMap
{
    SimplicialComplex coarse;
    SimplicialComplex fine;
    std::map<Vertex, Simplex> vertex_carrier;
};

/// carriers[k][j] is the coarse carrier of the j-th fine k-simplex.
using CarrierMap = std::vector<std::vector<Simplex>>;

/**
 * Carrier of each fine simplex: the coarse simplex spanned by the union of its
 * vertices' carriers.  Throws Error(InvalidSubdivision) if a vertex carrier is
 * missing or not a coarse simplex, if some union is not a coarse simplex, if
 * a fine simplex collapses onto a lower-dimensional carrier, or if an old
 * vertex is not carried by itself.
 */
CarrierMap derive_carriers(const SubdivisionMap& sub);

/// A k-party: the fine k-simplices carried by one coarse k-simplex, with induced-orientation signs.
struct Party
{
    int dim = 0;
    Simplex carrier;
    std::size_t carrier_index = 0;          // index in N's k-simplices
    std::vector<std::size_t> members;       // indices in M's k-simplices, ascending
    std::vector<int> signs;                 // +1 / -1, parallel to members
};

/**
 * A validated subdivision together with its derived data: carriers, parties
 * in every dimension and the chain inclusions i_*.  Immutable; construction
 * throws the errors of derive_carriers and the party derivation
 * (OrientationConflict, DisconnectedParty, InvalidSubdivision).
 */
class Subdivision
{
    public:
        explicit Subdivision(SubdivisionMap map);

        const SubdivisionMap& map() const noexcept { return map_; }
        const SimplicialComplex& coarse() const noexcept { return map_.coarse; }
        const SimplicialComplex& fine() const noexcept { return map_.fine; }
        int dim() const noexcept { return map_.fine.dim(); }

        const CarrierMap& carriers() const noexcept { return carriers_; }
        const Simplex& carrier(int k, std::size_t fine_index) const;

        const std::vector<Party>& parties(int k) const;
        /// Party index and sign of a fine k-simplex, if it is a member of some k-party.
        std::optional<std::pair<std::size_t, int>> party_of(int k, std::size_t fine_index) const;

        /// Columns are the party chains; shape s_k(M) x s_k(N).  Zero-sized outside [0, dim].
        const RationalMatrix& inclusion(int k) const;

        /// Fine vertices that are not coarse vertices, ascending.
        std::vector<Vertex> new_vertices() const;

    private:
        void derive_parties();

        SubdivisionMap map_;
        CarrierMap carriers_;
        std::vector<std::vector<Party>> parties_;
        std::vector<std::vector<std::optional<std::pair<std::size_t, int>>>> membership_;
        std::vector<RationalMatrix> inclusion_;
};

const std::vector<Party>& parties(const Subdivision& sub, int k);
const RationalMatrix& inclusion_matrix(const Subdivision& sub, int k);

struct ValidationCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;
    std::vector<std::size_t> betti_coarse;
    std::vector<std::size_t> betti_fine;

    bool ok() const;
};

/// Runs every hypothesis check and reports; never throws for invalid input.
ValidationReport validate_subdivision(const SubdivisionMap& map);

struct IncidenceStats
{
    Simplex simplex;
    std::size_t incident = 0;   // F: incident (k+1)-simplices
    std::size_t singly = 0;     // N: faces of those on singly represented parties
    bool eligible = false;      // false when the simplex lies on a k-party
};

/// Throws Error(SimplexNotFound) if sigma is not a fine simplex.
IncidenceStats incidence_stats(const Subdivision& sub, const Simplex& sigma);

/// Identity subdivision of K.
SubdivisionMap trivial_subdivision(const SimplicialComplex& K);

/**
 * Elementary stellar subdivision of K along sigma with a fresh vertex
 * (max vertex id + 1) carried by sigma.  Along a vertex the result is the
 * trivial subdivision.  Throws Error(SimplexNotFound).
 */
SubdivisionMap stellar_subdivide(const SimplicialComplex& K, const Simplex& sigma);

/**
 * Composite X -> Z of X -> Y and Y -> Z.  Carriers compose; parties of the
 * composite are derived afresh when it is wrapped in a Subdivision.
 * Throws Error(ComplexMismatch) when fine(first) != coarse(second).
 */
SubdivisionMap compose(const SubdivisionMap& first, const SubdivisionMap& second);

/**
 * Applies a vertex relabeling to both complexes and the carriers.  The
 * permutation must be injective on the vertices in use.
 */
SubdivisionMap relabel(const SubdivisionMap& map, const std::map<Vertex, Vertex>& perm);

}   // namespace subdiv

#endif
