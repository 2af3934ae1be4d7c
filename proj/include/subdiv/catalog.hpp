#ifndef SUBDIV_CATALOG_HPP
#define SUBDIV_CATALOG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv::catalog {

/// The full d-simplex on vertices 0..d.
SimplicialComplex simplex(int d);

/// Boundary of the triangle [0,1,2].
SimplicialComplex triangle_boundary();

/// Delta^2 split into four triangles by the edge midpoints 3 = m01, 4 = m12, 5 = m02.
SubdivisionMap medial_triangle();

/// Intervals with vertices listed left to right: [0,4] -> {0,2,4} -> {0,1,2,4}.
SubdivisionMap interval_halves();     // [0,4] -> [0,2,4]
SubdivisionMap interval_quarters();   // [0,2,4] -> [0,1,2,4]

/// Delta^2 subdivided along the edge [0,1] with new vertex 3.
SubdivisionMap triangle_edge_stellar();

/**
 * Join of [0..k] with the boundary of a (d-k)-dimensional cross-polytope whose
 * antipodal pairs are (k+1+2j, k+2+2j); [0..k] is an interior simplex.
 */
SimplicialComplex interior_star(int d, int k);

struct CorpusEntry
{
    std::string name;
    SubdivisionMap map;
    bool elementary_stellar = false;   // one stellar move, new vertex carried by `center`
    Simplex center;
};

/**
 * Deterministic corpus of subdivisions: single stellar moves on simplices and
 * small complexes, chains of stellar moves, the medial triangle, medial
 * followed by stellar moves, and composites.
 */
std::vector<CorpusEntry> corpus(std::uint64_t seed = 20240611, std::size_t random_chains = 40);

}   // namespace subdiv::catalog

#endif
