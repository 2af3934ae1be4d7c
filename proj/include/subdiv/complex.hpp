#ifndef SUBDIV_COMPLEX_HPP
#define SUBDIV_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subdiv/matrix.hpp"

namespace subdiv {

using Vertex = int;
/// A simplex is its strictly increasing vertex tuple; orientation is the sorted order.
using Simplex = std::vector<Vertex>;

/// Sorts and validates a vertex tuple (throws Error(InvalidSubdivision) on repeats).
Simplex make_simplex(std::vector<Vertex> vertices);
std::string to_string(const Simplex& s);

/**
 * Finite abstract simplicial complex, immutable after construction.
 *
 * Simplices are stored per dimension in lexicographic order, which fixes the
 * basis of every chain space C_k.  A default-constructed complex is empty and
 * has dimension -1 (it arises as the link of a maximal simplex).
 */
class SimplicialComplex
{
    public:
        SimplicialComplex() = default;

        int dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
        bool empty() const noexcept { return by_dim_.empty(); }

        const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
        const std::vector<Simplex>& simplices(int k) const;
        /// s_k, zero outside [0, dim].
        std::size_t count(int k) const noexcept;

        bool contains(const Simplex& s) const;
        std::optional<std::size_t> find(const Simplex& s) const;
        /// Index of s within its dimension; throws Error(SimplexNotFound).
        std::size_t index(const Simplex& s) const;

        std::vector<Simplex> maximal_simplices() const;

        friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
        {
            return a.by_dim_ == b.by_dim_;
        }

    private:
        friend SimplicialComplex build_complex(std::span<const Simplex> maximal_simplices);

        std::vector<Vertex> vertices_;
        std::vector<std::vector<Simplex>> by_dim_;
        std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Face closure of the given simplices; throws Error(EmptyInput) when none are given.
SimplicialComplex build_complex(std::span<const Simplex> maximal_simplices);
SimplicialComplex build_complex(std::initializer_list<Simplex> maximal_simplices);

/**
 * Signed incidence matrix of d_k : C_k -> C_{k-1}, rows indexed by
 * (k-1)-simplices.  Removing the vertex in position i carries sign (-1)^i.
 * Valid for 1 <= k <= dim; throws Error(DimOutOfRange) otherwise.
 */
RationalMatrix boundary_matrix(const SimplicialComplex& K, int k);

/// Like boundary_matrix but returns the correctly shaped zero map outside [1, dim].
RationalMatrix boundary_or_zero(const SimplicialComplex& K, int k);

std::vector<std::size_t> face_vector(const SimplicialComplex& K);
long euler_characteristic(const SimplicialComplex& K);

/// Betti numbers over Q from exact ranks of the boundary maps.
std::vector<std::size_t> betti_numbers(const SimplicialComplex& K);

/// Closed star and link of sigma; throw Error(SimplexNotFound).
SimplicialComplex star(const SimplicialComplex& K, const Simplex& sigma);
SimplicialComplex link(const SimplicialComplex& K, const Simplex& sigma);

/// Faces of sigma of one dimension lower, in the order of the removed vertex.
std::vector<Simplex> facets(const Simplex& sigma);

}   // namespace subdiv

#endif
