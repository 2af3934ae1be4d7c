#ifndef SUBDIV_INVARIANTS_HPP
#define SUBDIV_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/decomposition.hpp"
#include "subdiv/matrix.hpp"
#include "subdiv/polynomial.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

/**
 * L = pi o d: rows are the k-parties of N (raw party chains, not normalized),
 * columns the (k+1)-simplices of M.  `restricted` is L applied to the basis
 * of V_{k+1} stored in `basis`.
 */
struct LOperator
{
    int dim = 0;
    RationalMatrix raw;
    RationalMatrix basis;
    RationalMatrix restricted;
};

LOperator operator_L(const Subdivision& sub, int k, const Decomposition& dec);
LOperator operator_L(const Subdivision& sub, int k);

/// Columns are the party chains in C_{k+1}(M) followed by a basis of dV_{k+2}.
struct HyperplaneSet
{
    int dim = 0;                    // k: the hyperplanes live in C_{k+1}(M)
    RationalMatrix A;
    std::size_t party_columns = 0;
    std::size_t boundary_columns = 0;
};

/// Throws Error(DependentHyperplanes) if the columns are not independent.
HyperplaneSet build_hyperplanes(const Subdivision& sub, int k, const Decomposition& dec);
HyperplaneSet build_hyperplanes(const Subdivision& sub, int k);

enum class PencilMode { Projector, Member };

std::string_view to_string(PencilMode mode);
/// Throws Error(BadDescriptor) for an unknown name.
PencilMode parse_pencil_mode(const std::string& name);

enum class RowOrigin { Stationarity, Hyperplane };

/**
 * Square pencil M(l) = M0 + l M1 in z, the (k+1)-chains of M written in
 * induced coordinates (each party member scaled by its sign).  F, G and A are
 * the functional |Lz|^2, the ellipsoid |dz|^2 and the hyperplane normals in
 * the same coordinates.  The eliminated multipliers are mu(l, z) = (Mu0 + l Mu1) z.
 */
struct PencilSystem
{
    int dim = 0;
    PencilMode mode = PencilMode::Projector;
    RationalMatrix M0, M1;
    RationalMatrix F, G, A;
    std::vector<int> signs;             // diagonal of the change to induced coordinates
    std::vector<RowOrigin> origin;      // per row of M
    std::vector<std::size_t> source;    // stationarity rows: index of the equation used; hyperplane rows: column of A
    RationalMatrix Mu0, Mu1;

    std::size_t size() const noexcept { return M0.rows(); }
    RationalMatrix at(const Rational& lambda) const;
};

/**
 * Builds the pencil.  Projector mode keeps an independent set of rows of
 * P(2F - 2lG), P the projector onto the complement of the hyperplane normals,
 * chosen at a random rational l and confirmed at a second one.  Member mode
 * (codimension one only; otherwise Error(ModeUnsupported)) subtracts, for each
 * party, the equation of its last member from those of the other members.
 */
PencilSystem pencil(const Subdivision& sub, int k, PencilMode mode, const Decomposition& dec, std::uint64_t seed = 1);
PencilSystem pencil(const Subdivision& sub, int k, PencilMode mode, std::uint64_t seed = 1);

/// det M(l), exactly, by interpolation through fraction-free determinants.
Polynomial char_poly(const PencilSystem& p);

struct Lift
{
    std::vector<double> z;                      // simplex coordinates, normalized to z^T G z = 1
    std::optional<std::vector<Rational>> exact; // unnormalized, simplex coordinates, rational roots only
    double functional = 0.0;                    // z^T F z on the ellipsoid
    double residual = 0.0;                      // Lagrange residual, relative
    std::size_t kernel_dimension = 0;
};

/// Lifts a root to a stationary point on the ellipsoid; empty if it does not lift.
std::optional<Lift> try_lift(const PencilSystem& p, const RealRoot& root);
/// As try_lift but throws Error(NoLift).
Lift lift_check(const PencilSystem& p, const RealRoot& root);

/// Largest generalized eigenvalue of (B^T F B, B^T G B) over a basis B of V_{k+1}.
double eigen_oracle(const Subdivision& sub, int k, const Decomposition& dec);
double eigen_oracle(const Subdivision& sub, int k);

/// Square of the literal definition: true orthogonal projection onto im i_*.
double ck_definitional_squared(const Subdivision& sub, int k, const Decomposition& dec);
double ck_definitional(const Subdivision& sub, int k);

struct LowerBound
{
    bool hypothesis = false;            // s_{k+1}(M) > s_{k+1}(N) and an eligible simplex exists
    std::optional<Simplex> simplex;     // maximizing simplex
    std::size_t incident = 0;           // F
    std::size_t singly = 0;             // N
    Rational squared = 0;               // N / (F (F + k + 1))
    double value = 0.0;
};

/// Throws Error(IneligibleSimplex) if sigma lies on a k-party.
LowerBound lower_bound(const Subdivision& sub, int k, const std::optional<Simplex>& sigma = std::nullopt);

struct InvariantOptions
{
    PencilMode mode = PencilMode::Projector;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    bool definitional = true;
};

struct InvariantReport
{
    int k = 0;
    PencilMode mode = PencilMode::Projector;
    bool short_circuit = false;             // dim V_{k+1} = 0
    bool degenerate = false;                // Q vanished identically; oracle value used
    std::size_t dim_V = 0;
    double lambda_max = 0.0;
    std::optional<Rational> lambda_exact;
    double c_k = 0.0;
    Polynomial Q;
    std::vector<RealRoot> roots;
    std::vector<bool> lifted;
    std::vector<double> certificate;
    double certificate_value = 0.0;         // f at the certificate
    double oracle_value = 0.0;
    double oracle_residual = 0.0;
    LowerBound bound;
    std::optional<double> definitional_squared;
    std::optional<double> definitional_value;
};

/**
 * C_k by the pencil route, cross-checked against eigen_oracle.  Throws
 * Error(DimOutOfRange) unless 0 <= k < dim, Error(Disagreement) if the two
 * routes differ by more than the tolerance.
 */
InvariantReport compute_ck(const Subdivision& sub, int k, const InvariantOptions& options, const Decomposition& dec);
InvariantReport compute_ck(const Subdivision& sub, int k, const InvariantOptions& options = {});

namespace stellar {

RationalMatrix J(int k);
RationalMatrix A(const Rational& m, int k);
/// R^levels(a): block matrix with R^j on the diagonal and -I off it.
RationalMatrix R(const RationalMatrix& a, int levels);
RationalMatrix M(int d, int k, int levels);
RationalMatrix N(int d, int k, int levels);
/// v_{k,0} = 1_k, v_{k,i+1} = v_{k,i} (+) -v_{k,i}.
std::vector<Rational> alternating_vector(int k, int i);
/// Deletes rows/columns 1 + j*block (1-based) of P^{-1} X P, P = diag(J_block, ...).
RationalMatrix reduced_minor(const RationalMatrix& x, int block);

struct Interval
{
    Rational lo, hi;
};

/// Union of Gersgorin row discs of a symmetric matrix, as an interval.
Interval gersgorin(const RationalMatrix& x);

enum class Case { Isolated, Interior };

struct Descriptor
{
    Case kind = Case::Isolated;
    int d = 0;
    int k = 0;
};

/// Parses "isolated:d,k" or "interior:d,k"; throws Error(BadDescriptor).
Descriptor parse_descriptor(const std::string& text);

struct ClosedForm
{
    Descriptor descriptor;
    RationalMatrix top_gram;        // d^T d on the top simplices around the new vertex
    RationalMatrix minor;           // reduced minor describing the intersection locus
    Rational c_squared;             // expected C_{d-1}^2
    Rational eigen_min, eigen_max;  // extreme eigenvalues of the minor
    std::vector<Rational> eigvec_min, eigvec_max;
    Interval norm_squared;          // range of |z|^2 on the locus
    Interval gersgorin;             // [d+2-mu, d+2+mu], mu = d-k off-diagonal -1 per row
};

/// Throws Error(BadDescriptor) unless 1 <= k <= d (isolated) or 1 <= k < d (interior).
ClosedForm closed_form(const Descriptor& descriptor);

}   // namespace stellar

}   // namespace subdiv

#endif
