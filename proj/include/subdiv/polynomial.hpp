#ifndef SUBDIV_POLYNOMIAL_HPP
#define SUBDIV_POLYNOMIAL_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/rational.hpp"

namespace subdiv {

/// Univariate polynomial over Q, coefficients in ascending degree.
class Polynomial
{
    public:
        Polynomial() = default;
        explicit Polynomial(std::vector<Rational> coeffs);
        static Polynomial constant(const Rational& c);
        /// x - r
        static Polynomial linear_root(const Rational& r);

        /// -1 for the zero polynomial.
        int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
        bool is_zero() const noexcept { return c_.empty(); }
        const std::vector<Rational>& coefficients() const noexcept { return c_; }
        Rational coefficient(int i) const;
        Rational leading() const;

        Rational operator()(const Rational& x) const;
        double evaluate(double x) const;

        Polynomial derivative() const;
        Polynomial monic() const;

        Polynomial& operator+=(const Polynomial& o);
        Polynomial& operator-=(const Polynomial& o);
        friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
        friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
        friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
        friend Polynomial operator*(const Rational& s, const Polynomial& a);
        friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

        std::string to_string() const;

    private:
        void trim();
        std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Unique polynomial of degree < n through n points with distinct abscissae.
Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/**
 * Yun's square-free factorization: returns (a_1, a_2, ...) with every a_i
 * square-free, pairwise coprime and f = lc(f) * prod a_i^i.
 */
std::vector<Polynomial> squarefree_factorization(const Polynomial& f);

/// Sturm chain p, p', -rem(p, p'), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& p);
/// Number of distinct real roots of p in (a, b], via Sturm sign variations.
int count_roots(const std::vector<Polynomial>& sturm, const Rational& a, const Rational& b);

struct RealRoot
{
    Rational lo;                        // certified isolating interval [lo, hi]
    Rational hi;
    std::optional<Rational> exact;      // set when the root is rational
    int multiplicity = 1;
    double value = 0.0;                 // midpoint of the refined interval
};

/**
 * All distinct real roots of q in ascending order.  Rational roots are found
 * exactly; the rest are isolated with Sturm sequences and refined by bisection
 * until the interval width is at most `width`.  Throws Error(ZeroPolynomial)
 * when q is identically zero.
 */
std::vector<RealRoot> real_roots(const Polynomial& q, double width = 1e-15);

}   // namespace subdiv

#endif
