#ifndef SUBDIV_RATIONAL_HPP
#define SUBDIV_RATIONAL_HPP

#include <string>

#include <gmpxx.h>

namespace subdiv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" form; integers are written with an explicit "/1".
std::string to_pq_string(const Rational& x);

/// Accepts "p", "p/q" or a plain decimal such as "-0.25".
Rational parse_rational(const std::string& text);

/// Nearest double (ties to even); mpq's get_d truncates instead.
double to_double(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

}   // namespace subdiv

#endif
