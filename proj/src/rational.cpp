#include "subdiv/rational.hpp"

#include <cctype>
#include <cmath>

#include "subdiv/error.hpp"

namespace subdiv {

std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::EmptyInput:           return "EmptyInput";
        case ErrorCode::DimOutOfRange:        return "DimOutOfRange";
        case ErrorCode::SimplexNotFound:      return "SimplexNotFound";
        case ErrorCode::InvalidSubdivision:   return "InvalidSubdivision";
        case ErrorCode::OrientationConflict:  return "OrientationConflict";
        case ErrorCode::DisconnectedParty:    return "DisconnectedParty";
        case ErrorCode::ComplexMismatch:      return "ComplexMismatch";
        case ErrorCode::MetricNotPD:          return "MetricNotPD";
        case ErrorCode::ConstructionFailed:   return "ConstructionFailed";
        case ErrorCode::DependentHyperplanes: return "DependentHyperplanes";
        case ErrorCode::ModeUnsupported:      return "ModeUnsupported";
        case ErrorCode::ZeroPolynomial:       return "ZeroPolynomial";
        case ErrorCode::NoLift:               return "NoLift";
        case ErrorCode::Disagreement:         return "Disagreement";
        case ErrorCode::IneligibleSimplex:    return "IneligibleSimplex";
        case ErrorCode::BadDescriptor:        return "BadDescriptor";
        case ErrorCode::Singular:             return "Singular";
        case ErrorCode::Parse:                return "Parse";
    }
    return "Unknown";
}

std::string to_pq_string(const Rational& x)
{
    Rational y(x);
    y.canonicalize();
    return y.get_num().get_str() + "/" + y.get_den().get_str();
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw Error(ErrorCode::Parse, "empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos)
    {
        // Decimal literal: read exactly, e.g. "-0.25" -> -1/4.
        bool negative = s[0] == '-';
        std::string digits = s.substr(negative || s[0] == '+' ? 1 : 0);
        dot = digits.find('.');
        std::string whole = digits.substr(0, dot) + digits.substr(dot + 1);
        if (whole.empty() || whole.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::Parse, "bad decimal literal '" + text + "'");
        Integer num(whole, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, digits.size() - dot - 1);
        Rational r(negative ? Integer(-num) : num, den);
        r.canonicalize();
        return r;
    }

    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw Error(ErrorCode::Parse, "bad rational literal '" + text + "'");
    r.canonicalize();
    return r;
}

double to_double(const Rational& x)
{
    if (sgn(x) == 0)
        return 0.0;
    const Integer num = abs(x.get_num());
    const Integer& den = x.get_den();
    // Scale so the integer quotient has 55 bits: 53 kept, one guard bit, one round bit.
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 55;
    auto quotient = [&](long shift, Integer& q, bool& sticky) {
        Integer n = num, d = den;
        if (shift < 0)
            n <<= static_cast<mp_bitcnt_t>(-shift);
        else
            d <<= static_cast<mp_bitcnt_t>(shift);
        Integer r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        sticky = r != 0;
    };
    Integer q;
    bool sticky = false;
    quotient(e, q, sticky);
    while (mpz_sizeinbase(q.get_mpz_t(), 2) < 55)
        quotient(--e, q, sticky);
    while (mpz_sizeinbase(q.get_mpz_t(), 2) > 55)
    {
        sticky = sticky || mpz_odd_p(q.get_mpz_t());
        q >>= 1;
        ++e;
    }
    Integer mantissa = q >> 2;
    const unsigned long low = mpz_get_ui(Integer(q & 3).get_mpz_t());
    if (low > 2 || (low == 2 && (sticky || mpz_odd_p(mantissa.get_mpz_t()))))
        ++mantissa;
    const double out = std::ldexp(mantissa.get_d(), static_cast<int>(e + 2));
    return sgn(x) < 0 ? -out : out;
}

}   // namespace subdiv
