#include "subdiv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiv/error.hpp"

namespace subdiv {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Polynomial Polynomial::constant(const Rational& c)
{
    return Polynomial(std::vector<Rational>{c});
}

Polynomial Polynomial::linear_root(const Rational& r)
{
    return Polynomial(std::vector<Rational>{-r, Rational(1)});
}

void Polynomial::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0)
        c_.pop_back();
}

Rational Polynomial::coefficient(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return c_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const
{
    return c_.empty() ? Rational(0) : c_.back();
}

Rational Polynomial::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    {
        acc *= x;
        acc += *it;
    }
    return acc;
}

double Polynomial::evaluate(double x) const
{
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + to_double(*it);
    return acc;
}

Polynomial Polynomial::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const
{
    if (c_.empty())
        return {};
    const Rational lc = c_.back();
    std::vector<Rational> m(c_);
    for (auto& x : m)
        x /= lc;
    return Polynomial(std::move(m));
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& a)
{
    std::vector<Rational> c(a.c_);
    for (auto& x : c)
        x *= s;
    return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i)
    {
        const Rational& a = c_[static_cast<std::size_t>(i)];
        if (sgn(a) == 0)
            continue;
        Rational mag = abs(a);
        os << (sgn(a) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (i == 0 || mag != 1)
            os << mag.get_str();
        if (i > 0)
            os << (i == 0 || mag != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "polynomial division by zero");
    std::vector<Rational> r(a.coefficients());
    const int db = b.degree();
    const Rational lb = b.leading();
    if (a.degree() < db)
        return {Polynomial{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i)
    {
        const Rational f = r[static_cast<std::size_t>(i)] / lb;
        q[static_cast<std::size_t>(i - db)] = f;
        if (sgn(f) == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(i - db + j)] -= f * b.coefficient(j);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    Polynomial x = a.monic(), y = b.monic();
    while (!y.is_zero())
    {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys)
{
    const std::size_t n = xs.size();
    // Newton divided differences, then expand the Newton form.
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
        {
            const Rational den = xs[i] - xs[i - level];
            if (sgn(den) == 0)
                throw Error(ErrorCode::Singular, "interpolation nodes must be distinct");
            dd[i] = (dd[i] - dd[i - 1]) / den;
        }

    Polynomial p;
    for (std::size_t i = n; i-- > 0;)
    {
        p = p * Polynomial::linear_root(xs[i]);
        p += Polynomial::constant(dd[i]);
    }
    return p;
}

std::vector<Polynomial> squarefree_factorization(const Polynomial& f)
{
    if (f.degree() <= 0)
        return {};
    const Polynomial fm = f.monic();
    const Polynomial fd = fm.derivative();
    const Polynomial a0 = gcd(fm, fd);
    Polynomial b = divmod(fm, a0).first;
    Polynomial c = divmod(fd, a0).first;
    Polynomial d = c - b.derivative();

    std::vector<Polynomial> out;
    while (b.degree() > 0)
    {
        const Polynomial a = gcd(b, d);
        out.push_back(a);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
    }
    return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p)
{
    std::vector<Polynomial> s{p, p.derivative()};
    while (!s.back().is_zero())
    {
        Polynomial r = divmod(s[s.size() - 2], s.back()).second;
        if (r.is_zero())
            break;
        // Positive rescaling keeps signs and tames coefficient growth.
        const Rational lc = abs(r.leading());
        s.push_back(-(Rational(1) / lc) * r);
    }
    if (s.back().is_zero())
        s.pop_back();
    return s;
}

namespace {

int sign_variations(const std::vector<Polynomial>& sturm, const Rational& x)
{
    int variations = 0, last = 0;
    for (const auto& p : sturm)
    {
        const int s = sgn(p(x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++variations;
        last = s;
    }
    return variations;
}

Rational cauchy_bound(const Polynomial& p)
{
    Rational m = 0;
    const Rational lc = abs(p.leading());
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, Rational(abs(p.coefficient(i)) / lc));
    return m + 1;
}

Integer primitive_leading(const Polynomial& p)
{
    Integer l = 1;
    for (const auto& c : p.coefficients())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> ints;
    for (const auto& c : p.coefficients())
    {
        Rational x = c * l;
        ints.push_back(x.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    Integer lead = ints.back() / g;
    return abs(lead);
}

// Convergents of the continued fraction of x whose denominators do not
// exceed `max_den`; a rational root p/q of an integer polynomial with leading
// coefficient L has q | L, and lies among these once the interval is narrow.
std::vector<Rational> convergents(const Rational& x, const Integer& max_den)
{
    std::vector<Rational> out;
    Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    Integer num = x.get_num(), den = x.get_den();
    while (den != 0)
    {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer h = a * h_prev + h_prev2;
        Integer k = a * k_prev + k_prev2;
        if (k > max_den)
            break;
        out.emplace_back(h, k);
        out.back().canonicalize();
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        Integer r = num - a * den;
        num = den;
        den = r;
    }
    return out;
}

struct Isolated
{
    Rational lo, hi;   // root in (lo, hi]
};

void isolate(const std::vector<Polynomial>& sturm, const Rational& lo, const Rational& hi,
             std::vector<Isolated>& out)
{
    const int n = count_roots(sturm, lo, hi);
    if (n == 0)
        return;
    if (n == 1)
    {
        out.push_back({lo, hi});
        return;
    }
    const Rational mid = (lo + hi) / 2;
    isolate(sturm, lo, mid, out);
    isolate(sturm, mid, hi, out);
}

}   // namespace

int count_roots(const std::vector<Polynomial>& sturm, const Rational& a, const Rational& b)
{
    return sign_variations(sturm, a) - sign_variations(sturm, b);
}

std::vector<RealRoot> real_roots(const Polynomial& q, double width)
{
    if (q.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "characteristic polynomial vanishes identically");

    std::vector<RealRoot> roots;
    const auto factors = squarefree_factorization(q);
    const Rational target_width(width);
    for (std::size_t i = 0; i < factors.size(); ++i)
    {
        const Polynomial& a = factors[i];
        if (a.degree() < 1)
            continue;
        const auto sturm = sturm_sequence(a);
        const Rational bound = cauchy_bound(a);
        std::vector<Isolated> intervals;
        isolate(sturm, -bound, bound, intervals);

        const Integer lead = primitive_leading(a);
        // Legendre: |x - p/q| < 1/(2 q^2) makes p/q a convergent of x.
        const Rational legendre_width = Rational(1) / (2 * lead * lead + 1);
        const Rational stop = std::min(target_width, legendre_width);

        for (const auto& iv : intervals)
        {
            RealRoot r;
            r.multiplicity = static_cast<int>(i) + 1;
            Rational lo = iv.lo, hi = iv.hi;
            if (sgn(a(hi)) == 0)
                r.exact = hi;
            while (!r.exact && hi - lo > stop)
            {
                const Rational mid = (lo + hi) / 2;
                if (sgn(a(mid)) == 0)
                {
                    r.exact = mid;
                    break;
                }
                if (count_roots(sturm, lo, mid) == 1)
                    hi = mid;
                else
                    lo = mid;
            }
            if (!r.exact)
            {
                for (const auto& c : convergents((lo + hi) / 2, lead))
                    if (c >= lo && c <= hi && sgn(a(c)) == 0)
                    {
                        r.exact = c;
                        break;
                    }
            }
            if (r.exact)
            {
                r.lo = r.hi = *r.exact;
                r.value = to_double(*r.exact);
            }
            else
            {
                r.lo = lo;
                r.hi = hi;
                r.value = to_double(Rational((lo + hi) / 2));
            }
            roots.push_back(std::move(r));
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& x, const RealRoot& y) { return x.value < y.value; });
    return roots;
}

}   // namespace subdiv
