#include "subdiv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "subdiv/error.hpp"

namespace subdiv {

namespace {

void check_codimension(const Subdivision& sub, int k)
{
    if (k < 0 || k >= sub.dim())
        throw Error(ErrorCode::DimOutOfRange,
                    "k=" + std::to_string(k) + " outside [0, " + std::to_string(sub.dim() - 1) + "]");
}

RationalMatrix signed_diagonal(const std::vector<int>& signs)
{
    RationalMatrix E(signs.size(), signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i)
        E(i, i) = signs[i];
    return E;
}

std::vector<Rational> apply_signs(const std::vector<int>& signs, const std::vector<Rational>& z)
{
    std::vector<Rational> out(z);
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] *= signs[i];
    return out;
}

double largest_generalized_eigenvalue(const RationalMatrix& F, const RationalMatrix& G)
{
    if (F.rows() == 0)
        return 0.0;
    if (!is_positive_definite(G))
        throw Error(ErrorCode::MetricNotPD, "ellipsoid form is not positive definite on V");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(F.to_eigen(), G.to_eigen());
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::ConstructionFailed, "generalized eigensolver did not converge");
    return solver.eigenvalues().maxCoeff();
}

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(1, 100003), den(1, 99991);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

}   // namespace

LOperator operator_L(const Subdivision& sub, int k, const Decomposition& dec)
{
    check_codimension(sub, k);
    LOperator L;
    L.dim = k;
    L.raw = sub.inclusion(k).transpose() * boundary_matrix(sub.fine(), k + 1);
    L.basis = dec.V_at(k + 1).vectors;
    L.restricted = L.raw * L.basis;
    return L;
}

LOperator operator_L(const Subdivision& sub, int k)
{
    return operator_L(sub, k, compute_V(sub));
}

HyperplaneSet build_hyperplanes(const Subdivision& sub, int k, const Decomposition& dec)
{
    check_codimension(sub, k);
    HyperplaneSet h;
    h.dim = k;
    const auto& I = sub.inclusion(k + 1);
    const auto& D = dec.boundary_at(k + 1).vectors;
    h.A = hstack(I, D);
    h.party_columns = I.cols();
    h.boundary_columns = D.cols();
    if (rank(h.A) != h.A.cols())
        throw Error(ErrorCode::DependentHyperplanes, "hyperplane normals in dimension " + std::to_string(k + 1));
    return h;
}

HyperplaneSet build_hyperplanes(const Subdivision& sub, int k)
{
    return build_hyperplanes(sub, k, compute_V(sub));
}

std::string_view to_string(PencilMode mode)
{
    return mode == PencilMode::Member ? "member" : "projector";
}

PencilMode parse_pencil_mode(const std::string& name)
{
    if (name == "projector")
        return PencilMode::Projector;
    if (name == "member")
        return PencilMode::Member;
    throw Error(ErrorCode::BadDescriptor, "unknown pencil mode '" + name + "'");
}

RationalMatrix PencilSystem::at(const Rational& lambda) const
{
    return M0 + lambda * M1;
}

PencilSystem pencil(const Subdivision& sub, int k, PencilMode mode, const Decomposition& dec, std::uint64_t seed)
{
    check_codimension(sub, k);
    if (mode == PencilMode::Member && k + 1 != sub.dim())
        throw Error(ErrorCode::ModeUnsupported, "member elimination needs codimension one");

    const auto& M = sub.fine();
    const std::size_t n = M.count(k + 1);
    PencilSystem p;
    p.dim = k;
    p.mode = mode;
    p.signs.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        if (auto member = sub.party_of(k + 1, i))
            p.signs[i] = member->second;

    const RationalMatrix E = signed_diagonal(p.signs);
    const RationalMatrix L = sub.inclusion(k).transpose() * boundary_matrix(M, k + 1);
    const RationalMatrix d = boundary_matrix(M, k + 1);
    p.F = E * (L.transpose() * L) * E;
    p.G = E * (d.transpose() * d) * E;
    p.A = E * build_hyperplanes(sub, k, dec).A;
    const std::size_t m = p.A.cols();

    const RationalMatrix S0 = Rational(2) * p.F;
    const RationalMatrix S1 = Rational(-2) * p.G;   // rows of 2F - 2lG
    const RationalMatrix AtA_inv_At = solve(p.A.transpose() * p.A, p.A.transpose());
    p.Mu0 = AtA_inv_At * S0;
    p.Mu1 = AtA_inv_At * S1;

    RationalMatrix R0, R1;
    if (mode == PencilMode::Projector)
    {
        const RationalMatrix Pi = RationalMatrix::identity(n) - p.A * AtA_inv_At;
        const RationalMatrix P0 = Pi * S0, P1 = Pi * S1;
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> rows;
        for (int attempt = 0; attempt < 8 && rows.empty(); ++attempt)
        {
            const Rational l1 = random_rational(rng), l2 = random_rational(rng);
            auto candidate = independent_rows(P0 + l1 * P1);
            if (candidate.size() != n - m)
                continue;
            if (rank((P0 + l2 * P1).select_rows(candidate)) != n - m)
                continue;
            rows = std::move(candidate);
        }
        if (rows.size() != n - m && n != m)
            throw Error(ErrorCode::ConstructionFailed, "no independent stationarity rows found");
        R0 = P0.select_rows(rows);
        R1 = P1.select_rows(rows);
        p.source = rows;
    }
    else
    {
        R0 = RationalMatrix(n - m, n);
        R1 = RationalMatrix(n - m, n);
        std::size_t r = 0;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;   // (member, selected member of its party)
        for (const auto& party : sub.parties(k + 1))
            for (std::size_t i = 0; i + 1 < party.members.size(); ++i)
                pairs.emplace_back(party.members[i], party.members.back());
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [i, sel] : pairs)
        {
            for (std::size_t c = 0; c < n; ++c)
            {
                R0(r, c) = S0(i, c) - S0(sel, c);
                R1(r, c) = S1(i, c) - S1(sel, c);
            }
            p.source.push_back(i);
            ++r;
        }
    }
    p.origin.assign(R0.rows(), RowOrigin::Stationarity);
    p.M0 = vstack(R0, p.A.transpose());
    p.M1 = vstack(R1, RationalMatrix(m, n));
    for (std::size_t j = 0; j < m; ++j)
    {
        p.origin.push_back(RowOrigin::Hyperplane);
        p.source.push_back(j);
    }
    if (p.M0.rows() != n)
        throw Error(ErrorCode::ConstructionFailed, "pencil is not square");
    return p;
}

PencilSystem pencil(const Subdivision& sub, int k, PencilMode mode, std::uint64_t seed)
{
    return pencil(sub, k, mode, compute_V(sub), seed);
}

Polynomial char_poly(const PencilSystem& p)
{
    std::size_t degree = 0;
    for (std::size_t i = 0; i < p.M1.rows(); ++i)
    {
        bool nonzero = false;
        for (std::size_t j = 0; j < p.M1.cols() && !nonzero; ++j)
            nonzero = !is_zero(p.M1(i, j));
        degree += nonzero;
    }
    std::vector<Rational> xs, ys;
    for (std::size_t t = 0; t <= degree; ++t)
    {
        xs.emplace_back(static_cast<long>(t));
        ys.push_back(determinant(p.at(xs.back())));
    }
    return interpolate(xs, ys);
}

namespace {

// Relative Lagrange residual |(2F - 2lG) z - A mu| / |(2F - 2lG) z| (or absolute if that vanishes).
double lagrange_residual(const PencilSystem& p, double lambda, const Eigen::VectorXd& z)
{
    const Eigen::MatrixXd S = 2.0 * p.F.to_eigen() - 2.0 * lambda * p.G.to_eigen();
    const Eigen::VectorXd grad = S * z;
    Eigen::VectorXd r = grad;
    if (p.A.cols() > 0)
    {
        const Eigen::VectorXd mu = (p.Mu0.to_eigen() + lambda * p.Mu1.to_eigen()) * z;
        r -= p.A.to_eigen() * mu;
        r.conservativeResize(r.size() + static_cast<Eigen::Index>(p.A.cols()));
        r.tail(static_cast<Eigen::Index>(p.A.cols())) = p.A.to_eigen().transpose() * z;
    }
    const double scale = std::max(1.0, grad.norm());
    return r.norm() / scale;
}

std::vector<double> to_simplex_coordinates(const PencilSystem& p, const Eigen::VectorXd& z)
{
    std::vector<double> out(static_cast<std::size_t>(z.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = p.signs[i] * z(static_cast<Eigen::Index>(i));
    return out;
}

}   // namespace

std::optional<Lift> try_lift(const PencilSystem& p, const RealRoot& root)
{
    Lift lift;
    const std::size_t n = p.size();
    if (n == 0)
        return std::nullopt;

    Eigen::VectorXd z;
    if (root.exact)
    {
        const RationalMatrix K = kernel(p.at(*root.exact));
        lift.kernel_dimension = K.cols();
        if (K.cols() == 0)
            return std::nullopt;
        // Since G is semidefinite, the kernel meets the ellipsoid iff K^T G K != 0.
        const RationalMatrix KGK = K.transpose() * p.G * K;
        if (KGK.is_zero())
            return std::nullopt;
        std::optional<std::vector<Rational>> best;
        Rational best_norm = 0;
        for (std::size_t j = 0; j < K.cols(); ++j)
            if (sgn(KGK(j, j)) > 0 && (!best || KGK(j, j) > best_norm))
            {
                best = K.column(j);
                best_norm = KGK(j, j);
            }
        if (!best)
            best = (K * RationalMatrix::column_vector(std::vector<Rational>(K.cols(), 1))).column(0);
        // Exact stationarity: (2F - 2lG) z lies in the span of A and A^T z = 0.
        const RationalMatrix zc = RationalMatrix::column_vector(*best);
        const RationalMatrix grad = (Rational(2) * p.F - (Rational(2) * *root.exact) * p.G) * zc;
        const RationalMatrix mu = (p.Mu0 + *root.exact * p.Mu1) * zc;
        if (!(grad - p.A * mu).is_zero() || !(p.A.transpose() * zc).is_zero())
            return std::nullopt;
        lift.exact = apply_signs(p.signs, *best);
        z = zc.to_eigen().col(0);
    }
    else
    {
        const Eigen::MatrixXd Md = p.M0.to_eigen() + root.value * p.M1.to_eigen();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Md, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const double smax = std::max(1.0, s(0));
        std::vector<Eigen::Index> null_cols;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) <= 1e-8 * smax)
                null_cols.push_back(i);
        lift.kernel_dimension = null_cols.size();
        if (null_cols.empty())
            return std::nullopt;
        Eigen::MatrixXd K(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(null_cols.size()));
        for (std::size_t j = 0; j < null_cols.size(); ++j)
            K.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(null_cols[j]);
        const Eigen::MatrixXd KGK = K.transpose() * p.G.to_eigen() * K;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(KGK);
        if (es.eigenvalues().maxCoeff() <= 1e-10)
            return std::nullopt;
        z = K * es.eigenvectors().col(es.eigenvalues().size() - 1);
    }

    const Eigen::MatrixXd Gd = p.G.to_eigen();
    const double norm2 = z.dot(Gd * z);
    if (norm2 <= 0.0)
        return std::nullopt;
    z /= std::sqrt(norm2);
    lift.residual = lagrange_residual(p, root.value, z);
    if (lift.residual > 1e-6)
        return std::nullopt;
    lift.functional = z.dot(p.F.to_eigen() * z);
    lift.z = to_simplex_coordinates(p, z);
    return lift;
}

Lift lift_check(const PencilSystem& p, const RealRoot& root)
{
    auto lift = try_lift(p, root);
    if (!lift)
        throw Error(ErrorCode::NoLift, "root " + std::to_string(root.value) + " does not lift to the ellipsoid");
    return *lift;
}

double eigen_oracle(const Subdivision& sub, int k, const Decomposition& dec)
{
    check_codimension(sub, k);
    const auto& B = dec.V_at(k + 1).vectors;
    if (B.cols() == 0)
        return 0.0;
    const RationalMatrix LB = sub.inclusion(k).transpose() * boundary_matrix(sub.fine(), k + 1) * B;
    const RationalMatrix dB = boundary_matrix(sub.fine(), k + 1) * B;
    return largest_generalized_eigenvalue(LB.transpose() * LB, dB.transpose() * dB);
}

double eigen_oracle(const Subdivision& sub, int k)
{
    return eigen_oracle(sub, k, compute_V(sub));
}

double ck_definitional_squared(const Subdivision& sub, int k, const Decomposition& dec)
{
    check_codimension(sub, k);
    const auto& B = dec.V_at(k + 1).vectors;
    if (B.cols() == 0)
        return 0.0;
    const RationalMatrix& X = sub.inclusion(k);
    const RationalMatrix Y = boundary_matrix(sub.fine(), k + 1) * B;
    // Y^T P_X Y with P_X = X (X^T X)^{-1} X^T.
    const RationalMatrix XtY = X.transpose() * Y;
    const RationalMatrix projected = XtY.transpose() * solve(X.transpose() * X, XtY);
    return largest_generalized_eigenvalue(projected, Y.transpose() * Y);
}

double ck_definitional(const Subdivision& sub, int k)
{
    return std::sqrt(std::max(0.0, ck_definitional_squared(sub, k, compute_V(sub))));
}

LowerBound lower_bound(const Subdivision& sub, int k, const std::optional<Simplex>& sigma)
{
    LowerBound best;
    if (k < 0 || k >= sub.dim())
        throw Error(ErrorCode::DimOutOfRange, "lower_bound: k=" + std::to_string(k));
    const bool increased = sub.fine().count(k + 1) > sub.coarse().count(k + 1);

    auto consider = [&](const IncidenceStats& st) {
        if (st.incident == 0)
            return;
        const Rational sq(static_cast<long>(st.singly),
                          static_cast<long>(st.incident) * static_cast<long>(st.incident + static_cast<std::size_t>(k) + 1));
        Rational q(sq);
        q.canonicalize();
        if (!best.simplex || q > best.squared)
        {
            best.simplex = st.simplex;
            best.incident = st.incident;
            best.singly = st.singly;
            best.squared = q;
        }
    };

    if (sigma)
    {
        if (static_cast<int>(sigma->size()) - 1 != k)
            throw Error(ErrorCode::IneligibleSimplex, to_string(*sigma) + " is not a " + std::to_string(k) + "-simplex");
        const auto st = incidence_stats(sub, *sigma);
        if (!st.eligible)
            throw Error(ErrorCode::IneligibleSimplex, to_string(st.simplex) + " lies on a " + std::to_string(k) + "-party");
        consider(st);
    }
    else
    {
        for (std::size_t j = 0; j < sub.fine().count(k); ++j)
            if (!sub.party_of(k, j))
                consider(incidence_stats(sub, sub.fine().simplices(k)[j]));
    }
    best.hypothesis = increased && best.simplex.has_value();
    if (!best.hypothesis)
    {
        best.squared = 0;
        best.value = 0.0;
        return best;
    }
    best.value = std::sqrt(to_double(best.squared));
    return best;
}

InvariantReport compute_ck(const Subdivision& sub, int k, const InvariantOptions& options, const Decomposition& dec)
{
    check_codimension(sub, k);
    InvariantReport r;
    r.k = k;
    r.mode = options.mode;
    r.dim_V = dec.V_at(k + 1).size();
    r.bound = lower_bound(sub, k);
    if (options.definitional)
    {
        r.definitional_squared = ck_definitional_squared(sub, k, dec);
        r.definitional_value = std::sqrt(std::max(0.0, *r.definitional_squared));
    }
    if (r.dim_V == 0)
    {
        r.short_circuit = true;
        r.lambda_exact = Rational(0);
        return r;
    }

    const PencilSystem p = pencil(sub, k, options.mode, dec, options.seed);
    r.Q = char_poly(p);
    r.oracle_value = eigen_oracle(sub, k, dec);

    std::optional<Lift> best;
    std::optional<RealRoot> best_root;
    try
    {
        r.roots = real_roots(r.Q);
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::ZeroPolynomial)
            throw;
        r.degenerate = true;
    }
    for (const auto& root : r.roots)
    {
        auto lift = try_lift(p, root);
        r.lifted.push_back(lift.has_value());
        if (lift && (!best_root || root.value > best_root->value))
        {
            best = std::move(lift);
            best_root = root;
        }
    }

    if (r.degenerate)
        r.lambda_max = r.oracle_value;
    else if (!best_root)
        throw Error(ErrorCode::Disagreement, "no root of Q lifts, oracle gives " + std::to_string(r.oracle_value));
    else
    {
        r.lambda_max = best_root->value;
        r.lambda_exact = best_root->exact;
        r.certificate = best->z;
        r.certificate_value = best->functional;
    }
    r.c_k = std::sqrt(std::max(0.0, r.lambda_max));
    r.oracle_residual = std::abs(r.lambda_max - r.oracle_value);
    if (r.oracle_residual > options.tolerance)
        throw Error(ErrorCode::Disagreement, "pencil " + std::to_string(r.lambda_max) + " vs oracle "
                                                 + std::to_string(r.oracle_value) + " for k=" + std::to_string(k));
    return r;
}

InvariantReport compute_ck(const Subdivision& sub, int k, const InvariantOptions& options)
{
    return compute_ck(sub, k, options, compute_V(sub));
}

namespace stellar {

RationalMatrix J(int k)
{
    if (k < 1)
        throw Error(ErrorCode::BadDescriptor, "J_k needs k >= 1");
    const auto n = static_cast<std::size_t>(k);
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        out(i, 0) = 1;
    for (std::size_t j = 1; j < n; ++j)
    {
        out(0, j) = -1;
        out(j, j) = 1;
    }
    return out;
}

RationalMatrix A(const Rational& m, int k)
{
    if (k < 1)
        throw Error(ErrorCode::BadDescriptor, "A_{m,k} needs k >= 1");
    const auto n = static_cast<std::size_t>(k);
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = i == j ? m : Rational(-1);
    return out;
}

RationalMatrix R(const RationalMatrix& a, int levels)
{
    RationalMatrix cur = a;
    for (int l = 0; l < levels; ++l)
    {
        const std::size_t n = cur.rows();
        RationalMatrix next(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
            {
                next(i, j) = cur(i, j);
                next(n + i, n + j) = cur(i, j);
            }
            next(i, n + i) = -1;
            next(n + i, i) = -1;
        }
        cur = std::move(next);
    }
    return cur;
}

RationalMatrix M(int d, int k, int levels)
{
    return R(Rational(d + 2) * RationalMatrix::identity(static_cast<std::size_t>(k)), levels);
}

RationalMatrix N(int d, int k, int levels)
{
    return R(A(Rational(d + 1), k + 1), levels);
}

std::vector<Rational> alternating_vector(int k, int i)
{
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(1));
    for (int level = 0; level < i; ++level)
    {
        const std::size_t n = v.size();
        for (std::size_t j = 0; j < n; ++j)
            v.push_back(-v[j]);
    }
    return v;
}

RationalMatrix reduced_minor(const RationalMatrix& x, int block)
{
    const auto b = static_cast<std::size_t>(block);
    if (block < 1 || x.rows() % b != 0 || x.rows() != x.cols())
        throw Error(ErrorCode::BadDescriptor, "matrix size is not a multiple of the block size");
    const std::vector<RationalMatrix> blocks(x.rows() / b, J(block));
    const RationalMatrix P = block_diagonal(blocks);
    const RationalMatrix conj = solve(P, x * P);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < x.rows(); ++i)
        if (i % b != 0)
            keep.push_back(i);
    return conj.select_rows(keep).select_cols(keep);
}

Interval gersgorin(const RationalMatrix& x)
{
    Interval out;
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
        Rational radius = 0;
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (j != i)
                radius += abs(x(i, j));
        const Rational lo = x(i, i) - radius, hi = x(i, i) + radius;
        if (i == 0 || lo < out.lo)
            out.lo = lo;
        if (i == 0 || hi > out.hi)
            out.hi = hi;
    }
    return out;
}

Descriptor parse_descriptor(const std::string& text)
{
    const auto colon = text.find(':');
    const auto comma = text.find(',');
    if (colon == std::string::npos || comma == std::string::npos || comma < colon)
        throw Error(ErrorCode::BadDescriptor, "expected isolated:d,k or interior:d,k, got '" + text + "'");
    Descriptor out;
    const std::string kind = text.substr(0, colon);
    if (kind == "isolated")
        out.kind = Case::Isolated;
    else if (kind == "interior")
        out.kind = Case::Interior;
    else
        throw Error(ErrorCode::BadDescriptor, "unknown case '" + kind + "'");
    try
    {
        out.d = std::stoi(text.substr(colon + 1, comma - colon - 1));
        out.k = std::stoi(text.substr(comma + 1));
    }
    catch (const std::exception&)
    {
        throw Error(ErrorCode::BadDescriptor, "bad integers in '" + text + "'");
    }
    return out;
}

ClosedForm closed_form(const Descriptor& descriptor)
{
    const int d = descriptor.d, k = descriptor.k;
    const bool interior = descriptor.kind == Case::Interior;
    if (k < 1 || k > d || (interior && k == d))
        throw Error(ErrorCode::BadDescriptor, "need 1 <= k <= d (k < d for the interior case); got d="
                                                  + std::to_string(d) + ", k=" + std::to_string(k));
    ClosedForm out;
    out.descriptor = descriptor;
    const int levels = interior ? d - k : 0;
    out.top_gram = N(d, k, levels);
    out.minor = M(d, k, levels);
    out.eigen_min = interior ? Rational(k + 2) : Rational(d + 2);
    out.eigen_max = interior ? Rational(2 * d + 2 - k) : Rational(d + 2);
    out.eigvec_min = alternating_vector(k, 0);
    out.eigvec_min.resize(out.minor.rows(), Rational(1));
    out.eigvec_max = alternating_vector(k, levels);
    out.c_squared = Rational(1) / out.eigen_min;
    out.norm_squared = {Rational(1) / out.eigen_max, Rational(1) / out.eigen_min};
    out.gersgorin = {Rational(d + 2 - levels), Rational(d + 2 + levels)};
    return out;
}

}   // namespace stellar

}   // namespace subdiv
