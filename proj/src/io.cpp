#include "subdiv/io.hpp"

#include <cmath>
#include <fstream>

#include "subdiv/error.hpp"

namespace subdiv::io {

namespace {

[[noreturn]] void parse_error(const std::string& what)
{
    throw Error(ErrorCode::Parse, what);
}

Simplex simplex_from_json(const json& j)
{
    if (!j.is_array())
        parse_error("simplex must be an array of vertex ids, got " + j.dump());
    std::vector<Vertex> verts;
    for (const auto& v : j)
    {
        if (!v.is_number_integer())
            parse_error("vertex id must be an integer, got " + v.dump());
        verts.push_back(v.get<Vertex>());
    }
    return make_simplex(std::move(verts));
}

json simplex_json(const Simplex& s)
{
    json out = json::array();
    for (Vertex v : s)
        out.push_back(v);
    return out;
}

}   // namespace

json to_json(const Rational& q)
{
    return to_pq_string(q);
}

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        parse_error("rational must be a \"p/q\" string, got " + j.dump());
    try
    {
        Rational q(j.get<std::string>(), 10);
        if (q.get_den() == 0)
            parse_error("zero denominator in " + j.dump());
        q.canonicalize();
        return q;
    }
    catch (const std::invalid_argument&)
    {
        parse_error("bad rational " + j.dump());
    }
}

json to_json(const RationalMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(to_json(m.row(i)));
    return rows;
}

RationalMatrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        parse_error("matrix must be an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
    {
        if (!j[i].is_array() || j[i].size() != cols)
            parse_error("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = rational_from_json(j[i][c]);
    }
    return m;
}

json to_json(const std::vector<Rational>& v)
{
    json out = json::array();
    for (const auto& q : v)
        out.push_back(to_json(q));
    return out;
}

json to_json(const Polynomial& p)
{
    return to_json(p.coefficients());
}

json to_json(const SimplicialComplex& K)
{
    json maximal = json::array();
    for (const auto& s : K.maximal_simplices())
        maximal.push_back(simplex_json(s));
    return {{"maximal_simplices", maximal}};
}

SimplicialComplex complex_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("maximal_simplices"))
        parse_error("complex needs a \"maximal_simplices\" array");
    const auto& arr = j.at("maximal_simplices");
    if (!arr.is_array())
        parse_error("\"maximal_simplices\" must be an array");
    std::vector<Simplex> simplices;
    for (const auto& s : arr)
        simplices.push_back(simplex_from_json(s));
    return build_complex(simplices);
}

json to_json(const SubdivisionMap& map)
{
    json carriers = json::object();
    for (const auto& [v, c] : map.vertex_carrier)
        carriers[std::to_string(v)] = simplex_json(c);
    return {{"coarse", to_json(map.coarse)}, {"fine", to_json(map.fine)}, {"vertex_carrier", carriers}};
}

SubdivisionMap subdivision_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("coarse") || !j.contains("fine"))
        parse_error("subdivision needs \"coarse\" and \"fine\" complexes");
    SubdivisionMap map;
    map.coarse = complex_from_json(j.at("coarse"));
    map.fine = complex_from_json(j.at("fine"));
    if (j.contains("vertex_carrier"))
    {
        const auto& vc = j.at("vertex_carrier");
        if (!vc.is_object())
            parse_error("\"vertex_carrier\" must be an object keyed by fine vertex id");
        for (const auto& [key, value] : vc.items())
        {
            Vertex v = 0;
            try
            {
                std::size_t used = 0;
                v = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            }
            catch (const std::exception&)
            {
                parse_error("vertex_carrier key '" + key + "' is not an integer");
            }
            map.vertex_carrier[v] = simplex_from_json(value);
        }
    }
    return map;
}

json to_json(const ValidationReport& report)
{
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"ok", report.ok()},
            {"checks", checks},
            {"betti_coarse", report.betti_coarse},
            {"betti_fine", report.betti_fine}};
}

json to_json(const std::vector<Party>& parties)
{
    json out = json::array();
    for (const auto& p : parties)
        out.push_back({{"dim", p.dim}, {"carrier", simplex_json(p.carrier)}, {"members", p.members}, {"signs", p.signs}});
    return out;
}

json to_json(const ChainBasis& basis)
{
    // One entry per basis chain, in simplex coordinates.
    json vectors = json::array();
    for (std::size_t c = 0; c < basis.vectors.cols(); ++c)
        vectors.push_back(to_json(basis.vectors.column(c)));
    return {{"dim", basis.dim}, {"label", std::string(to_string(basis.label))}, {"vectors", vectors}};
}

json to_json(const GramMetric& g)
{
    json out = json::array();
    for (const auto& m : g.by_dim)
        out.push_back(to_json(m));
    return out;
}

json to_json(const LowerBound& bound)
{
    json out{{"hypothesis", bound.hypothesis}};
    out["simplex"] = bound.simplex ? simplex_json(*bound.simplex) : json(nullptr);
    out["incident"] = bound.incident;
    out["singly"] = bound.singly;
    out["squared"] = to_json(bound.squared);
    out["value"] = bound.value;
    return out;
}

json to_json(const RealRoot& root)
{
    json out{{"value", root.value}, {"lo", to_json(root.lo)}, {"hi", to_json(root.hi)}};
    out["exact"] = root.exact ? to_json(*root.exact) : json(nullptr);
    out["multiplicity"] = root.multiplicity;
    return out;
}

json to_json(const InvariantReport& r, bool include_definitional)
{
    json out{{"k", r.k}, {"mode", std::string(to_string(r.mode))}};
    out["dim_V"] = r.dim_V;
    out["short_circuit"] = r.short_circuit;
    out["degenerate"] = r.degenerate;
    out["lambda_max"] = r.lambda_max;
    out["lambda_exact"] = r.lambda_exact ? to_json(*r.lambda_exact) : json(nullptr);
    out["c_k"] = r.c_k;
    out["Q"] = to_json(r.Q);
    json roots = json::array();
    for (std::size_t i = 0; i < r.roots.size(); ++i)
    {
        json root = to_json(r.roots[i]);
        root["lifted"] = i < r.lifted.size() && r.lifted[i];
        roots.push_back(root);
    }
    out["roots"] = roots;
    out["certificate"] = r.certificate;
    out["certificate_value"] = r.certificate_value;
    out["oracle_value"] = r.oracle_value;
    out["oracle_residual"] = r.oracle_residual;
    out["lower_bound"] = to_json(r.bound);
    if (include_definitional && r.definitional_value)
    {
        out["definitional_squared"] = *r.definitional_squared;
        out["definitional_value"] = *r.definitional_value;
    }
    return out;
}

json to_json(const stellar::ClosedForm& cf)
{
    json out{{"case", cf.descriptor.kind == stellar::Case::Isolated ? "isolated" : "interior"},
             {"d", cf.descriptor.d},
             {"k", cf.descriptor.k}};
    out["c_squared"] = to_json(cf.c_squared);
    out["c"] = std::sqrt(to_double(cf.c_squared));
    out["eigen_min"] = to_json(cf.eigen_min);
    out["eigen_max"] = to_json(cf.eigen_max);
    out["eigvec_min"] = to_json(cf.eigvec_min);
    out["eigvec_max"] = to_json(cf.eigvec_max);
    out["norm_squared"] = {to_json(cf.norm_squared.lo), to_json(cf.norm_squared.hi)};
    out["gersgorin"] = {to_json(cf.gersgorin.lo), to_json(cf.gersgorin.hi)};
    out["top_gram"] = to_json(cf.top_gram);
    out["minor"] = to_json(cf.minor);
    return out;
}

json read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        parse_error("cannot open " + path.string());
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        parse_error(path.string() + ": " + e.what());
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

}   // namespace subdiv::io
