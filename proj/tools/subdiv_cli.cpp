// Command-line front end.  Exit status: 0 ok, 1 mathematical or validation
// failure, 2 usage or I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "subdiv/catalog.hpp"
#include "subdiv/decomposition.hpp"
#include "subdiv/error.hpp"
#include "subdiv/invariants.hpp"
#include "subdiv/io.hpp"
#include "subdiv/spectral.hpp"

using namespace subdiv;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::vector<std::string> inputs;
    std::string codim = "all";
    std::string mode = "projector";
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    bool json = false;
    bool report_both = true;
    std::string stellar;        // generator "d=3,simplex=[0,1][,interior]"
    std::string simplex;        // "[0,1]"
    std::string closed_form;    // "interior:3,1"
    std::string output;
};

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

Simplex parse_simplex(const std::string& text)
{
    static const std::regex shape(R"(\s*\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]\s*)");
    if (!std::regex_match(text, shape))
        throw UsageError("expected a simplex like [0,1], got '" + text + "'");
    std::vector<Vertex> verts;
    static const std::regex number(R"(-?\d+)");
    for (std::sregex_iterator it(text.begin(), text.end(), number), end; it != end; ++it)
        verts.push_back(std::stoi(it->str()));
    if (verts.empty())
        throw UsageError("empty simplex");
    return make_simplex(std::move(verts));
}

// Loads a subdivision; a bare complex is read as its trivial subdivision.
SubdivisionMap load_subdivision(const std::string& path)
{
    const json j = io::read_file(path);
    if (j.is_object() && j.contains("maximal_simplices"))
        return trivial_subdivision(io::complex_from_json(j));
    return io::subdivision_from_json(j);
}

struct Generated
{
    SubdivisionMap map;
    stellar::Descriptor descriptor;
};

Generated generate_stellar(const std::string& spec)
{
    static const std::regex form(R"(\s*d\s*=\s*(\d+)\s*,\s*simplex\s*=\s*(\[[^\]]*\])\s*(,\s*interior\s*)?)");
    std::smatch m;
    if (!std::regex_match(spec, m, form))
        throw UsageError("--stellar expects d=<dim>,simplex=[v,...][,interior], got '" + spec + "'");
    const int d = std::stoi(m[1].str());
    const Simplex s = parse_simplex(m[2].str());
    const bool interior = m[3].matched;
    const int k = static_cast<int>(s.size()) - 1;
    if (d < 1 || d > 8)
        throw UsageError("--stellar: d must be between 1 and 8");
    Generated g;
    g.descriptor = {interior ? stellar::Case::Interior : stellar::Case::Isolated, d, k};
    if (interior)
    {
        Simplex expected;
        for (int i = 0; i <= k; ++i)
            expected.push_back(i);
        if (s != expected || k < 1 || k >= d)
            throw UsageError("--stellar interior: simplex must be [0..k] with 1 <= k < d");
        g.map = stellar_subdivide(catalog::interior_star(d, k), s);
    }
    else
        g.map = stellar_subdivide(catalog::simplex(d), s);
    return g;
}

std::vector<int> selected_ks(const std::string& selector, int dim)
{
    std::vector<int> ks;
    if (selector == "all")
    {
        for (int k = 0; k < dim; ++k)
            ks.push_back(k);
        return ks;
    }
    std::stringstream ss(selector);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            const int k = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            ks.push_back(k);
        }
        catch (const std::exception&)
        {
            throw UsageError("--codim expects 'all' or a comma list of integers, got '" + selector + "'");
        }
    }
    return ks;
}

void emit(const RunConfig& cfg, const json& j, const std::string& table)
{
    const std::string text = cfg.json ? io::dump(j) : table;
    if (cfg.output.empty())
        std::cout << text;
    else
    {
        std::ofstream out(cfg.output);
        if (!out)
            throw Error(ErrorCode::Parse, "cannot write " + cfg.output);
        out << text;
    }
}

const std::string& single_input(const RunConfig& cfg, const char* command)
{
    if (cfg.inputs.size() != 1)
        throw UsageError(std::string(command) + " expects exactly one input file");
    return cfg.inputs.front();
}

int cmd_validate(const RunConfig& cfg)
{
    const json j = io::read_file(single_input(cfg, "validate"));
    const SubdivisionMap map = j.is_object() && j.contains("maximal_simplices")
                                   ? trivial_subdivision(io::complex_from_json(j))
                                   : io::subdivision_from_json(j);
    const ValidationReport report = validate_subdivision(map);
    std::ostringstream table;
    for (const auto& c : report.checks)
        table << (c.passed ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    table << (report.ok() ? "valid subdivision\n" : "not a valid subdivision\n");
    emit(cfg, io::to_json(report), table.str());
    return report.ok() ? kOk : kFailure;
}

int cmd_parties(const RunConfig& cfg)
{
    const Subdivision sub(load_subdivision(single_input(cfg, "parties")));
    std::vector<int> ks;
    if (cfg.codim == "all")
        for (int k = 0; k <= sub.dim(); ++k)
            ks.push_back(k);
    else
        ks = selected_ks(cfg.codim, sub.dim());
    json j = json::object();
    std::ostringstream table;
    for (int k : ks)
    {
        if (k < 0 || k > sub.dim())
            throw Error(ErrorCode::DimOutOfRange, "k=" + std::to_string(k));
        j[std::to_string(k)] = io::to_json(sub.parties(k));
        for (const auto& p : sub.parties(k))
        {
            table << k << "-party " << to_string(p.carrier) << ":";
            for (std::size_t i = 0; i < p.members.size(); ++i)
                table << " " << (p.signs[i] > 0 ? "+" : "-") << to_string(sub.fine().simplices(k)[p.members[i]]);
            table << "\n";
        }
    }
    emit(cfg, j, table.str());
    return kOk;
}

int cmd_dims(const RunConfig& cfg)
{
    const Subdivision sub(load_subdivision(single_input(cfg, "dims")));
    const Decomposition dec = compute_V(sub);
    bool ok = true;
    json rows = json::array();
    std::ostringstream table;
    table << "k  s_k(N)  s_k(M)  dim V_k  formula\n";
    for (int k = 0; k <= sub.dim(); ++k)
    {
        const long exact = static_cast<long>(dec.V_at(k).size());
        const long formula = dim_V_formula(sub, k);
        ok = ok && exact == formula;
        rows.push_back({{"k", k},
                        {"coarse", sub.coarse().count(k)},
                        {"fine", sub.fine().count(k)},
                        {"dim_V", exact},
                        {"formula", formula}});
        table << k << "  " << sub.coarse().count(k) << "  " << sub.fine().count(k) << "  " << exact << "  " << formula
              << (exact == formula ? "" : "  MISMATCH") << "\n";
    }
    emit(cfg, {{"ok", ok}, {"dims", rows}}, table.str());
    return ok ? kOk : kFailure;
}

InvariantOptions options_of(const RunConfig& cfg)
{
    InvariantOptions opt;
    opt.mode = parse_pencil_mode(cfg.mode);
    opt.tolerance = cfg.tolerance;
    opt.seed = cfg.seed;
    opt.definitional = cfg.report_both;
    return opt;
}

std::string factored(const Polynomial& Q)
{
    if (Q.is_zero())
        return "0";
    std::ostringstream os;
    os << to_pq_string(Q.leading());
    const auto parts = squarefree_factorization(Q);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].degree() > 0)
            os << " (" << parts[i].to_string() << ")" << (i > 0 ? "^" + std::to_string(i + 1) : "");
    return os.str();
}

json invariants_json(const Subdivision& sub, const std::vector<int>& ks, const InvariantOptions& opt, bool both,
                     std::ostringstream& table)
{
    const Decomposition dec = compute_V(sub);
    json reports = json::array();
    table << "k  dim V  lambda_max  C_k  oracle  residual  lower_bound" << (both ? "  definitional" : "") << "\n";
    for (int k : ks)
    {
        const auto r = compute_ck(sub, k, opt, dec);
        reports.push_back(io::to_json(r, both));
        table << k << "  " << r.dim_V << "  " << (r.lambda_exact ? to_pq_string(*r.lambda_exact) : fmt(r.lambda_max))
              << "  " << fmt(r.c_k) << "  " << fmt(r.oracle_value) << "  " << fmt(r.oracle_residual) << "  "
              << fmt(r.bound.value);
        if (both && r.definitional_value)
            table << "  " << fmt(*r.definitional_value);
        table << "\n";
        if (!r.short_circuit)
            table << "   Q = " << factored(r.Q) << "\n";
    }
    return reports;
}

void check_mode(const InvariantOptions& opt, const std::vector<int>& ks, int dim)
{
    if (opt.mode != PencilMode::Member)
        return;
    for (int k : ks)
        if (k != dim - 1)
            throw UsageError("--mode member applies to k = dim-1 only; pass --codim " + std::to_string(dim - 1));
}

int cmd_invariants(const RunConfig& cfg)
{
    const InvariantOptions opt = options_of(cfg);
    std::optional<stellar::Descriptor> descriptor;
    SubdivisionMap map;
    if (!cfg.stellar.empty())
    {
        if (!cfg.inputs.empty())
            throw UsageError("pass either an input file or --stellar, not both");
        auto g = generate_stellar(cfg.stellar);
        map = std::move(g.map);
        descriptor = g.descriptor;
    }
    else
        map = load_subdivision(single_input(cfg, "invariants"));
    const Subdivision sub(std::move(map));
    const auto ks = selected_ks(cfg.codim, sub.dim());
    check_mode(opt, ks, sub.dim());

    std::ostringstream table;
    json out{{"invariants", invariants_json(sub, ks, opt, cfg.report_both, table)}};

    bool ok = true;
    if (descriptor && descriptor->k >= 1)
    {
        // Compare C_{d-1} with the closed form.
        const auto cf = stellar::closed_form(*descriptor);
        const auto r = compute_ck(sub, sub.dim() - 1, opt);
        const double expected = std::sqrt(to_double(cf.c_squared));
        const bool match = std::abs(r.c_k - expected) <= cfg.tolerance;
        ok = match;
        out["closed_form"] = {{"c_squared", io::to_json(cf.c_squared)}, {"expected", expected}, {"computed", r.c_k}, {"match", match}};
        table << "closed form C_" << sub.dim() - 1 << "^2 = " << to_pq_string(cf.c_squared) << " (" << fmt(expected)
              << "), computed " << fmt(r.c_k) << (match ? "  match\n" : "  MISMATCH\n");
    }
    emit(cfg, out, table.str());
    return ok ? kOk : kFailure;
}

int cmd_lower_bound(const RunConfig& cfg)
{
    const Subdivision sub(load_subdivision(single_input(cfg, "lower-bound")));
    const auto ks = selected_ks(cfg.codim, sub.dim());
    std::optional<Simplex> sigma;
    if (!cfg.simplex.empty())
        sigma = parse_simplex(cfg.simplex);
    json rows = json::array();
    std::ostringstream table;
    for (int k : ks)
    {
        if (sigma && static_cast<int>(sigma->size()) - 1 != k)
            continue;
        const auto lb = lower_bound(sub, k, sigma);
        json row = io::to_json(lb);
        row["k"] = k;
        rows.push_back(row);
        table << "k=" << k << "  ";
        if (lb.hypothesis)
            table << "bound^2 = " << to_pq_string(lb.squared) << " (" << fmt(lb.value) << ") at "
                  << to_string(*lb.simplex) << ", F=" << lb.incident << ", N=" << lb.singly << "\n";
        else
            table << "hypothesis fails, bound 0\n";
    }
    if (rows.empty())
        throw UsageError("no requested k matches the dimension of --simplex");
    emit(cfg, rows, table.str());
    return kOk;
}

int cmd_stellar(const RunConfig& cfg)
{
    if (!cfg.closed_form.empty())
    {
        const auto cf = stellar::closed_form(stellar::parse_descriptor(cfg.closed_form));
        std::ostringstream table;
        table << "C_{d-1}^2 = " << to_pq_string(cf.c_squared) << "\n"
              << "eigenvalues of the minor in [" << to_pq_string(cf.eigen_min) << ", " << to_pq_string(cf.eigen_max) << "]\n"
              << "|z|^2 in [" << to_pq_string(cf.norm_squared.lo) << ", " << to_pq_string(cf.norm_squared.hi) << "]\n"
              << "Gersgorin [" << to_pq_string(cf.gersgorin.lo) << ", " << to_pq_string(cf.gersgorin.hi) << "]\n";
        emit(cfg, io::to_json(cf), table.str());
        return kOk;
    }
    if (cfg.simplex.empty())
        throw UsageError("stellar needs --simplex (or --closed-form)");
    const Simplex sigma = parse_simplex(cfg.simplex);
    const json j = io::read_file(single_input(cfg, "stellar"));
    SubdivisionMap out;
    if (j.is_object() && j.contains("maximal_simplices"))
        out = stellar_subdivide(io::complex_from_json(j), sigma);
    else
    {
        // Subdivide the fine complex again and compose.
        const SubdivisionMap first = io::subdivision_from_json(j);
        out = compose(first, stellar_subdivide(first.fine, sigma));
    }
    const std::string text = io::dump(io::to_json(out));
    RunConfig json_cfg = cfg;
    json_cfg.json = true;
    emit(json_cfg, io::to_json(out), text);
    return kOk;
}

int cmd_compose(const RunConfig& cfg)
{
    if (cfg.inputs.size() != 2)
        throw UsageError("compose expects two subdivision files");
    const auto a = io::subdivision_from_json(io::read_file(cfg.inputs[0]));
    const auto b = io::subdivision_from_json(io::read_file(cfg.inputs[1]));
    RunConfig json_cfg = cfg;
    json_cfg.json = true;
    const json j = io::to_json(compose(a, b));
    emit(json_cfg, j, io::dump(j));
    return kOk;
}

json laplacian_json(const Subdivision& sub, std::uint64_t seed, bool& ok, std::ostringstream& table)
{
    const auto& M = sub.fine();
    const GramMetric h = GramMetric::standard(sub.coarse());
    const GramMetric g = GramMetric::standard(M);
    const auto report = commute_check(sub, h, g);

    json residual = json::array();
    for (const auto& r : report.residual)
        residual.push_back(r.is_zero());
    const auto betti = betti_numbers(M);
    json harmonic = json::array();
    bool betti_ok = true;
    for (int k = 0; k <= M.dim(); ++k)
    {
        const auto hd = harmonic_dimension(M, report.canonical, k);
        const auto hs = harmonic_dimension(M, g, k);
        betti_ok = betti_ok && hd == betti[static_cast<std::size_t>(k)] && hs == betti[static_cast<std::size_t>(k)];
        harmonic.push_back({{"k", k}, {"betti", betti[static_cast<std::size_t>(k)]}, {"standard", hs}, {"canonical", hd}});
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-4, 4);
    bool hodge_ok = true;
    for (int k = 0; k <= M.dim(); ++k)
    {
        std::vector<Rational> c(M.count(k));
        for (auto& x : c)
            x = entry(rng);
        const auto parts = hodge_decompose(M, report.canonical, k, c);
        for (std::size_t i = 0; i < c.size(); ++i)
            hodge_ok = hodge_ok && parts.harmonic[i] + parts.boundary[i] + parts.coboundary[i] == c[i];
    }

    ok = report.ok() && betti_ok && hodge_ok;
    table << "commute residual " << (report.ok() ? "zero" : "NONZERO") << "\n"
          << "harmonic dimension = Betti " << (betti_ok ? "yes" : "NO") << "\n"
          << "Hodge parts recombine " << (hodge_ok ? "yes" : "NO") << "\n";
    return {{"ok", ok},
            {"commute_residual_zero", residual},
            {"harmonic", harmonic},
            {"hodge_recombines", hodge_ok}};
}

int cmd_laplacian_check(const RunConfig& cfg)
{
    const Subdivision sub(load_subdivision(single_input(cfg, "laplacian-check")));
    bool ok = false;
    std::ostringstream table;
    const json j = laplacian_json(sub, cfg.seed, ok, table);
    emit(cfg, j, table.str());
    return ok ? kOk : kFailure;
}

int cmd_report(const RunConfig& cfg)
{
    const auto map = load_subdivision(single_input(cfg, "report"));
    const ValidationReport validation = validate_subdivision(map);
    json out{{"validation", io::to_json(validation)}};
    std::ostringstream table;
    table << "valid: " << (validation.ok() ? "yes" : "no") << "\n";
    if (!validation.ok())
    {
        emit(cfg, out, table.str());
        return kFailure;
    }
    const Subdivision sub(map);
    out["face_vector"] = {{"coarse", face_vector(sub.coarse())}, {"fine", face_vector(sub.fine())}};
    const Decomposition dec = compute_V(sub);
    json dims = json::array();
    for (int k = 0; k <= sub.dim(); ++k)
        dims.push_back(dec.V_at(k).size());
    out["dim_V"] = dims;

    const InvariantOptions opt = options_of(cfg);
    const auto ks = selected_ks(cfg.codim, sub.dim());
    check_mode(opt, ks, sub.dim());
    out["invariants"] = invariants_json(sub, ks, opt, cfg.report_both, table);
    bool lap_ok = false;
    out["laplacian"] = laplacian_json(sub, cfg.seed, lap_ok, table);
    emit(cfg, out, table.str());
    return lap_ok ? kOk : kFailure;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Invariants of simplicial subdivisions"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;

    app.add_option("--codim", cfg.codim, "which C_k to compute: 'all' or a comma list of k")->capture_default_str();
    app.add_option("--mode", cfg.mode, "pencil construction: projector or member")
        ->check(CLI::IsMember({"projector", "member"}))
        ->capture_default_str();
    app.add_option("--tol", cfg.tolerance, "agreement tolerance between routes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_flag("--report-both,!--no-report-both", cfg.report_both,
                 "include the definitional value next to the computed one")
        ->capture_default_str();
    app.add_option("-o,--output", cfg.output, "write output to a file");

    using Handler = int (*)(const RunConfig&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* help, Handler h, int max_inputs) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("inputs", cfg.inputs, "input JSON file(s)")->expected(0, max_inputs);
        commands.emplace_back(sub, h);
        return sub;
    };
    add("validate", "check the subdivision hypotheses", cmd_validate, 1);
    add("parties", "list parties and induced orientation signs", cmd_parties, 1);
    add("dims", "dim V_k from exact rank and from face counts", cmd_dims, 1);
    add("invariants", "compute C_k", cmd_invariants, 1)
        ->add_option("--stellar", cfg.stellar, "generate: d=<dim>,simplex=[v,...][,interior]");
    add("lower-bound", "combinatorial lower bound for C_k", cmd_lower_bound, 1)
        ->add_option("--simplex", cfg.simplex, "simplex sigma, e.g. [2,3]");
    auto* st = add("stellar", "elementary stellar subdivision of a complex or subdivision", cmd_stellar, 1);
    st->add_option("--simplex", cfg.simplex, "simplex to subdivide along, e.g. [0,1]");
    st->add_option("--closed-form", cfg.closed_form, "print closed forms for isolated:d,k or interior:d,k");
    add("compose", "composite of two subdivisions", cmd_compose, 2);
    add("laplacian-check", "Laplacian intertwining, Betti and Hodge checks", cmd_laplacian_check, 1);
    add("report", "validation, dimensions, invariants and Laplacian checks", cmd_report, 1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        for (const auto& [sub, handler] : commands)
            if (sub->parsed())
                return handler(cfg);
    }
    catch (const UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const Error& e)
    {
        std::cerr << e.what() << "\n";
        return e.code() == ErrorCode::Parse ? kUsage : kFailure;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
