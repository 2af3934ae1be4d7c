#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "subdiv/catalog.hpp"
#include "subdiv/error.hpp"
#include "subdiv/io.hpp"

using namespace subdiv;

TEST_CASE("rationals as p/q strings")
{
    CHECK(io::to_json(Rational(-2, 6)) == "-1/3");
    CHECK(io::to_json(Rational(4)) == "4/1");
    CHECK(io::rational_from_json("6/4") == Rational(3, 2));
    CHECK(io::rational_from_json(7) == 7);
    CHECK(io::rational_from_json("-5") == -5);
    for (const char* bad : {"1/0", "x", "1/2/3"})
        CHECK_THROWS_AS(io::rational_from_json(bad), Error);
    CHECK_THROWS_AS(io::rational_from_json(1.5), Error);
}

TEST_CASE("matrix round trip")
{
    RationalMatrix m(2, 3);
    m(0, 1) = Rational(1, 3);
    m(1, 2) = -4;
    CHECK(io::matrix_from_json(io::to_json(m)) == m);
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse(R"([["1"], ["1", "2"]])")), Error);
}

TEST_CASE("complex schema")
{
    const auto j = io::json::parse(R"({"maximal_simplices": [[0, 1], [1, 2]]})");
    const auto K = io::complex_from_json(j);
    CHECK(face_vector(K) == std::vector<std::size_t>{3, 2});
    CHECK(io::complex_from_json(io::to_json(K)) == K);
    for (const char* bad : {R"({"simplices": []})", R"({"maximal_simplices": [[0, "a"]]})", R"([1, 2])",
                            R"({"maximal_simplices": 3})"})
        CHECK_THROWS_AS(io::complex_from_json(io::json::parse(bad)), Error);
}

TEST_CASE("subdivision schema round trip")
{
    for (const auto& e : catalog::corpus(7, 5))
    {
        const auto back = io::subdivision_from_json(io::to_json(e.map));
        CHECK(back.coarse == e.map.coarse);
        CHECK(back.fine == e.map.fine);
        CHECK(back.vertex_carrier == e.map.vertex_carrier);
    }
    const auto j = io::json::parse(R"({"coarse": {"maximal_simplices": [[0, 1]]},
                                       "fine": {"maximal_simplices": [[0, 2], [1, 2]]},
                                       "vertex_carrier": {"2": [0, 1]}})");
    const Subdivision sub(io::subdivision_from_json(j));
    CHECK(sub.new_vertices() == std::vector<Vertex>{2});
    CHECK_THROWS_AS(io::subdivision_from_json(io::json::parse(R"({"coarse": {}})")), Error);
    CHECK_THROWS_AS(io::subdivision_from_json(io::json::parse(
                        R"({"coarse": {"maximal_simplices": [[0]]}, "fine": {"maximal_simplices": [[0]]},
                            "vertex_carrier": {"v": [0]}})")),
                    Error);
}

TEST_CASE("invariant report")
{
    const Subdivision sub(catalog::medial_triangle());
    const auto r = compute_ck(sub, 1, {PencilMode::Member});
    const auto j = io::to_json(r);
    CHECK(j["lambda_exact"] == "1/3");
    CHECK(j["Q"].size() == 4);
    CHECK(j["Q"][3] == "-1296/1");
    CHECK(j["roots"].size() == 2);
    CHECK(j.contains("definitional_value"));
    CHECK_FALSE(io::to_json(r, false).contains("definitional_value"));
    // Same input, same bytes.
    CHECK(io::dump(j) == io::dump(io::to_json(compute_ck(sub, 1, {PencilMode::Member}))));
}

TEST_CASE("reading files")
{
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), Error);
    const auto path = std::filesystem::temp_directory_path() / "subdiv_io_test.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    try
    {
        io::read_file(path);
        FAIL("expected a parse error");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::Parse);
    }
    std::filesystem::remove(path);
}
