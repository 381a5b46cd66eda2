#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gruss/json_io.hpp"
#include "oracles.hpp"

using namespace gruss;

TEST_CASE("matrix JSON round trip") {
  oracle::Rng rng(601);
  for (std::size_t n : {1u, 2u, 5u}) {
    const ComplexMatrix a = rng.ginibre(n);
    const json j = matrix_to_json(a);
    CHECK(j["n"] == n);
    CHECK(j["entries"].size() == n * n);
    CHECK(j["entries"][0].size() == 2);
    // Text round trip keeps every bit.
    const ComplexMatrix b = matrix_from_json(json::parse(j.dump()));
    CHECK(oracle::same_entries(a, b));
  }
  const json j2 = json::parse(R"({"n":2,"entries":[[0,0],[1,0],[0,0],[0,0]]})");
  CHECK(matrix_from_json(j2)(0, 1) == Complex(1.0));
}

TEST_CASE("malformed matrices are rejected") {
  for (const char* text : {
           R"({"n":2,"entries":[[0,0],[1,0],[0,0]]})",
           R"({"n":2.5,"entries":[]})",
           R"({"n":1})",
           R"({"n":1,"entries":[[0]]})",
           R"({"n":1,"entries":[["a",0]]})",
           R"([1,2])",
       })
    CHECK_THROWS_AS(matrix_from_json(json::parse(text)), ParseError);
}

TEST_CASE("state JSON enforces density invariants") {
  CHECK_NOTHROW(state_from_json(matrix_to_json(ComplexMatrix::diagonal({0.5, 0.5}))));
  CHECK_THROWS_AS(state_from_json(matrix_to_json(ComplexMatrix::diagonal({1.0, 1.0}))),
                  PreconditionError);
}

TEST_CASE("disc and complex round trip") {
  const Disc d{Complex(1.5, -2.0), 0.25};
  const json j = disc_to_json(d);
  CHECK(j["center"][0] == 1.5);
  CHECK(j["center"][1] == -2.0);
  CHECK(j["radius"] == 0.25);
  const Disc e = disc_from_json(j);
  CHECK(e.center == d.center);
  CHECK(e.radius == d.radius);
  CHECK_THROWS_AS(disc_from_json(json::parse(R"({"center":[0,0],"radius":-1})")), ParseError);
  CHECK(complex_from_json(complex_to_json(Complex(3.0, 4.0))) == Complex(3.0, 4.0));
  CHECK(points_to_json(CVector{1.0, Complex(0.0, 1.0)}).size() == 2);
}

TEST_CASE("report JSON shape") {
  const BoundChainReport r =
      refined_chain(ComplexMatrix::diagonal({1.0, 3.0}), ComplexMatrix::diagonal({1.0, 3.0}),
                    DensityOperator::maximally_mixed(2));
  const json j = report_to_json(r);
  REQUIRE(j["terms"].size() == r.terms.size());
  CHECK(j["slacks"].size() == r.terms.size() - 1);
  CHECK(j["holds"].size() == r.terms.size() - 1);
  CHECK(j["terms"][0]["label"].is_string());
  CHECK(j["terms"][0]["value"].is_number());
  CHECK(j["meta"]["chain"] == "refined");
  CHECK(j["meta"]["all_hold"] == true);
  for (std::size_t i = 0; i < r.links.size(); ++i)
    CHECK(j["holds"][i].get<bool>() == (j["slacks"][i].get<double>() >= -r.links[i].tolerance));
}

TEST_CASE("sweep CSV") {
  std::vector<SweepRow> rows(2);
  rows[1].lambda = 1.0;
  rows[1].k = 0.1;
  const std::string csv = sweep_to_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,mu,h_lambda,h_mu,k,bound,lhs,slack");
  int count = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++count;
  CHECK(count == 2);
  // Full precision: 0.1 must survive a parse.
  CHECK(csv.find("0.10000000000000001") != std::string::npos);
}

TEST_CASE("zoo spec round trip") {
  ZooSpec s;
  s.family = Family::kJordan;
  s.dim = 3;
  s.seed = 0xfedcba9876543210ULL;
  s.eigenvalue = Complex(0.25, -1.0);
  s.perturbation = 1e-3;
  ZooSpec t = zoo_spec_from_json(json::parse(zoo_spec_to_json(s).dump()));
  CHECK(t.family == s.family);
  CHECK(t.dim == s.dim);
  CHECK(t.seed == s.seed);
  CHECK(t.eigenvalue == s.eigenvalue);
  CHECK(t.perturbation == s.perturbation);
  CHECK(oracle::same_entries(generate_matrix(t), generate_matrix(s)));

  s = ZooSpec{};
  s.family = Family::kDensityRankK;
  s.dim = 4;
  s.rank = 2;
  s.seed = 5;
  t = zoo_spec_from_json(zoo_spec_to_json(s));
  CHECK(t.rank == s.rank);
  s = ZooSpec{};
  s.family = Family::kFixture;
  s.fixture_name = "diag13";
  CHECK(zoo_spec_from_json(zoo_spec_to_json(s)).fixture_name == "diag13");
  CHECK_THROWS_AS(zoo_spec_from_json(json::parse(R"({"family":"bogus"})")), Error);
}

TEST_CASE("fingerprints") {
  const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 3.0});
  const std::string f = fingerprint(a);
  CHECK(f.size() == 16);
  CHECK(f == fingerprint(ComplexMatrix::diagonal({1.0, 3.0})));
  CHECK(f != fingerprint(ComplexMatrix::diagonal({1.0, 3.0000000000000004})));
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "gruss_json_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "m.json", matrix_to_json(ComplexMatrix::identity(2)).dump());
  CHECK(matrix_from_json(read_json_file(dir / "m.json")).trace() == Complex(2.0));
  write_text_file(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(read_json_file(dir / "bad.json"), ParseError);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), ParseError);
  std::filesystem::remove_all(dir);
}
