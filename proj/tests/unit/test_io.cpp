#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "latnab/catalog.hpp"
#include "latnab/io.hpp"
#include "latnab/reproduce.hpp"

using namespace latnab;
using Json = nlohmann::json;

TEST(LatticeFile, RoundTrip) {
  for (const char* name : {"Lambda5", "BW16", "BW16alt", "O7", "Z1"}) {
    Lattice l = catalog(name);
    Lattice back = parse_lattice(lattice_json(l));
    EXPECT_EQ(back.gram(), l.gram()) << name;
    EXPECT_EQ(back.basis(), l.basis()) << name;
    EXPECT_EQ(back.is_gram_only(), l.is_gram_only()) << name;
    EXPECT_EQ(lattice_json(back), lattice_json(l)) << name;
  }
}

TEST(LatticeFile, FileRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "latnab_io_test.json";
  Lattice l = catalog("Lambda3");
  write_lattice(path, l);
  EXPECT_TRUE(equals(read_lattice(path), l));
  EXPECT_TRUE(equals(resolve_lattice(path.string()), l));
  std::filesystem::remove(path);
  EXPECT_THROW(read_lattice(path), DomainError);
}

TEST(LatticeFile, Inputs) {
  Lattice a = parse_lattice(R"({"basis": [[2, 0], ["1/2", "3/2"]]})");
  EXPECT_EQ(a.determinant(), 9);
  Lattice g = parse_lattice(R"({"gram": [[4, -2], [-2, 4]]})");
  EXPECT_TRUE(g.is_gram_only());
  EXPECT_EQ(g.determinant(), 12);
  EXPECT_THROW(parse_lattice("{"), DomainError);
  EXPECT_THROW(parse_lattice("[]"), DomainError);
  EXPECT_THROW(parse_lattice(R"({"dim": 2})"), DomainError);
  EXPECT_THROW(parse_lattice(R"({"dim": 3, "basis": [[1, 0], [0, 1]]})"), DomainError);
  EXPECT_THROW(parse_lattice(R"({"basis": [[1, 0], [0, 1.5]]})"), DomainError);
  EXPECT_THROW(parse_lattice(R"({"basis": [[1, 2], [2, 4]]})"), DomainError);
  EXPECT_THROW(resolve_lattice("no/such/file.json"), DomainError);
}

TEST(Reports, Shapes) {
  Json t = Json::parse(theta_json(theta(catalog("E8"), 4)));
  EXPECT_EQ(t["2"], 240);
  EXPECT_EQ(t["4"], 2160);

  Json c = Json::parse(class_table_json(class_table(catalog("Lambda2"))));
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[1]["norm"], "1/3");
  EXPECT_EQ(c[1]["paired"], true);

  Json v = Json::parse(verdict_json(is_isometric(catalog("D16plus"), catalog("E8perpE8"))));
  EXPECT_EQ(v["status"], "not_isometric");
  EXPECT_TRUE(v["certificate"].is_null());

  Json d = Json::parse(design_json(configuration(catalog("Lambda8"), 4)));
  EXPECT_EQ(d["n"], 240);
  EXPECT_EQ(d["t"], "7");

  Json s = Json::parse(summary_json(catalog("Lambda2")));
  EXPECT_EQ(s["determinant"], "12");
  EXPECT_EQ(s["kissing"], 6);

  Json census = Json::parse(census_json(integral_overlattices(catalog("Lambda2"))));
  EXPECT_EQ(census["total"], 4);
}

TEST(Reports, Deterministic) {
  Lattice l = catalog("Lambda6");
  EXPECT_EQ(theta_json(theta(l, 8)), theta_json(theta(l, 8)));
  EXPECT_EQ(shell_json(l, shell(l, 4), true), shell_json(l, shell(l, 4), true));
  EXPECT_EQ(fingerprint_json(fingerprint(l)), fingerprint_json(fingerprint(l)));
  Json sh = Json::parse(shell_json(l, shell(l, 4), true));
  EXPECT_EQ(sh["count"], 72);
  EXPECT_EQ(sh["vectors"].size(), 72u);
}

TEST(ReferenceTables, Loads) {
  Json j = Json::parse(reference_tables_json());
  EXPECT_EQ(j["sections"].size(), 8u);
  EXPECT_EQ(reference_census_names("Lambda2").size(), 2u);
  EXPECT_TRUE(reference_census_names("Z5").empty());
}
