#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "mfb/catalog.hpp"
#include "mfb/pipeline.hpp"

using namespace mfb;

TEST(Report, GenericEight) {
  const auto r = run(generic(8), "generic:8");
  EXPECT_EQ(r.h1_milnor.to_string(), "Z^28 + Z_8^15");
  EXPECT_EQ(r.h1_boundary.to_string(), "Z^28");
  EXPECT_EQ(r.alpha0(), std::optional<std::size_t>(15));
  ASSERT_TRUE(r.tower);
  EXPECT_EQ(r.tower->m(), 3);
  ASSERT_TRUE(r.table_row);
  EXPECT_FALSE(r.chi_discrepancy);
  EXPECT_FALSE(r.any_failed());
  for (const char* name : {"thm_1_1", "prop_4_1", "boundary_h1", "main_lower", "cor_1_5_upper", "cor_3_7",
                           "rho_zero", "table1_match"}) {
    const auto* c = r.find_check(name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_EQ(c->state, CheckState::Pass) << name << ": " << c->detail;
  }
}

TEST(Report, PencilChiIsFlagged) {
  const auto r = run(pencil(8));
  EXPECT_EQ(r.betti.chi_U, -6);
  EXPECT_TRUE(r.chi_discrepancy);
  EXPECT_FALSE(r.any_failed());
  EXPECT_NE(to_text(r).find("table lists chi"), std::string::npos);
}

TEST(Report, OddLineCountSkipsEvenOnlyParts) {
  const auto r = run(generic(5));
  EXPECT_FALSE(r.tower);
  EXPECT_FALSE(r.resonance);
  EXPECT_FALSE(r.h1_double);
  EXPECT_EQ(r.find_check("main_lower")->state, CheckState::NotApplicable);
  EXPECT_FALSE(r.any_failed());
}

TEST(Json, DeterministicAndComplete) {
  const auto a = to_json(run(maclane(), "maclane")).dump();
  const auto b = to_json(run(maclane(), "maclane")).dump();
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["h1_milnor"]["free_rank"], 20);
  EXPECT_EQ(j["h1_milnor"]["torsion"].size(), 7u);
  EXPECT_EQ(j["h1_milnor"]["torsion"][0], "8");
  EXPECT_TRUE(j.contains("checks"));
}

TEST(Batch, OrderAndSerialEquality) {
  std::vector<LineConfiguration> configs{generic(8), pencil(6), maclane(), near_pencil(7), generic(4),
                                         with_concurrencies(8, {{1, 2, 3, 4}})};
  const auto serial = batch(configs, 1);
  const auto parallel = batch(configs, 4);
  ASSERT_EQ(serial.size(), configs.size());
  ASSERT_EQ(parallel.size(), configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    ASSERT_TRUE(serial[i].report && parallel[i].report);
    EXPECT_EQ(serial[i].report->config, configs[i]);
    EXPECT_EQ(to_json(*serial[i].report).dump(), to_json(*parallel[i].report).dump());
  }
  EXPECT_TRUE(batch({}, 8).empty());
}

TEST(Batch, ErrorsStayWithTheirItem) {
  const auto out = batch({generic(4), LineConfiguration{2, {}}, generic(5)}, 3);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[0].report);
  EXPECT_FALSE(out[1].report);
  EXPECT_NE(out[1].error.find("DegenerateArrangement"), std::string::npos);
  EXPECT_TRUE(out[2].report);
}

TEST(Table1, CorpusMatches) {
  const auto s = table1_harness(MFB_CORPUS_DIR, 4);
  EXPECT_GE(s.entries.size(), 15u);
  for (const auto& e : s.entries) {
    EXPECT_TRUE(e.tuple_ok) << e.file;
    EXPECT_TRUE(e.torsion_ok) << e.file << ": " << e.torsion << " vs " << e.expect_torsion;
    EXPECT_TRUE(e.agrees_with_table) << e.file;
  }
  EXPECT_TRUE(s.all_ok());
  EXPECT_TRUE(s.group_consistent.at("(0,0,0,0,0,0)"));
}

TEST(Table1, Lookup) {
  EXPECT_EQ(kTable1.size(), 29u);
  EXPECT_EQ(parse_torsion("2^2 8^10"), (std::vector<BigInt>{2, 2, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8}));
  EXPECT_EQ(format_torsion({2, 2, 8}), "2^2 8");
  EXPECT_EQ(format_torsion({}), "0");
  EXPECT_THROW(parse_torsion("2^x"), Error);
  EXPECT_FALSE(table1_lookup(multiplicity_tuple(generic(7))));
}

TEST(Table1, MissingAnnotation) {
  const auto dir = std::filesystem::temp_directory_path() / "mfb_missing_annotation";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "bare.arr");
    f << "# expect-tuple: (0,0,0,0,0,0)\nn 8\n";
  }
  try {
    table1_harness(dir);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingAnnotation);
  }
  std::filesystem::remove_all(dir);
}

TEST(Text, TableColumns) {
  const auto text = table_text({run(generic(8)), run(pencil(8))});
  EXPECT_NE(text.find("tuple"), std::string::npos);
  EXPECT_NE(text.find("chi(U)"), std::string::npos);
  EXPECT_NE(text.find("8^15"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
