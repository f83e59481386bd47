#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "pcortho/cli.hpp"
#include "pcortho/io.hpp"
#include "support.hpp"

namespace pcortho::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pcortho_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  std::string write_matrix(const std::string& name, const Eigen::MatrixXd& m) const {
    return write(name, io::to_csv(m));
  }

  struct Result {
    int status;
    std::string out;
    std::string err;
  };

  static Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "pcortho");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliConfig config;
    if (const auto early = parse_args(static_cast<int>(argv.size()), argv.data(), config, out, err)) {
      return {*early, out.str(), err.str()};
    }
    const int status = run(config, out, err);
    return {status, out.str(), err.str()};
  }

  // Runs the installed binary through the shell, capturing stdout.
  static Result spawn(const std::string& args) {
    const std::string cmd = std::string(PCORTHO_TOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, ""};
  }

  fs::path dir_;
};

Eigen::MatrixXd phi_upper3(double x, double y, double z) {
  return exp_map(SkewMatrix::from_upper(3, Eigen::Vector3d(x, y, z))).entries();
}

TEST_F(CliTest, CheckConsistentMatrix) {
  const auto path = write_matrix("a.csv", consistent_from_weights(Eigen::Vector3d(1, 2, 4)).entries());
  const auto text = invoke({"check", path, "--output", "text"});
  EXPECT_EQ(text.status, 0);
  EXPECT_EQ(text.out.substr(0, text.out.find('\n')), "reciprocal: yes; consistent: yes");
  const auto j = invoke({"check", path});
  EXPECT_EQ(j.status, 0);
  const auto report = json::parse(j.out);
  EXPECT_EQ(report.at("verdict"), "reciprocal: yes; consistent: yes");
  EXPECT_EQ(report.at("consistent"), true);
}

TEST_F(CliTest, CheckInconsistentMatrixNamesWorstTriple) {
  const auto path = write_matrix("n.csv", phi_upper3(1, -1, 1));
  const auto r = invoke({"check", path});
  ASSERT_EQ(r.status, 0);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report.at("verdict"), "reciprocal: yes; consistent: no");
  EXPECT_EQ(report.at("consistency").at("worst_triple").size(), 3u);
}

TEST_F(CliTest, ProjectReportsCycleComponent) {
  const auto path = write_matrix("b.csv", phi_upper3(1, 2, 3));
  const auto r = invoke({"project", path, "--verify"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto report = json::parse(r.out);
  const auto bh = report.at("B_h").get<std::vector<double>>();
  ASSERT_EQ(bh.size(), 3u);
  EXPECT_NEAR(bh[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(bh[1], -2.0 / 3, 1e-12);
  EXPECT_NEAR(bh[2], 2.0 / 3, 1e-12);
  EXPECT_NEAR(report.at("inconsistency_ratio").get<double>(), std::sqrt(2.0 / 21), 1e-12);
  EXPECT_TRUE(report.contains("ranking"));
  EXPECT_TRUE(report.at("corollary").contains("h_row_sums"));
}

TEST_F(CliTest, ProjectThenCheckIsConsistent) {
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial;
    const auto in = write_matrix("a" + std::to_string(trial) + ".csv", testing::random_reciprocal(n, 3.0).entries());
    const auto w = write_matrix("w" + std::to_string(trial) + ".csv", testing::random_weight(n).matrix());
    const auto out = (dir_ / ("l" + std::to_string(trial) + ".json")).string();
    ASSERT_EQ(invoke({"project", in, "--weights", w, "--consistent-out", out}).status, 0);
    const auto check = invoke({"check", out});
    ASSERT_EQ(check.status, 0);
    EXPECT_EQ(json::parse(check.out).at("consistent"), true);
  }
}

TEST_F(CliTest, FactorAndRank) {
  const auto path = write_matrix("b.csv", phi_upper3(1, 2, 3));
  const auto f = invoke({"factor", path});
  ASSERT_EQ(f.status, 0);
  const auto report = json::parse(f.out);
  EXPECT_NEAR(report.at("consistent_factor").at("rows")[0][1].get<double>(), std::exp(1.0 / 3), 1e-12);

  const auto r = invoke({"rank", path});
  ASSERT_EQ(r.status, 0);
  const auto lv = json::parse(r.out).at("log_values").get<std::vector<double>>();
  EXPECT_NEAR(lv[0], 1.0, 1e-12);
  EXPECT_NEAR(lv[1], 2.0 / 3, 1e-12);
  EXPECT_NEAR(lv[2], -5.0 / 3, 1e-12);
}

TEST_F(CliTest, BasisHn4) {
  const auto r = invoke({"basis", "--subspace", "hn", "--order", "4"});
  ASSERT_EQ(r.status, 0);
  const auto basis = io::basis_from_json(json::parse(r.out));
  const auto expected = hn_cycle_basis(4);
  ASSERT_EQ(basis.elements.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(basis.elements[k], expected.elements[k]);
}

TEST_F(CliTest, BasisRoundTripIsBitEqual) {
  for (const char* sub : {"ln", "hn"}) {
    for (int n = 2; n <= 7; ++n) {
      const auto r = invoke({"basis", "--subspace", sub, "--order", std::to_string(n), "--orthogonalize-hn",
                             "--normalize-basis"});
      ASSERT_EQ(r.status, 0);
      const auto parsed = io::basis_from_json(json::parse(r.out));
      const auto mem = std::string(sub) == "ln" ? normalize(ln_basis(n)) : normalize(orthogonalize(hn_cycle_basis(n)));
      ASSERT_EQ(parsed.elements.size(), mem.elements.size());
      for (std::size_t k = 0; k < mem.elements.size(); ++k) EXPECT_EQ(parsed.elements[k], mem.elements[k]);
    }
  }
  const auto w = write_matrix("w.csv", testing::random_weight(4).matrix());
  EXPECT_EQ(invoke({"basis", "--subspace", "ln-w", "--order", "4", "--weights", w}).status, 0);
}

TEST_F(CliTest, Graph) {
  const auto r = invoke({"graph", "--order", "3"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "digraph pc {\n  1 -> 2;\n  1 -> 3;\n  2 -> 3;\n}\n");
  EXPECT_EQ(invoke({"graph", "--order", "4", "--reduced"}).out, io::comparison_graph_dot(4, true));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"check", (dir_ / "missing.csv").string()}).status, 1);
  EXPECT_EQ(invoke({"check", write("ragged.csv", "1,2\n1\n")}).status, 1);
  EXPECT_EQ(invoke({"frobnicate"}).status, 1);

  const auto nonrecip = write("nr.csv", "1,2\n3,1\n");
  const auto r = invoke({"project", nonrecip});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("NotReciprocal"), std::string::npos);
  EXPECT_EQ(invoke({"project", nonrecip, "--symmetrize"}).status, 0);
  EXPECT_EQ(invoke({"project", nonrecip, "--reciprocity-tol", "10"}).status, 0);

  const auto a = write_matrix("a.csv", phi_upper3(1, 2, 3));
  EXPECT_EQ(invoke({"project", a, "--weights", write("asym.csv", "1,0,0\n1,1,0\n0,0,1\n")}).status, 2);
  EXPECT_EQ(invoke({"project", a, "--weights", write("indef.csv", "1,0,0\n0,-1,0\n0,0,1\n")}).status, 2);
  EXPECT_EQ(invoke({"project", a, "--weights", write("small.csv", "1,0\n0,1\n")}).status, 1);
  EXPECT_EQ(invoke({"check", write("neg.csv", "1,-1\n-1,1\n")}).status, 2);
}

TEST(ExitStatus, NumericFailures) {
  EXPECT_EQ(exit_status(ErrorKind::DegenerateElement), 3);
  EXPECT_EQ(exit_status(ErrorKind::OracleMismatch), 3);
  EXPECT_EQ(exit_status(ErrorKind::SingularGram), 3);
  EXPECT_EQ(exit_status(ErrorKind::NotPositiveDefinite), 2);
  EXPECT_EQ(exit_status(ErrorKind::Parse), 1);
}

TEST_F(CliTest, BinaryOutputIsDeterministic) {
  const auto a = write_matrix("a.csv", testing::random_reciprocal(6, 2.0).entries());
  const auto w = write_matrix("w.csv", testing::random_weight(6).matrix());
  for (const std::string args : {"project " + a + " --weights " + w, "factor " + a, "check " + a + " --output text",
                                 std::string("basis --subspace ln-w --order 6 --weights ") + w}) {
    const auto first = spawn(args);
    const auto second = spawn(args);
    EXPECT_EQ(first.status, 0) << args;
    EXPECT_FALSE(first.out.empty());
    EXPECT_EQ(first.out, second.out) << args;
  }
  EXPECT_EQ(spawn("project " + write("nr.csv", "1,2\n3,1\n")).status, 2);
  EXPECT_EQ(spawn("check " + (dir_ / "nope.csv").string()).status, 1);
}

TEST_F(CliTest, TextOutputCarriesSameValues) {
  const auto a = write_matrix("a.csv", phi_upper3(1, 2, 3));
  const auto r = invoke({"project", a, "--output", "text"});
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("B_h:"), std::string::npos);
  EXPECT_NE(r.out.find("inconsistency_ratio:"), std::string::npos);
}

}  // namespace
}  // namespace pcortho::cli
