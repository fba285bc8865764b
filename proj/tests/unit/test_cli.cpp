#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nabla_kit/cli.hpp"

using namespace nabla_kit;
using namespace nabla_kit::cli;

namespace fs = std::filesystem;

namespace {

Report run_json(const std::string& command, const std::string& input) {
  RunConfig cfg;
  cfg.command = command;
  cfg.input = json::parse(input);
  return run(cfg);
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / ("nabla_kit_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

struct Proc {
  int status = -1;
  std::string out;
};

Proc invoke(const std::string& args) {
  const auto out = scratch_dir() / "stdout.txt";
  const std::string cmd = std::string(NABLA_KIT_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  Proc p;
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  p.out = ss.str();
  return p;
}

}  // namespace

TEST(CsvParsing, AcceptsHeaderAndRejectsMalformedInput) {
  const auto m = parse_weight_csv("a,b\n1,-1\n-1,1\n");
  EXPECT_EQ(m, (Matrix{{1, -1}, {-1, 1}}));
  EXPECT_EQ(parse_weight_csv("0.5, 2e-1\n"), (Matrix{{0.5, 0.2}}));
  EXPECT_THROW(parse_weight_csv("1,2\n3\n"), ContractViolation);
  EXPECT_THROW(parse_weight_csv("1,x\n"), ContractViolation);
  EXPECT_THROW(parse_weight_csv(""), ContractViolation);
  EXPECT_THROW(load_weight_csv("/nonexistent/weights.csv"), ContractViolation);
  EXPECT_EQ(parse_list("1, 2,3.5"), (std::vector<double>{1, 2, 3.5}));
  EXPECT_THROW(parse_list("1,,2"), ContractViolation);
}

TEST(CsvParsing, GridFromRowOrColumn) {
  EXPECT_EQ(load_grid_csv(write_file("row.csv", "0,0.5,2\n").string()), (std::vector<double>{0, 0.5, 2}));
  EXPECT_EQ(load_grid_csv(write_file("col.csv", "0\n0.5\n2\n").string()), (std::vector<double>{0, 0.5, 2}));
  EXPECT_THROW(load_grid_csv(write_file("sq.csv", "0,1\n2,3\n").string()), ContractViolation);
}

TEST(FunctionSpecs, ParseOneAndTwoDimensional) {
  EXPECT_DOUBLE_EQ(parse_function_1d(json::parse(R"({"polynomial":[1,2,3]})"))(2.0), 17.0);
  EXPECT_DOUBLE_EQ(parse_function_1d(json::parse(R"({"constant":2.5})"))(7.0), 2.5);
  EXPECT_NEAR(parse_function_1d(json::parse(R"({"family":"psi_v","params":{"v":2,"m":1}})"))(0.0), 0.5, 1e-15);
  EXPECT_NEAR(parse_function_1d(json::parse(R"("rodrigues")"), Interval::closed(-1, 1))(1.0), 1.0, 1e-14);
  const auto t = parse_function_2d(json::parse(R"({"tensor":[{"polynomial":[0,1]},{"polynomial":[0,0,1]}]})"));
  EXPECT_DOUBLE_EQ(t(2.0, 3.0), 18.0);
  const auto poly = parse_function_2d(json::parse(R"({"polynomial":[[1,0],[0,2]]})"));
  EXPECT_DOUBLE_EQ(poly(2.0, 3.0), 13.0);
  EXPECT_THROW(parse_function_2d(json::parse(R"({"bogus":1})")), ContractViolation);
  EXPECT_DOUBLE_EQ(parse_function_2d(json::parse(R"({"constant":2,"scale":-3})"))(0.0, 0.0), -6.0);
  EXPECT_THROW(parse_function_1d(json::parse(R"("no_such_family")")), ContractViolation);
}

TEST(Run, CertifyDoubleSumHandExample) {
  const auto r = run_json("certify", R"({"kind":"double-sum","matrix":[[1,-1],[-1,1]],
                                          "grid":[0,1],"zgrid":[0,1],"order":[1,1]})");
  EXPECT_EQ(r.exit_status, kExitOk);
  EXPECT_EQ(r.result.at("verdict"), "certified");
  EXPECT_EQ(r.paper_conditions.size(), 4u);
}

TEST(Run, ExitCodesForRefutedInputAndNumericalFailures) {
  EXPECT_EQ(run_json("certify", R"({"kind":"integral-1d","kernel":{"constant":1},"interval":[0,2],"order":1})")
                .exit_status,
            kExitRefuted);
  EXPECT_EQ(run_json("identity", R"({"kind":"seq","weights":[1,1],"sequence":[1],"order":1})").exit_status,
            kExitInputError);
  EXPECT_EQ(run_json("nope", "{}").exit_status, kExitInputError);
  // Lambda(G0) is negative for the negated kernel
  const auto r = run_json("mean", R"({"kind":"mvt","kernel":{"family":"rodrigues","params":{"M":1,"N":1},"scale":-1},"rect":[-1,1,-1,1],
                                     "order":[1,1],"function":{"family":"zeta_q","params":{"q":-1,"m":1}}})");
  EXPECT_EQ(r.exit_status, kExitNumericalFailure) << r.error;
  EXPECT_FALSE(r.error.empty());
  EXPECT_EQ(run_json("families", R"({"kind":"verify","family":"phi_v","params":{"v":0.5,"m":3},"grid":[0,0.5,1,2]})").exit_status,
            kExitRefuted);
}

TEST(Run, IdentityAndMeanResults) {
  const auto s = run_json("identity", R"({"kind":"seq","weights":[1,1,1],"sequence":[3,2,3],"order":1})");
  ASSERT_EQ(s.exit_status, kExitOk) << s.error;
  EXPECT_EQ(s.result.at("lhs"), 8.0);
  const auto pm = run_json("mean", R"({"kind":"power","kernel":{"constant":1},"rect":[1,2,1,2],"p":1,"q":2})");
  ASSERT_EQ(pm.exit_status, kExitOk) << pm.error;
  EXPECT_NEAR(pm.result.at("value").get<double>(), 225.0 / 196.0, 1e-12);
}

TEST(Serialization, CertificateRoundTrip) {
  const auto r = run_json("certify", R"({"kind":"integral-1d","kernel":{"family":"rodrigues","params":{"M":2}},"interval":[-1,1],"order":2})");
  ASSERT_EQ(r.exit_status, kExitOk) << r.error;
  const auto cert = r.result.get<Certificate>();
  EXPECT_TRUE(cert.certified());
  json again = cert;
  EXPECT_EQ(again, r.result);
  const auto j = r.to_json();
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_TRUE(j.at("timing").contains("elapsed_ms"));
  EXPECT_FALSE(r.to_json_untimed().contains("timing"));
}

TEST(Serialization, IdentityReportRoundTrip) {
  IdentityReport rep = make_identity_report(3.0, {{"a", 1.0}, {"b", 2.0}});
  json j = rep;
  const auto back = j.get<IdentityReport>();
  EXPECT_EQ(back.lhs, 3.0);
  EXPECT_EQ(back.block("b"), 2.0);
  EXPECT_EQ(back.abs_residual, rep.abs_residual);
}

TEST(Run, DeterministicUntimedOutput) {
  const std::string in = R"({"kind":"double-integral","kernel":{"family":"rodrigues","params":{"M":1}},"rect":[-1,1,-1,1],
                             "order":[1,1],"probes":[5,5]})";
  const auto a = run_json("certify", in).to_json_untimed().dump();
  const auto b = run_json("certify", in).to_json_untimed().dump();
  EXPECT_EQ(a, b);
}

TEST(Binary, ExitStatusesAndJsonOutput) {
  const auto p = write_file("p.csv", "1,-1\n-1,1\n");
  const auto ok = invoke("certify --kind double-sum --matrix " + p.string() +
                         " --grid 0,1 0,1 --order 1 1 --format json");
  EXPECT_EQ(ok.status, 0);
  const auto j = json::parse(ok.out);
  EXPECT_EQ(j.at("result").at("verdict"), "certified");

  EXPECT_EQ(invoke("certify --kind double-sum --matrix /nonexistent.csv --grid 0,1 0,1 --order 1 1").status, 2);
  EXPECT_EQ(invoke("certify --kind integral-1d --kernel constant --interval 0 2 --order 1").status, 1);
  EXPECT_EQ(invoke("identity --kind seq --weights 1,1,1 --sequence 3,2,3 --order 1").status, 0);
  EXPECT_EQ(invoke("--no-such-flag").status, 2);
  const auto fam = invoke("families --format json");
  EXPECT_EQ(fam.status, 0);
  EXPECT_EQ(json::parse(fam.out).at("result").at("families").size(), 12u);
}

TEST(Binary, OutputFileMatchesStdout) {
  const auto out = scratch_dir() / "report.json";
  const std::string args = "mean --kind power --kernel constant --rect 1 2 1 2 -p 1 -q 2 --format json";
  const auto a = invoke(args);
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(invoke(args + " --output " + out.string()).status, 0);
  std::ifstream in(out);
  const auto j = json::parse(in);
  EXPECT_EQ(j.at("result"), json::parse(a.out).at("result"));
}

TEST(Binary, DocumentedExamples) {
  const auto y = write_file("y.csv", "0\n1\n");
  const auto z = write_file("z.csv", "0,1\n");
  const auto p = write_file("p2.csv", "1,-1\n-1,1\n");
  const auto cert = invoke("certify --kind double-sum --matrix " + p.string() + " --grid " + y.string() + " " +
                           z.string() + " --order 1 1 --format json");
  EXPECT_EQ(cert.status, 0);
  EXPECT_EQ(json::parse(cert.out).at("result").at("verdict"), "certified");

  const auto seq = invoke("identity --kind seq --weights \"1,1\" --sequence \"5,3\" --order 1 --format json");
  EXPECT_EQ(seq.status, 0);
  EXPECT_EQ(json::parse(seq.out).at("result").at("abs_residual"), 0.0);

  EXPECT_EQ(invoke("certify --kind integral-1d --kernel constant --interval -1 1 --order 1").status, 1);
}

TEST(CsvParsing, KeepsDeclaredDimensions) {
  const auto m = parse_weight_csv("1,2\n3,4\n5,6\n");
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(2, 1), 6.0);
}

TEST(Serialization, ReportsReparseToEqualPayloads) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"identity", R"({"kind":"double-sum","matrix":[[1,-2],[0.5,1]],"grid":[0,1],"zgrid":[0,2],"order":[1,1],
                      "function":{"family":"exp_sum"}})"},
      {"diff", R"({"grid":[0.2,0.5,1.5],"function":"neg_log","order":2})"},
      {"mean", R"({"kind":"mvt","kernel":{"family":"rodrigues","params":{"M":1}},"rect":[-1,1,-1,1],
                  "order":[1,1],"function":{"family":"zeta_q","params":{"q":-1,"m":1}}})"},
      {"gram", R"({"kernel":{"family":"rodrigues","params":{"M":1}},"rect":[-1,1,-1,1],"order":[1,1],
                  "exponents":[0.5,1.5,2.5]})"},
      {"families", R"({"kind":"verify","family":"zeta_q","grid":[0,1],"zgrid":[0,1]})"},
  };
  for (const auto& [cmd, in] : cases) {
    const auto rep = run_json(cmd, in);
    EXPECT_EQ(rep.exit_status, kExitOk) << cmd << ": " << rep.error;
    const auto j = rep.to_json();
    EXPECT_EQ(json::parse(j.dump()), j) << cmd;
  }
}
