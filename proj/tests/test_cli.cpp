#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsk/cli.hpp"
#include "qsk/io.hpp"

namespace {

using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "qsk");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = qsk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("qsk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST(CliBounds, TableRows) {
    const Result r = run({"bounds", "--d-min", "2", "--d-max", "3"});
    EXPECT_EQ(r.code, qsk::cli::kExitPass);
    EXPECT_NE(r.out.find("1.414214          1.414214       2    1.414214"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("3.098076          3.098076       4    1.291"), std::string::npos) << r.out;
}

TEST(CliBounds, MarkerAboveCap) {
    const Result r = run({"bounds", "--d-min", "4", "--d-max", "5", "--cap", "4", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["rows"][1]["classical_bruteforce"].is_null());
    EXPECT_NEAR(j["rows"][0]["classical_bruteforce"].get<double>(), j["rows"][0]["classical"].get<double>(), 1e-9);
    EXPECT_NE(run({"bounds", "--d-min", "4", "--d-max", "5", "--cap", "4"}).out.find("n/a (d > cap)"),
              std::string::npos);
}

TEST(CliVerify, CanonicalAllPasses) {
    const Result r = run({"verify", "--d", "5", "--all", "--format", "json"});
    EXPECT_EQ(r.code, qsk::cli::kExitPass) << r.out;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_NEAR(j["bell_value"].get<double>(), 8.0, 1e-9);
    EXPECT_GT(j["checks"].size(), 40u);
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
    }
    EXPECT_EQ(j["version"], QSK_TEST_VERSION);
}

TEST(CliVerify, SelectorRestrictsChecks) {
    const json j = json::parse(run({"verify", "--d", "3", "--cyclotomic", "--format", "json"}).out);
    for (const auto& c : j["checks"]) {
        EXPECT_EQ(c["name"].get<std::string>().rfind("cyclotomic: ", 0), 0u);
    }
}

TEST_F(CliFiles, ScrambledFileExtracts) {
    ASSERT_EQ(run({"realization", "--d", "3", "--out", path("r.json")}).code, 0);
    ASSERT_EQ(run({"scramble", "--file", path("r.json"), "--aux-a", "2", "--aux-b", "2", "--seed", "3", "--out",
                   path("s.json")})
                  .code,
              0);
    const Result r = run({"verify", "--file", path("s.json"), "--extract", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_GE(j["extraction"]["fidelity"].get<double>(), 1.0 - 1e-7);
    EXPECT_EQ(j["input_metadata"]["seed"], "3");
}

TEST_F(CliFiles, CorruptedFileIsInputError) {
    std::ofstream(path("bad.json")) << "{\"d\": 3, \"dims\": [3";
    const Result r = run({"verify", "--file", path("bad.json")});
    EXPECT_EQ(r.code, qsk::cli::kExitInputError);
    EXPECT_NE(r.err.find("parse error"), std::string::npos) << r.err;
}

TEST_F(CliFiles, NonViolatingFileFailsChecks) {
    qsk::RealizationFile f{[] {
        const auto d = 3;
        qsk::Realization r;
        r.d = d;
        r.state = qsk::StateVector::Zero(9);
        r.state(0) = 1.0;
        r.A = {qsk::ComplexMatrix::Identity(3, 3), qsk::ComplexMatrix::Identity(3, 3)};
        r.B = r.A;
        return r;
    }(), {}};
    qsk::write_text(path("flat.json"), qsk::dump_canonical(qsk::to_json(f)));
    const Result r = run({"verify", "--file", path("flat.json"), "--format", "json"});
    EXPECT_EQ(r.code, qsk::cli::kExitCheckFailure);
    const json j = json::parse(r.out);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_EQ(j["extraction"]["failed_stage"], "violation_gate");
}

TEST(CliVerify, WrongOrderObservableIsInputError) {
    // Eigenvalue i is not a square root of unity, so d = 2 validation fails.
    const auto dir = std::filesystem::temp_directory_path() / "qsk_cli_order";
    std::filesystem::create_directories(dir);
    json j = qsk::to_json(qsk::RealizationFile{[] {
        qsk::Realization r;
        r.d = 3;
        r.state = qsk::StateVector::Zero(9);
        r.state(0) = 1.0;
        r.A = {qsk::ComplexMatrix::Identity(3, 3), qsk::ComplexMatrix::Identity(3, 3)};
        r.B = r.A;
        return r;
    }(), {}});
    j["d"] = 2;
    j["A"][0][1][1] = json::array({0.0, 1.0});
    const std::string p = (dir / "o.json").string();
    qsk::write_text(p, j.dump());
    EXPECT_EQ(run({"verify", "--file", p}).code, qsk::cli::kExitInputError);
    std::filesystem::remove_all(dir);
}

TEST(CliSimulate, EstimateWithinFiveStandardErrors) {
    const Result r = run({"simulate", "--d", "3", "--shots", "1000000", "--seed", "11", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    const double se = j["standard_error"].get<double>();
    EXPECT_GT(se, 0.0);
    EXPECT_LE(std::abs(j["estimate"].get<double>() - 4.0), 5.0 * se);
}

TEST(CliSimulate, FewShotsWellFormed) {
    const Result r = run({"simulate", "--d", "3", "--shots", "10", "--seed", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["estimate"].is_number());
    EXPECT_GT(j["standard_error"].get<double>(), 0.1);
}

TEST_F(CliFiles, SimulateIsByteIdenticalForSameSeed) {
    const Result a = run({"simulate", "--d", "4", "--shots", "5000", "--seed", "9", "--out", path("a.json")});
    const Result b = run({"simulate", "--d", "4", "--shots", "5000", "--seed", "9", "--out", path("b.json")});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_FALSE(slurp(path("a.json")).empty());
    const Result c = run({"simulate", "--d", "4", "--shots", "5000", "--seed", "10", "--out", path("c.json")});
    EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST(CliSimulate, ZeroShotsRejected) {
    EXPECT_EQ(run({"simulate", "--d", "3", "--shots", "0"}).code, qsk::cli::kExitInputError);
}

TEST(CliCyclotomic, D12) {
    const Result r = run({"cyclotomic", "--d", "12"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Phi_12(x) = x^4 - x^2 + 1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find(": true"), std::string::npos);
    const json j = json::parse(run({"cyclotomic", "--d", "12", "--format", "json"}).out);
    EXPECT_TRUE(j["product_identity"].get<bool>());
    EXPECT_TRUE(j["equal_coefficient_demo"][0]["equal_coefficients"].get<bool>());
    EXPECT_FALSE(j["equal_coefficient_demo"][1]["equal_coefficients"].get<bool>());
    EXPECT_EQ(j["cyclotomic"].back()["coefficients"], json::array({"1", "0", "-1", "0", "1"}));
}

TEST(CliErrors, ExitCodes) {
    EXPECT_EQ(run({}).code, qsk::cli::kExitInputError);
    EXPECT_EQ(run({"nonsense"}).code, qsk::cli::kExitInputError);
    EXPECT_EQ(run({"verify"}).code, qsk::cli::kExitInputError);
    EXPECT_EQ(run({"verify", "--d", "3", "--format", "xml"}).code, qsk::cli::kExitInputError);
    EXPECT_EQ(run({"bounds", "--d-min", "5", "--d-max", "3"}).code, qsk::cli::kExitInputError);
    EXPECT_EQ(run({"--help"}).code, qsk::cli::kExitPass);
}

TEST(CliScramble, DeterministicOutput) {
    const Result a = run({"scramble", "--d", "2", "--seed", "4"});
    const Result b = run({"scramble", "--d", "2", "--seed", "4"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["dims"], json::array({4, 4}));
}

TEST(CliTolScale, TightToleranceFlagsFailures) {
    const Result r = run({"verify", "--d", "4", "--sos", "--tol-scale", "1e-12", "--format", "json"});
    EXPECT_EQ(r.code, qsk::cli::kExitCheckFailure);
    EXPECT_DOUBLE_EQ(json::parse(r.out)["tol_scale"].get<double>(), 1e-12);
}

}  // namespace
