#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <mtvq/cli.hpp>

namespace fs = std::filesystem;
using namespace mtvq;

namespace {

struct Invocation {
    int status = 0;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    args.insert(args.begin(), "mtvq");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mtvq_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        setenv("MTVQ_THREADS", "1", 1);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, PresetsListing) {
    const auto r = run({"presets"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("cu-thq-hhtp"), std::string::npos);
    EXPECT_NE(r.out.find("16 qubits"), std::string::npos);
    EXPECT_NE(r.out.find("sioc-cof2"), std::string::npos);
    EXPECT_NE(r.out.find("12 qubits"), std::string::npos);
}

TEST_F(CliTest, ExactMufGroundIsZero) {
    const auto out = dir_ / "spectrum.json";
    const auto r = run({"exact", "--preset", "muf-7", "--top", "6", "--out", out.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("ground state H = 0.000000"), std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(doc.size(), 6u);
}

TEST_F(CliTest, ExactCuPrintsAlternatingMinimizer) {
    const auto r = run({"exact", "--preset", "cu-thq-hhtp", "--top", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("minimizer: 0110011001100110"), std::string::npos);
}

TEST_F(CliTest, ExactTopZeroIsUsageError) {
    EXPECT_EQ(run({"exact", "--preset", "muf-7", "--top", "0"}).status, cli::kUsage);
}

TEST_F(CliTest, SourceFlagsAreExclusiveAndRequired) {
    EXPECT_EQ(run({"exact", "--preset", "muf-7", "--file", "x.json"}).status, cli::kUsage);
    EXPECT_EQ(run({"exact"}).status, cli::kUsage);
    EXPECT_EQ(run({}).status, cli::kUsage);
    EXPECT_EQ(run({"bogus"}).status, cli::kUsage);
}

TEST_F(CliTest, UnknownPresetIsValidationError) {
    EXPECT_EQ(run({"exact", "--preset", "nope"}).status, cli::kValidation);
}

TEST_F(CliTest, MissingFileIsRuntimeError) {
    EXPECT_EQ(run({"exact", "--file", (dir_ / "missing.json").string()}).status, cli::kRuntime);
}

TEST_F(CliTest, EvalTerms) {
    const auto ground = run({"eval", "--preset", "muf-7", "--config", "011001100110"});
    ASSERT_EQ(ground.status, 0) << ground.err;
    EXPECT_NE(ground.out.find("total: 0.000000"), std::string::npos);

    const auto zero = run({"eval", "--preset", "cu-thq-hhtp", "--config", "0000000000000000"});
    ASSERT_EQ(zero.status, 0);
    EXPECT_NE(zero.out.find("ratio: 32.000000"), std::string::npos);
    EXPECT_NE(zero.out.find("occupancy: 8.000000"), std::string::npos);
}

TEST_F(CliTest, EvalBadBitstrings) {
    EXPECT_EQ(run({"eval", "--preset", "muf-7", "--config", "011001100112"}).status,
              cli::kValidation);
    EXPECT_EQ(run({"eval", "--preset", "muf-7", "--config", "0110"}).status, cli::kValidation);
}

TEST_F(CliTest, EvalAgreesWithExact) {
    const auto exact = run({"exact", "--preset", "sioc-cof2", "--top", "1"});
    ASSERT_EQ(exact.status, 0);
    const auto at = exact.out.find("minimizer: ");
    const auto bits = exact.out.substr(at + 11, 12);
    const auto h = exact.out.substr(exact.out.find("H = ") + 4,
                                    exact.out.find(" (") - exact.out.find("H = ") - 4);
    const auto eval = run({"eval", "--preset", "sioc-cof2", "--config", bits});
    EXPECT_NE(eval.out.find("total: " + h), std::string::npos) << eval.out << h;
}

TEST_F(CliTest, FileSourceMatchesPreset) {
    const auto file = dir_ / "muf.json";
    ASSERT_EQ(run({"export", "--preset", "muf-7", "--out", file.string()}).status, 0);
    const auto a = run({"exact", "--preset", "muf-7", "--top", "3"});
    const auto b = run({"exact", "--file", file.string(), "--top", "3"});
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, VqeReproducibleCsv) {
    const auto a = dir_ / "a.csv";
    const auto b = dir_ / "b.csv";
    const std::vector<std::string> common{"vqe",  "--preset", "muf-7", "--runs", "1",
                                          "--seed", "7",     "--iters", "30"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--out", a.string()});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--out", b.string()});
    const auto ra = run(args_a);
    ASSERT_EQ(ra.status, 0) << ra.err;
    ASSERT_EQ(run(args_b).status, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a).rfind("bitstring,hamiltonian,probability\n", 0), 0u);
    EXPECT_NE(ra.out.find("match: "), std::string::npos);
    EXPECT_NE(ra.out.find("argmax: "), std::string::npos);
}

TEST_F(CliTest, VqeZeroShotsIsUsageError) {
    const auto out = dir_ / "never.csv";
    EXPECT_EQ(run({"vqe", "--preset", "muf-7", "--shots", "0", "--out", out.string()}).status,
              cli::kUsage);
    EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, SweepRowsAndReproducibility) {
    const auto a = dir_ / "a.csv";
    const auto b = dir_ / "b.csv";
    for (const auto &path : {a, b}) {
        const auto r = run({"sweep", "--preset", "muf-7", "--alphas", "0.01,0.1,0.25,0.5",
                            "--runs", "2", "--iters", "5", "--seed", "3", "--out",
                            path.string()});
        ASSERT_EQ(r.status, 0) << r.err;
    }
    const auto text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
    EXPECT_EQ(text.rfind("alpha,successes,runs\n0.010000,", 0), 0u);
}

TEST_F(CliTest, SweepArgumentErrors) {
    EXPECT_EQ(run({"sweep", "--preset", "muf-7", "--alphas", ""}).status, cli::kUsage);
    EXPECT_EQ(run({"sweep", "--preset", "muf-7", "--alphas", "0.1,abc"}).status, cli::kUsage);
    EXPECT_EQ(
        run({"sweep", "--preset", "muf-7", "--alphas", "1.5", "--runs", "1", "--iters", "1"})
            .status,
        cli::kValidation);
}

TEST_F(CliTest, BadThreadVariableIsUsageError) {
    setenv("MTVQ_THREADS", "zero", 1);
    EXPECT_EQ(run({"exact", "--preset", "muf-7"}).status, cli::kUsage);
}

TEST_F(CliTest, ExitCodeMapping) {
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Parse), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Schema), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Invariant), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Range), 2);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Bound), 3);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Numeric), 3);
    EXPECT_EQ(cli::exit_code_for(ErrorKind::Io), 3);
}

TEST_F(CliTest, BinaryExitStatuses) {
    const std::string exe = MTVQ_CLI_PATH;
    const auto status = [&](const std::string &args) {
        const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("presets"), 0);
    EXPECT_EQ(status("exact --preset muf-7 --top 0"), 1);
    EXPECT_EQ(status("eval --preset muf-7 --config 2"), 2);
    EXPECT_EQ(status("exact --file /nonexistent.json"), 3);
}
