#include "cli.hpp"

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_fixtures.hpp"

namespace fs = std::filesystem;
using namespace hebbnet::testing;

namespace {

// Train file holds 100 training images plus the 10000-image validation tail.
constexpr std::uint32_t kTrainFileCount = 10100;
constexpr std::uint32_t kTestCount = 50;

std::vector<std::uint8_t> band_images(std::uint32_t count) {
  std::vector<std::vector<std::uint8_t>> templates;
  for (int d = 0; d < 10; ++d) {
    std::vector<std::uint8_t> t;
    for (double v : band_digit(d, d).pixels) t.push_back(static_cast<std::uint8_t>(v * 255.0));
    templates.push_back(std::move(t));
  }
  return idx_images(count, [&](std::uint32_t n, std::size_t p) { return templates[n % 10][p]; });
}

std::vector<std::uint8_t> band_labels(std::uint32_t count) {
  std::vector<std::uint8_t> labels;
  for (std::uint32_t n = 0; n < count; ++n) labels.push_back(static_cast<std::uint8_t>(n % 10));
  return idx_labels(labels);
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / ("hebbnet_cli_" + std::to_string(getpid()));
    fs::create_directories(root_ / "mnist");
    write_bytes(root_ / "mnist" / "train-images-idx3-ubyte.gz", gzip(band_images(kTrainFileCount)));
    write_bytes(root_ / "mnist" / "train-labels-idx1-ubyte", band_labels(kTrainFileCount));
    write_bytes(root_ / "mnist" / "t10k-images-idx3-ubyte", band_images(kTestCount));
    write_bytes(root_ / "mnist" / "t10k-labels-idx1-ubyte.gz", gzip(band_labels(kTestCount)));
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  int run(std::initializer_list<std::string> args) {
    std::vector<std::string> owned = {"hebbnet"};
    owned.insert(owned.end(), args);
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return hebbnet::cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string data_dir() { return (root_ / "mnist").string(); }

  static inline fs::path root_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_F(CliTest, TrainReportsAccuracies) {
  ASSERT_EQ(run({"train", "--preset", "shallow", "--ipd", "3", "--data-dir", data_dir()}), 0) << err_.str();
  EXPECT_NE(out_.str().find("test accuracy"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("validation accuracy"), std::string::npos);
}

TEST_F(CliTest, DataDirFromEnvironment) {
  ::setenv(hebbnet::cli::kDataDirEnv, data_dir().c_str(), 1);
  EXPECT_EQ(run({"train", "--preset", "medium", "--ipd", "1"}), 0) << err_.str();
  ::unsetenv(hebbnet::cli::kDataDirEnv);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run({"train", "--preset", "bogus", "--data-dir", data_dir()}), 0);
  EXPECT_NE(run({"train", "--ipd", "0", "--data-dir", data_dir()}), 0);
  EXPECT_NE(run({"sweep", "--ipd-list", "1,x", "--out", (root_ / "s.csv").string(), "--data-dir", data_dir()}), 0);
  EXPECT_NE(run({"frobnicate"}), 0);
  EXPECT_NE(run({"train", "--data-dir", (root_ / "absent").string()}), 0);
}

TEST_F(CliTest, SweepWritesCsvInInputOrder) {
  const fs::path csv = root_ / "sweep.csv";
  ASSERT_EQ(run({"sweep", "--preset", "shallow", "--ipd-list", "5,1,2,2", "--out", csv.string(), "--data-dir",
                 data_dir(), "--jobs", "2"}),
            0)
      << err_.str();
  const auto lines = read_lines(csv);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0].rfind("preset,ipd,", 0), 0u);
  EXPECT_EQ(lines[1].rfind("shallow,5,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("shallow,1,", 0), 0u);
  // Identical runs apart from the timing column.
  EXPECT_EQ(lines[3].substr(0, lines[3].rfind(',', lines[3].rfind(',') - 1)),
            lines[4].substr(0, lines[4].rfind(',', lines[4].rfind(',') - 1)));

  EXPECT_EQ(run({"sweep", "--ipd-list", "1", "--out", "/nonexistent-dir/s.csv", "--data-dir", data_dir()}), 1);
  EXPECT_NE(err_.str().find("error:"), std::string::npos);
}

TEST_F(CliTest, SavedModelEvaluatesAndInspects) {
  const fs::path model = root_ / "net.bin";
  ASSERT_EQ(run({"train", "--preset", "medium", "--ipd", "2", "--rule", "extended", "--save-model", model.string(),
                 "--data-dir", data_dir()}),
            0)
      << err_.str();
  ASSERT_TRUE(fs::exists(model));

  ASSERT_EQ(run({"eval", "--model", model.string(), "--split", "validation", "--data-dir", data_dir()}), 0)
      << err_.str();
  EXPECT_NE(out_.str().find("validation accuracy"), std::string::npos);

  ASSERT_EQ(run({"inspect", "--model", model.string()}), 0) << err_.str();
  EXPECT_NE(out_.str().find("\"extended\""), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("\"examples_trained\": 20"), std::string::npos) << out_.str();

  EXPECT_NE(run({"eval", "--model", (root_ / "missing.bin").string(), "--data-dir", data_dir()}), 0);
  EXPECT_NE(run({"eval", "--model", model.string(), "--split", "holdout", "--data-dir", data_dir()}), 0);
}

TEST_F(CliTest, ConfigFileLayersUnderFlags) {
  const fs::path cfg = root_ / "exp.json";
  std::ofstream(cfg) << R"({
    // comments are allowed
    "preset": "shallow", "ipd": 4, "plasticity": {"threshold": 0.3}
  })";
  ASSERT_EQ(run({"inspect", "--config", cfg.string(), "--ipd", "7"}), 0) << err_.str();
  EXPECT_NE(out_.str().find("\"ipd\": 7"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("\"threshold\": 0.3"), std::string::npos);
  EXPECT_NE(out_.str().find("\"preset\": \"shallow\""), std::string::npos);
}

TEST_F(CliTest, AssistedRounds) {
  ASSERT_EQ(run({"train", "--preset", "shallow", "--ipd", "2", "--assist-rounds", "2", "--assist-top-k", "2",
                 "--data-dir", data_dir()}),
            0)
      << err_.str();
  EXPECT_NE(out_.str().find("assisted round 2"), std::string::npos) << out_.str();
}
