#ifndef HEBBNET_DATA_HPP_
#define HEBBNET_DATA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hebbnet {

inline constexpr std::size_t kImageSide = 28;
inline constexpr std::size_t kImagePixels = kImageSide * kImageSide;
inline constexpr std::size_t kDigitCount = 10;

struct LabeledExample {
  std::vector<double> pixels;  // row-major, each in [0, 1]
  int label = 0;
};

struct DatasetSplits {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
  std::vector<LabeledExample> validation;
};

// IDX containers (big-endian headers). Images must be 28x28 unsigned bytes
// (magic 0x00000803); labels are single bytes 0..9 (magic 0x00000801).
// Malformed input raises FormatError with the offending byte offset.

/// Pixels are scaled by 1/255.
std::vector<std::vector<double>> load_idx_images(std::span<const std::uint8_t> bytes);
std::vector<int> load_idx_labels(std::span<const std::uint8_t> bytes);

/// Reads a whole file, inflating it when it starts with the gzip magic 0x1f8b.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

/// Pairs images with labels; mismatched counts raise DataError.
std::vector<LabeledExample> zip_examples(std::vector<std::vector<double>> images, std::span<const int> labels);

/// Loads the four standard MNIST files from `directory` (raw or .gz). The
/// last `validation_size` images of the training file become the validation
/// split.
DatasetSplits load_mnist(const std::filesystem::path& directory, std::size_t validation_size = 10000);

std::vector<double> one_hot(int label, std::size_t classes = kDigitCount);

/// Indices of each digit's examples in the order select_ipd() draws them:
/// file order for seed 0, a seeded shuffle otherwise.
std::array<std::vector<std::size_t>, kDigitCount> digit_draw_order(std::span<const LabeledExample> examples,
                                                                    std::uint64_t seed);

/// Picks exactly `ipd` examples of every digit and interleaves them
/// round-robin (0, 1, ..., 9, 0, 1, ...). Raises DataError naming the first
/// digit that has fewer than `ipd` examples.
std::vector<LabeledExample> select_ipd(std::span<const LabeledExample> examples, std::size_t ipd,
                                       std::uint64_t seed = 0);

}  // namespace hebbnet

#endif  // HEBBNET_DATA_HPP_
