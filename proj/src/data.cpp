#include "hebbnet/data.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>

#include "hebbnet/errors.hpp"

namespace hebbnet {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (bytes.size() < offset + 4) throw FormatError("truncated IDX header", bytes.size());
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void expect_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected, const char* kind) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != expected) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "bad IDX %s magic 0x%08x (expected 0x%08x)", kind, magic, expected);
    throw FormatError(buf, 0);
  }
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& compressed, const std::filesystem::path& path) {
  z_stream stream{};
  if (inflateInit2(&stream, 16 + MAX_WBITS) != Z_OK) throw IoError("zlib initialisation failed");
  stream.next_in = const_cast<Bytef*>(compressed.data());
  stream.avail_in = static_cast<uInt>(compressed.size());

  std::vector<std::uint8_t> out;
  std::uint8_t chunk[1 << 16];
  int status = Z_OK;
  while (status != Z_STREAM_END) {
    stream.next_out = chunk;
    stream.avail_out = sizeof chunk;
    status = inflate(&stream, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      const std::size_t offset = stream.total_in;
      inflateEnd(&stream);
      throw FormatError("corrupt or truncated gzip stream in " + path.string(), offset);
    }
    out.insert(out.end(), chunk, chunk + (sizeof chunk - stream.avail_out));
    if (status == Z_OK && stream.avail_in == 0 && stream.avail_out != 0) {
      const std::size_t offset = stream.total_in;
      inflateEnd(&stream);
      throw FormatError("truncated gzip stream in " + path.string(), offset);
    }
  }
  inflateEnd(&stream);
  return out;
}

std::filesystem::path find_idx(const std::filesystem::path& directory, const std::string& stem) {
  for (const auto& candidate : {directory / stem, directory / (stem + ".gz")}) {
    if (std::filesystem::exists(candidate)) return candidate;
  }
  throw IoError("missing MNIST file " + (directory / stem).string() + "[.gz]");
}

}  // namespace

std::vector<std::vector<double>> load_idx_images(std::span<const std::uint8_t> bytes) {
  expect_magic(bytes, kImageMagic, "image");
  const std::uint32_t count = read_be32(bytes, 4);
  const std::uint32_t rows = read_be32(bytes, 8);
  const std::uint32_t cols = read_be32(bytes, 12);
  if (rows != kImageSide) throw FormatError("expected 28 image rows, got " + std::to_string(rows), 8);
  if (cols != kImageSide) throw FormatError("expected 28 image columns, got " + std::to_string(cols), 12);

  constexpr std::size_t header = 16;
  const std::size_t needed = header + std::size_t{count} * kImagePixels;
  if (bytes.size() < needed) {
    throw FormatError("image data truncated: header promises " + std::to_string(count) + " images", bytes.size());
  }

  std::vector<std::vector<double>> images(count);
  for (std::size_t n = 0; n < count; ++n) {
    const std::uint8_t* src = bytes.data() + header + n * kImagePixels;
    images[n].resize(kImagePixels);
    for (std::size_t p = 0; p < kImagePixels; ++p) images[n][p] = src[p] / 255.0;
  }
  return images;
}

std::vector<int> load_idx_labels(std::span<const std::uint8_t> bytes) {
  expect_magic(bytes, kLabelMagic, "label");
  const std::uint32_t count = read_be32(bytes, 4);
  constexpr std::size_t header = 8;
  if (bytes.size() < header + count) {
    throw FormatError("label data truncated: header promises " + std::to_string(count) + " labels", bytes.size());
  }
  std::vector<int> labels(count);
  for (std::size_t n = 0; n < count; ++n) {
    const std::uint8_t label = bytes[header + n];
    if (label >= kDigitCount) throw FormatError("label " + std::to_string(label) + " is not a digit", header + n);
    labels[n] = label;
  }
  return labels;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) return gunzip(bytes, path);
  return bytes;
}

std::vector<LabeledExample> zip_examples(std::vector<std::vector<double>> images, std::span<const int> labels) {
  if (images.size() != labels.size()) {
    throw DataError("image count " + std::to_string(images.size()) + " does not match label count " +
                    std::to_string(labels.size()));
  }
  std::vector<LabeledExample> examples(images.size());
  for (std::size_t n = 0; n < images.size(); ++n) {
    examples[n].pixels = std::move(images[n]);
    examples[n].label = labels[n];
  }
  return examples;
}

DatasetSplits load_mnist(const std::filesystem::path& directory, std::size_t validation_size) {
  auto load_pair = [&](const std::string& images, const std::string& labels) {
    return zip_examples(load_idx_images(read_file_bytes(find_idx(directory, images))),
                        load_idx_labels(read_file_bytes(find_idx(directory, labels))));
  };
  DatasetSplits splits;
  splits.train = load_pair("train-images-idx3-ubyte", "train-labels-idx1-ubyte");
  splits.test = load_pair("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte");
  if (validation_size >= splits.train.size()) {
    throw DataError("validation split of " + std::to_string(validation_size) + " leaves no training images");
  }
  const auto cut = splits.train.end() - static_cast<std::ptrdiff_t>(validation_size);
  splits.validation.assign(std::make_move_iterator(cut), std::make_move_iterator(splits.train.end()));
  splits.train.erase(cut, splits.train.end());
  return splits;
}

std::vector<double> one_hot(int label, std::size_t classes) {
  if (label < 0 || static_cast<std::size_t>(label) >= classes) {
    throw std::invalid_argument("label " + std::to_string(label) + " outside 0.." + std::to_string(classes - 1));
  }
  std::vector<double> target(classes, 0.0);
  target[static_cast<std::size_t>(label)] = 1.0;
  return target;
}

std::array<std::vector<std::size_t>, kDigitCount> digit_draw_order(std::span<const LabeledExample> examples,
                                                                    std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kDigitCount> order;
  for (std::size_t n = 0; n < examples.size(); ++n) {
    const int label = examples[n].label;
    if (label < 0 || static_cast<std::size_t>(label) >= kDigitCount) {
      throw DataError("example " + std::to_string(n) + " has label " + std::to_string(label));
    }
    order[static_cast<std::size_t>(label)].push_back(n);
  }
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (auto& indices : order) std::shuffle(indices.begin(), indices.end(), rng);
  }
  return order;
}

std::vector<LabeledExample> select_ipd(std::span<const LabeledExample> examples, std::size_t ipd,
                                       std::uint64_t seed) {
  if (ipd == 0) throw std::invalid_argument("images per digit must be positive");
  const auto order = digit_draw_order(examples, seed);
  for (std::size_t digit = 0; digit < kDigitCount; ++digit) {
    if (order[digit].size() < ipd) {
      throw DataError("digit " + std::to_string(digit) + " has only " + std::to_string(order[digit].size()) +
                      " examples, " + std::to_string(ipd) + " requested");
    }
  }
  std::vector<LabeledExample> selected;
  selected.reserve(ipd * kDigitCount);
  for (std::size_t round = 0; round < ipd; ++round) {
    for (std::size_t digit = 0; digit < kDigitCount; ++digit) selected.push_back(examples[order[digit][round]]);
  }
  return selected;
}

}  // namespace hebbnet
