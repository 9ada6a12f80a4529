#include "hebbnet/network_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hebbnet/config_json.hpp"
#include "hebbnet/errors.hpp"

namespace hebbnet {
namespace {

constexpr std::array<char, 8> kMagic = {'H', 'E', 'B', 'B', 'N', 'E', 'T', '\0'};

template <typename T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t b = 0; b < sizeof(T); ++b) bytes[b] = static_cast<char>((value >> (8 * b)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(std::string("network dump truncated while reading ") + what,
                        offset_ + static_cast<std::size_t>(in_.gcount()));
    }
    offset_ += n;
  }

  template <typename T>
  T le(const char* what) {
    std::array<unsigned char, sizeof(T)> raw;
    bytes(reinterpret_cast<char*>(raw.data()), raw.size(), what);
    T value = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) value |= static_cast<T>(raw[b]) << (8 * b);
    return value;
  }

  std::size_t offset() const { return offset_; }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

}  // namespace

void save_network(const Network& net, std::ostream& out) {
  const std::string config = nlohmann::json(net.config()).dump();
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kNetworkFormatVersion);
  write_le<std::uint64_t>(out, config.size());
  out.write(config.data(), static_cast<std::streamsize>(config.size()));
  write_le<std::uint64_t>(out, net.examples_trained());
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(net.weight_layer_count()));
  for (std::size_t k = 0; k < net.weight_layer_count(); ++k) {
    const Matrix& w = net.weights(k);
    write_le<std::uint64_t>(out, w.rows());
    write_le<std::uint64_t>(out, w.cols());
    for (double v : w.values()) write_le(out, std::bit_cast<std::uint64_t>(v));
  }
  if (!out) throw IoError("failed to write network dump");
}

void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  save_network(net, out);
}

Network load_network(std::istream& in) {
  Reader reader(in);
  std::array<char, 8> magic;
  reader.bytes(magic.data(), magic.size(), "magic");
  if (magic != kMagic) throw FormatError("not a network dump (bad magic)", 0);
  const auto version = reader.le<std::uint32_t>("version");
  if (version != kNetworkFormatVersion) {
    throw FormatError("unsupported network dump version " + std::to_string(version), 8);
  }

  const auto config_size = reader.le<std::uint64_t>("config length");
  if (config_size > (std::uint64_t{1} << 30)) throw FormatError("implausible config length", 12);
  std::string text(config_size, '\0');
  const std::size_t config_offset = reader.offset();
  reader.bytes(text.data(), text.size(), "config");
  NetworkConfig config;
  try {
    config = nlohmann::json::parse(text).get<NetworkConfig>();
    config.validate();
  } catch (const std::exception& e) {
    throw FormatError(std::string("corrupt network config: ") + e.what(), config_offset);
  }

  const auto examples_trained = reader.le<std::uint64_t>("example counter");
  const auto count = reader.le<std::uint32_t>("matrix count");
  if (count != config.connections.size()) {
    throw FormatError("dump holds " + std::to_string(count) + " matrices for " +
                          std::to_string(config.connections.size()) + " connections",
                      reader.offset() - 4);
  }
  std::vector<Matrix> weights;
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::size_t shape_offset = reader.offset();
    const auto rows = reader.le<std::uint64_t>("matrix rows");
    const auto cols = reader.le<std::uint64_t>("matrix cols");
    if (rows != config.layers[k + 1].size || cols != config.layers[k].size) {
      throw FormatError("matrix " + std::to_string(k) + " shape disagrees with its layers", shape_offset);
    }
    Matrix w(rows, cols);
    for (double& v : w.values()) v = std::bit_cast<double>(reader.le<std::uint64_t>("weights"));
    weights.push_back(std::move(w));
  }
  try {
    return Network(std::move(config), std::move(weights), examples_trained);
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid network dump: ") + e.what(), reader.offset());
  }
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open network dump " + path.string());
  return load_network(in);
}

}  // namespace hebbnet
