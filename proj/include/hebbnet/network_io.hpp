#ifndef HEBBNET_NETWORK_IO_HPP_
#define HEBBNET_NETWORK_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "hebbnet/network.hpp"

namespace hebbnet {

// Network dump, format version 1. All integers little-endian.
//
//   offset  size  field
//   0       8     magic "HEBBNET\0"
//   8       4     u32 format version (1)
//   12      8     u64 length L of the configuration JSON
//   20      L     NetworkConfig as UTF-8 JSON
//   20+L    8     u64 examples trained so far
//   28+L    4     u32 number of weight matrices K
//   then K times: u64 rows, u64 cols, rows*cols IEEE-754 binary64 values (row-major)
//
// Loading rebuilds the network through its validating constructor, so a
// dump whose weights leave [-1, 1] or whose shapes disagree with the
// configuration is rejected.

inline constexpr std::uint32_t kNetworkFormatVersion = 1;

void save_network(const Network& net, std::ostream& out);
void save_network(const Network& net, const std::filesystem::path& path);

/// Throws FormatError on truncated or corrupt input.
Network load_network(std::istream& in);
Network load_network(const std::filesystem::path& path);

}  // namespace hebbnet

#endif  // HEBBNET_NETWORK_IO_HPP_
