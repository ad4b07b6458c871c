#include "shrira/spf2.hpp"

#include <bit>
#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "shrira/errors.hpp"

namespace shrira {

namespace {

constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

double get_f64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + i]) << (8 * i);
  return std::bit_cast<double>(v);
}

void require_bytes(std::span<const std::uint8_t> b, std::size_t begin, std::size_t end) {
  if (b.size() < end) {
    throw FormatError("truncated SPF2 data: missing bytes [" + std::to_string(std::max(begin, b.size())) +
                      ", " + std::to_string(end) + "), have " + std::to_string(b.size()));
  }
}

}  // namespace

std::vector<std::uint8_t> encode_spf2(const SpectralField& f) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + 16 * f.grid().size());
  for (char c : {'S', 'P', 'F', '2'}) out.push_back(static_cast<std::uint8_t>(c));
  put_u32(out, static_cast<std::uint32_t>(f.grid().modes_x));
  put_u32(out, static_cast<std::uint32_t>(f.grid().modes_y));
  out.push_back(f.is_real() ? 1 : 0);
  for (Complex c : f.coeffs()) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
  return out;
}

SpectralField decode_spf2(std::span<const std::uint8_t> bytes) {
  require_bytes(bytes, 0, 4);
  if (std::memcmp(bytes.data(), "SPF2", 4) != 0) {
    throw FormatError("bad SPF2 magic (expected \"SPF2\")");
  }
  require_bytes(bytes, 4, kHeaderBytes);
  const std::uint32_t mx = get_u32(bytes, 4);
  const std::uint32_t my = get_u32(bytes, 8);
  const std::uint8_t flag = bytes[12];
  if (flag > 1) throw FormatError("bad SPF2 real_flag byte " + std::to_string(flag));
  if (!is_power_of_two(mx) || !is_power_of_two(my) || mx < 2 || my < 2 || mx > (1u << 16) ||
      my > (1u << 16)) {
    throw FormatError("SPF2 mode counts must be powers of two in [2, 65536], got " +
                      std::to_string(mx) + "x" + std::to_string(my));
  }
  const GridSpec grid(static_cast<int>(mx), static_cast<int>(my));
  const std::size_t end = kHeaderBytes + 16 * grid.size();
  require_bytes(bytes, kHeaderBytes, end);
  if (bytes.size() > end) {
    throw FormatError("SPF2 data has " + std::to_string(bytes.size() - end) +
                      " trailing bytes after offset " + std::to_string(end));
  }
  SpectralField f(grid, flag == 1);
  std::size_t at = kHeaderBytes;
  for (Complex& c : f.coeffs()) {
    c = Complex(get_f64(bytes, at), get_f64(bytes, at + 8));
    at += 16;
  }
  if (!f.all_finite()) throw FormatError("SPF2 coefficients contain NaN or Inf");
  if (f.is_real() && f.hermitian_defect() > 1e-12 * std::max(1.0, f.l2_norm())) {
    throw FormatError("SPF2 real_flag set but coefficients are not Hermitian");
  }
  return f;
}

void save_field(const SpectralField& f, const std::filesystem::path& path) {
  const auto bytes = encode_spf2(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed for " + path.string());
}

SpectralField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_spf2(bytes);
}

}  // namespace shrira
