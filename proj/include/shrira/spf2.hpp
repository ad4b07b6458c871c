#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "shrira/spectral_field.hpp"

namespace shrira {

/// SPF2 binary field format:
///   "SPF2" | u32 modes_x | u32 modes_y | u8 real_flag |
///   modes_x*modes_y * (f64 re, f64 im)
/// All integers and doubles little-endian; coefficients row-major over m
/// (from -modes_x/2 ascending), then n.
std::vector<std::uint8_t> encode_spf2(const SpectralField& f);
SpectralField decode_spf2(std::span<const std::uint8_t> bytes);

void save_field(const SpectralField& f, const std::filesystem::path& path);
SpectralField load_field(const std::filesystem::path& path);

}  // namespace shrira
