#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gmt/grid.hpp"

namespace gmt {

enum class MaskFormat { Auto, Pbm, Png, Layers };

// Image row 0 is the top row and maps to the largest y. The grid level is the
// smallest L with 2^L >= the largest axis extent.
CellSet load_mask(const std::filesystem::path& path, MaskFormat format = MaskFormat::Auto);
CellSet parse_mask(std::string_view bytes, MaskFormat format = MaskFormat::Auto);

int level_for_extent(int max_axis);

std::string encode_pbm(const CellSet& s, bool binary = true);
std::string encode_layers(const CellSet& s);
void save_pbm(const CellSet& s, const std::filesystem::path& path);
void save_png(const CellSet& s, const std::filesystem::path& path);
// Gray image (0..255 per cell) written as PNG; for overlays.
void save_gray_png(const Grid& g, const std::vector<std::uint8_t>& pixels, const std::filesystem::path& path);
void save_layers(const CellSet& s, const std::filesystem::path& path);

}  // namespace gmt
