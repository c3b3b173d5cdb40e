// Copyright 2026 The uicompress Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uicompress/raster.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "uicompress/error.hpp"

namespace uicompress {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h),
      pixels(static_cast<std::size_t>(w > 0 ? w : 0) * static_cast<std::size_t>(h > 0 ? h : 0),
             fill) {}

namespace {

// Skips whitespace and '#' comments between header fields.
void skip_separators(std::istream& in) {
  while (in) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
}

long read_header_int(std::istream& in, const char* field) {
  skip_separators(in);
  long value = -1;
  if (!(in >> value) || value < 0) {
    throw InputError(std::string("malformed PNM header: bad ") + field);
  }
  return value;
}

}  // namespace

GrayImage read_pnm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
    throw InputError("unsupported raster: expected binary PGM (P5) or PPM (P6)");
  }
  const bool color = magic[1] == '6';
  const long w = read_header_int(in, "width");
  const long h = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (maxval != 255) throw InputError("unsupported PNM maxval (only 255 is accepted)");
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) throw InputError("malformed PNM header");
  if (w == 0 || h == 0) return GrayImage(static_cast<int>(w), static_cast<int>(h));
  if (w > 1 << 16 || h > 1 << 16) throw InputError("PNM dimensions too large");

  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  const std::size_t channels = color ? 3 : 1;
  std::vector<char> raw(img.pixels.size() * channels);
  if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
    throw InputError("truncated PNM raster");
  }
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    if (!color) {
      img.pixels[i] = static_cast<std::uint8_t>(raw[i]);
    } else {
      const auto r = static_cast<unsigned>(static_cast<std::uint8_t>(raw[3 * i]));
      const auto g = static_cast<unsigned>(static_cast<std::uint8_t>(raw[3 * i + 1]));
      const auto b = static_cast<unsigned>(static_cast<std::uint8_t>(raw[3 * i + 2]));
      img.pixels[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
  }
  return img;
}

GrayImage read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_pnm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_pgm(out, image);
}

}  // namespace uicompress
