#include "subsym/render.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <vector>

#include "subsym/error.hpp"
#include "subsym_embedded_data.hpp"

namespace subsym {

const std::string kSymbolChars = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                 "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

namespace {

const std::vector<std::array<int, 3>> &palette() {
  static const auto colors = [] {
    std::vector<std::array<int, 3>> out;
    std::istringstream is(embedded::symbol_palette);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#')
        continue;
      std::istringstream ls(line);
      std::array<int, 3> c{};
      if (ls >> c[0] >> c[1] >> c[2])
        out.push_back(c);
    }
    return out;
  }();
  return colors;
}

void require_planar(const Pattern &p) {
  if (p.dim() < 1 || p.dim() > 2)
    throw PreconditionError("image renders need a 1D or 2D pattern");
}

std::int64_t rows_of(const Pattern &p) { return p.dim() == 1 ? 1 : p.extent()[1]; }

// Cell at column x, row counted from the top.
Symbol cell(const Pattern &p, std::int64_t x, std::int64_t row_from_top) {
  if (p.dim() == 1)
    return p.cells()[static_cast<std::size_t>(x)];
  const std::int64_t y = p.extent()[1] - 1 - row_from_top;
  return p.cells()[static_cast<std::size_t>(y * p.extent()[0] + x)];
}

} // namespace

std::string render_text(const Pattern &p, std::size_t symbols) {
  if (symbols > kSymbolChars.size())
    throw PreconditionError("text render supports at most " +
                            std::to_string(kSymbolChars.size()) + " symbols; use ppm");
  std::string out;
  if (p.size() == 0)
    return out;
  const std::int64_t w = p.extent()[0];
  const std::int64_t h = p.dim() >= 2 ? p.extent()[1] : 1;
  const std::int64_t plane = w * h;
  const std::int64_t slices = static_cast<std::int64_t>(p.size()) / plane;
  for (std::int64_t s = 0; s < slices; ++s) {
    if (p.dim() > 2) {
      std::int64_t rest = s;
      out += "#";
      for (std::size_t i = 2; i < p.dim(); ++i) {
        const std::int64_t c = rest % p.extent()[i];
        rest /= p.extent()[i];
        out += " x" + std::to_string(i + 1) + "=" + std::to_string(p.anchor()[i] + c);
      }
      out += "\n";
    }
    for (std::int64_t y = h - 1; y >= 0; --y) {
      for (std::int64_t x = 0; x < w; ++x)
        out += kSymbolChars[p.cells()[static_cast<std::size_t>(s * plane + y * w + x)]];
      out += "\n";
    }
  }
  return out;
}

std::string render_ppm(const Pattern &p, int scale) {
  require_planar(p);
  if (scale < 1)
    throw PreconditionError("render scale must be positive");
  const std::int64_t w = p.extent()[0], h = rows_of(p);
  std::string out = "P6\n" + std::to_string(w * scale) + " " + std::to_string(h * scale) + "\n255\n";
  for (std::int64_t py = 0; py < h * scale; ++py)
    for (std::int64_t px = 0; px < w * scale; ++px)
      for (int v : palette().at(cell(p, px / scale, py / scale)))
        out.push_back(static_cast<char>(v));
  return out;
}

std::string render_svg(const Pattern &p, int cell_px) {
  require_planar(p);
  const std::int64_t w = p.extent()[0], h = rows_of(p);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w * cell_px
     << "\" height=\"" << h * cell_px << "\">\n";
  for (std::int64_t row = 0; row < h; ++row)
    for (std::int64_t x = 0; x < w; ++x) {
      const auto &c = palette().at(cell(p, x, row));
      char fill[8];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", c[0], c[1], c[2]);
      os << "<rect x=\"" << x * cell_px << "\" y=\"" << row * cell_px << "\" width=\"" << cell_px
         << "\" height=\"" << cell_px << "\" fill=\"" << fill << "\"/>\n";
    }
  os << "</svg>\n";
  return os.str();
}

} // namespace subsym
