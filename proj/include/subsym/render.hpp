#pragma once

#include <string>

#include "subsym/pattern.hpp"

namespace subsym {

/// Printable characters used by the text render, indexed by alphabet
/// position: 0-9, a-z, A-Z, then punctuation (94 in all).
extern const std::string kSymbolChars;

/// One character per cell. 2D: rows top (highest coordinate 2) first.
/// 1D: a single line. d >= 3: one block per slice, each headed by a
/// `# x3=...` comment line, slices in row-major order.
std::string render_text(const Pattern &p, std::size_t symbols);

/// PPM P6 of a 1D or 2D pattern, `scale` pixels per cell, colors from the
/// shipped 256-entry palette.
std::string render_ppm(const Pattern &p, int scale = 8);
std::string render_svg(const Pattern &p, int cell = 12);

} // namespace subsym
