#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "smoothpile/sandpile.hpp"

namespace smoothpile {

/// Sand value -> RGB. Figure convention: 3 white, 2 green, 1 yellow, 0 red.
struct RenderPalette {
    std::array<std::array<std::uint8_t, 3>, 4> rgb;

    static RenderPalette standard() {
        return RenderPalette{{{{{200, 30, 30}},     // 0
                               {{250, 220, 40}},    // 1
                               {{40, 150, 60}},     // 2
                               {{255, 255, 255}}}}};  // 3
    }
};

/// Binary PPM (P6), one pixel per vertex, top row = largest y. The rectangle
/// [x0,x1]x[y0,y1] is sampled through the domain (cylinders unroll
/// periodically). Values outside 0..3 raise ValueOutOfPaletteError.
std::string render_ppm(const SandpileState& phi, const RenderPalette& pal, Value x0, Value x1,
                       Value y0, Value y1);

/// Render the natural window: box bounds, or one period of a cylinder.
std::string render_ppm(const SandpileState& phi, const RenderPalette& pal);

void save_ppm(const std::string& ppm_bytes, const std::string& path);

}  // namespace smoothpile
