#include "smoothpile/render.hpp"

#include <fstream>

namespace smoothpile {

std::string render_ppm(const SandpileState& phi, const RenderPalette& pal, Value x0, Value x1,
                       Value y0, Value y1) {
    if (x1 < x0 || y1 < y0) throw BadInputError("render: empty rectangle");
    const Domain& dom = *phi.domain();
    const Value w = x1 - x0 + 1;
    const Value h = y1 - y0 + 1;

    std::string out = "P6\n" + std::to_string(w) + ' ' + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + static_cast<size_t>(w * h * 3));
    for (Value y = y1; y >= y0; --y) {
        for (Value x = x0; x <= x1; ++x) {
            const VertexId v = dom.vertex_at(Point{x, y});
            if (v < 0) throw BadInputError("render: rectangle leaves the window");
            const Value s = phi[v];
            if (s < 0 || s > 3) {
                throw ValueOutOfPaletteError("render: sand value " + std::to_string(s) +
                                             " at (" + std::to_string(x) + "," +
                                             std::to_string(y) + ")");
            }
            const auto& c = pal.rgb[static_cast<size_t>(s)];
            out.push_back(static_cast<char>(c[0]));
            out.push_back(static_cast<char>(c[1]));
            out.push_back(static_cast<char>(c[2]));
        }
    }
    return out;
}

std::string render_ppm(const SandpileState& phi, const RenderPalette& pal) {
    const Domain& dom = *phi.domain();
    if (const auto* b = dom.box_params()) {
        return render_ppm(phi, pal, b->x0, b->x1, b->y0, b->y1);
    }
    if (const auto* c = dom.cylinder_params()) {
        return render_ppm(phi, pal, 0, c->period_x - 1, c->y0, c->y1);
    }
    throw BadInputError("render: grid domains only");
}

void save_ppm(const std::string& ppm_bytes, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw BadInputError("cannot open " + path + " for writing");
    os.write(ppm_bytes.data(), static_cast<std::streamsize>(ppm_bytes.size()));
}

}  // namespace smoothpile
