#include "smoothpile/field_io.hpp"

#include <fstream>
#include <sstream>

namespace smoothpile {

void write_field(const IntegerField& f, std::ostream& os) {
    const Domain& d = *f.domain();
    os << "domain " << d.header() << '\n';
    for (VertexId v = 0; v < d.size(); ++v) {
        const Point p = d.coord(v);
        os << p.x << ' ' << p.y << ' ' << f[v] << '\n';
    }
}

std::string field_to_string(const IntegerField& f) {
    std::ostringstream os;
    write_field(f, os);
    return os.str();
}

void save_field(const IntegerField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw BadInputError("cannot open " + path + " for writing");
    write_field(f, os);
}

IntegerField read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw BadInputError("field dump: empty input");
    std::istringstream hs(line);
    std::string tag, kind;
    hs >> tag >> kind;
    if (tag != "domain") throw BadInputError("field dump: missing domain header");

    DomainPtr dom;
    if (kind == "box") {
        Value x0, x1, y0, y1;
        int g;
        if (!(hs >> x0 >> x1 >> y0 >> y1 >> g)) throw BadInputError("field dump: bad box header");
        dom = Domain::box(x0, x1, y0, y1, g);
    } else if (kind == "cylinder") {
        Value a, b, y0, y1;
        int g;
        if (!(hs >> a >> b >> y0 >> y1 >> g)) throw BadInputError("field dump: bad cylinder header");
        dom = Domain::cylinder(a, b, y0, y1, g);
    } else {
        throw BadInputError("field dump: unsupported domain kind '" + kind + "'");
    }

    IntegerField f(dom, 0);
    std::vector<std::uint8_t> seen(static_cast<size_t>(dom->size()), 0);
    int count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Value x, y, val;
        if (!(ls >> x >> y >> val)) throw BadInputError("field dump: bad value line '" + line + "'");
        const VertexId v = dom->vertex_at(Point{x, y});
        if (v < 0) throw BadInputError("field dump: point outside domain in '" + line + "'");
        f[v] = val;
        if (!seen[static_cast<size_t>(v)]) {
            seen[static_cast<size_t>(v)] = 1;
            ++count;
        }
    }
    if (count != dom->size()) throw BadInputError("field dump: not all vertices assigned");
    return f;
}

IntegerField load_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw BadInputError("cannot open " + path);
    return read_field(is);
}

void write_csv(const IntegerField& f, std::ostream& os) {
    const Domain& d = *f.domain();
    Value x0, x1, y0, y1;
    if (const auto* b = d.box_params()) {
        x0 = b->x0;
        x1 = b->x1;
        y0 = b->y0;
        y1 = b->y1;
    } else if (const auto* c = d.cylinder_params()) {
        x0 = 0;
        x1 = c->period_x - 1;
        y0 = c->y0;
        y1 = c->y1;
    } else {
        throw BadInputError("csv: grid domains only");
    }
    for (Value y = y1; y >= y0; --y) {
        for (Value x = x0; x <= x1; ++x) {
            if (x > x0) os << ',';
            os << f.at(Point{x, y});
        }
        os << '\n';
    }
}

void save_csv(const IntegerField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw BadInputError("cannot open " + path + " for writing");
    write_csv(f, os);
}

}  // namespace smoothpile
