#include "twolayer/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twolayer {

namespace {

std::string grid_line(const Grid& g) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "# grid dim=%d nx=%ld ny=%ld lx=%.17g ly=%.17g", g.dim(), long(g.n(0)), long(g.n(1)),
                  g.length(0), g.length(1));
    return buf;
}

Grid parse_grid_line(const std::string& line) {
    int dim = 0;
    long nx = 0, ny = 0;
    double lx = 0, ly = 0;
    if (std::sscanf(line.c_str(), "# grid dim=%d nx=%ld ny=%ld lx=%lf ly=%lf", &dim, &nx, &ny, &lx, &ly) != 5)
        throw std::runtime_error("field csv: missing or malformed grid line");
    if (dim == 1) return Grid(nx, lx);
    if (dim == 2) return Grid(nx, ny, lx, ly);
    throw std::runtime_error("field csv: dim must be 1 or 2");
}

}  // namespace

void write_fields_csv(const std::string& path, const std::vector<NamedField>& fields) {
    if (fields.empty()) throw std::invalid_argument("write_fields_csv: no fields");
    const Grid& g = fields.front().second.grid();
    for (const auto& [name, f] : fields)
        if (!(f.grid() == g)) throw std::invalid_argument("write_fields_csv: grid mismatch for " + name);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << grid_line(g) << "\n" << (g.dim() == 1 ? "x" : "x,y");
    for (const auto& nf : fields) out << "," << nf.first;
    out << "\n";
    char buf[64];
    for (Index iy = 0; iy < g.n(1); ++iy)
        for (Index ix = 0; ix < g.n(0); ++ix) {
            std::snprintf(buf, sizeof buf, "%.17g", g.coordinate(0, ix));
            out << buf;
            if (g.dim() == 2) {
                std::snprintf(buf, sizeof buf, ",%.17g", g.coordinate(1, iy));
                out << buf;
            }
            for (const auto& nf : fields) {
                std::snprintf(buf, sizeof buf, ",%.17g", nf.second[iy * g.n(0) + ix]);
                out << buf;
            }
            out << "\n";
        }
}

std::vector<NamedField> read_fields_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);
    Grid g = parse_grid_line(line);
    std::getline(in, line);
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
    }
    std::size_t ncoord = g.dim();
    if (names.size() <= ncoord) throw std::runtime_error("field csv: no value columns in " + path);
    std::vector<NamedField> out;
    for (std::size_t c = ncoord; c < names.size(); ++c) out.emplace_back(names[c], Field(g));
    Index row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= g.size()) throw std::runtime_error("field csv: too many rows in " + path);
        std::stringstream ss(line);
        std::string tok;
        std::size_t c = 0;
        while (std::getline(ss, tok, ',')) {
            if (c >= ncoord && c < names.size()) out[c - ncoord].second[row] = std::stod(tok);
            ++c;
        }
        if (c != names.size()) throw std::runtime_error("field csv: wrong column count at data row " + std::to_string(row));
        ++row;
    }
    if (row != g.size()) throw std::runtime_error("field csv: expected " + std::to_string(g.size()) + " rows in " + path);
    return out;
}

void write_field_binary(const std::string& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const Grid& g = f.grid();
    std::int32_t dim = g.dim();
    std::int64_t n[2] = {g.n(0), g.n(1)};
    double len[2] = {g.length(0), g.length(1)};
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    out.write(reinterpret_cast<const char*>(n), sizeof n);
    out.write(reinterpret_cast<const char*>(len), sizeof len);
    out.write(reinterpret_cast<const char*>(f.values().data()), std::streamsize(sizeof(double) * f.size()));
}

Field read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::int32_t dim = 0;
    std::int64_t n[2];
    double len[2];
    in.read(reinterpret_cast<char*>(&dim), sizeof dim);
    in.read(reinterpret_cast<char*>(n), sizeof n);
    in.read(reinterpret_cast<char*>(len), sizeof len);
    if (!in || (dim != 1 && dim != 2)) throw std::runtime_error("field binary: bad header in " + path);
    Grid g = dim == 1 ? Grid(n[0], len[0]) : Grid(n[0], n[1], len[0], len[1]);
    Field f(g);
    in.read(reinterpret_cast<char*>(f.values().data()), std::streamsize(sizeof(double) * f.size()));
    if (!in) throw std::runtime_error("field binary: truncated data in " + path);
    return f;
}

}  // namespace twolayer
