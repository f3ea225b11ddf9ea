#include "molback/field_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "molback/fourier.hpp"

namespace molback {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_field(const RealField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("field_io: cannot open '" + path + "' for writing");
    out << "# field schema=1\n";
    out << "n_dims = " << f.grid.n_dims << "\n";
    out << "L = " << format_double(f.grid.half_width) << "\n";
    out << "N = " << f.grid.points_per_axis << "\n";
    for (double v : f.values) out << format_double(v) << "\n";
    if (!out) throw std::runtime_error("field_io: write to '" + path + "' failed");
}

RealField read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("field_io: cannot open '" + path + "'");
    std::string line;
    int n_dims = 0, n = 0;
    double L = 0;
    int header_seen = 0;
    while (header_seen < 3 && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("field_io: malformed header in '" + path + "'");
        const std::string key = line.substr(0, line.find_first_of(" ="));
        const std::string value = line.substr(line.find_first_not_of(" =", eq));
        if (key == "n_dims") n_dims = std::stoi(value);
        else if (key == "L") L = std::stod(value);
        else if (key == "N") n = std::stoi(value);
        else throw std::runtime_error("field_io: unknown header key '" + key + "'");
        ++header_seen;
    }
    const GridSpec grid = make_grid(n_dims, L, n);
    RealField f = RealField::zeros(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("field_io: '" + path + "' ends before all samples");
        f.values[i] = std::stod(line);
    }
    return f;
}

}  // namespace molback
