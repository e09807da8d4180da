#include "bootperc/snapshot.hpp"

#include "bootperc/error.hpp"

#include <fstream>
#include <sstream>

namespace bootperc {

void write_snapshot(std::ostream& out, const Configuration& config) {
    const Box& box = config.box();
    out << "BPGRID " << box.dims();
    for (int L : box.sides()) out << ' ' << L;
    out << ' ' << to_string(box.boundary()) << '\n';

    const auto& cells = config.cells();
    std::uint8_t current = 0;
    std::size_t run = 0;
    int on_line = 0;
    auto emit = [&](std::size_t n) {
        if (on_line > 0) out << (on_line % 16 == 0 ? '\n' : ' ');
        out << n;
        ++on_line;
    };
    for (auto c : cells) {
        if (c == current) {
            ++run;
        } else {
            emit(run);
            current = c;
            run = 1;
        }
    }
    emit(run);
    out << '\n';
}

Configuration read_snapshot(std::istream& in) {
    std::string magic;
    int d = 0;
    if (!(in >> magic >> d) || magic != "BPGRID" || d < 1) throw UsageError("not a BPGRID snapshot");
    std::vector<int> sides(static_cast<std::size_t>(d));
    for (auto& L : sides) {
        if (!(in >> L)) throw UsageError("truncated BPGRID header");
    }
    std::string boundary;
    if (!(in >> boundary) || (boundary != "closed" && boundary != "torus")) {
        throw UsageError("BPGRID boundary must be 'closed' or 'torus'");
    }
    Box box(sides, boundary == "torus" ? Boundary::Torus : Boundary::Closed);
    std::vector<std::uint8_t> cells;
    cells.reserve(box.volume());
    std::uint8_t value = 0;
    std::size_t run = 0;
    while (in >> run) {
        if (run > box.volume() - cells.size()) throw UsageError("BPGRID runs exceed the box volume");
        cells.insert(cells.end(), run, value);
        value ^= 1;
    }
    if (!in.eof()) throw UsageError("BPGRID body contains a non-numeric token");
    if (cells.size() != box.volume()) throw UsageError("BPGRID runs do not cover the box");
    return Configuration(std::move(box), std::move(cells));
}

std::string snapshot_to_string(const Configuration& config) {
    std::ostringstream os;
    write_snapshot(os, config);
    return os.str();
}

Configuration snapshot_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_snapshot(is);
}

void save_snapshot(const std::string& path, const Configuration& config) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write snapshot '" + path + "'");
    write_snapshot(out, config);
}

Configuration load_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open snapshot '" + path + "'");
    return read_snapshot(in);
}

} // namespace bootperc
