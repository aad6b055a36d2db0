#include "forge/drawing_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace forge {

void write_drawing(std::ostream& out, const Drawing& d) {
    out << "D n=" << d.n_real() << " x=" << d.crossings() << '\n';
    for (int v = 0; v < d.num_vertices(); ++v) {
        out << "V " << v + 1 << ':';
        char sep = ' ';
        for (int g : d.rotation(v)) {
            out << sep << g;
            sep = ',';
        }
        out << '\n';
    }
    for (int i = 0; i < d.num_darts(); ++i) {
        const Dart& x = d.dart(i);
        out << "H " << i << " twin=" << x.twin << " edge=" << x.edge.a + 1 << '-' << x.edge.b + 1 << " seg=" << x.seg
            << '\n';
    }
    out << ".\n";
}

std::string to_text(const Drawing& d) {
    std::ostringstream s;
    write_drawing(s, d);
    return s.str();
}

namespace {

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::runtime_error("bad integer '" + s + "'");
    return v;
}

std::string after(const std::string& tok, const std::string& prefix) {
    if (tok.rfind(prefix, 0) != 0) throw std::runtime_error("expected '" + prefix + "' in '" + tok + "'");
    return tok.substr(prefix.size());
}

Drawing parse_record(const std::vector<std::string>& lines) {
    std::istringstream head(lines.at(0));
    std::string tag, ntok, xtok;
    head >> tag >> ntok >> xtok;
    if (tag != "D") throw std::runtime_error("record must start with 'D'");
    const int n = parse_int(after(ntok, "n="));
    const int x = parse_int(after(xtok, "x="));
    if (n < 0 || x < 0) throw std::runtime_error("negative counts");
    const int nv = n + x;
    std::size_t i = 1;
    std::vector<std::vector<int>> rot(static_cast<std::size_t>(nv));
    int darts = 0;
    for (int v = 0; v < nv; ++v, ++i) {
        if (i >= lines.size()) throw std::runtime_error("missing V line");
        const std::string& l = lines[i];
        if (l.rfind("V ", 0) != 0) throw std::runtime_error("expected V line, got '" + l + "'");
        const auto colon = l.find(':');
        if (colon == std::string::npos) throw std::runtime_error("V line without ':'");
        if (parse_int(l.substr(2, colon - 2)) != v + 1) throw std::runtime_error("V lines out of order");
        std::istringstream list(l.substr(colon + 1));
        std::string item;
        while (std::getline(list, item, ',')) {
            const auto b = item.find_first_not_of(' ');
            if (b == std::string::npos) continue;
            rot[static_cast<std::size_t>(v)].push_back(parse_int(item.substr(b)));
            ++darts;
        }
    }
    std::vector<Dart> ds(static_cast<std::size_t>(darts));
    std::vector<char> defined(static_cast<std::size_t>(darts), 0);
    for (; i < lines.size(); ++i) {
        std::istringstream hl(lines[i]);
        std::string h, id, tw, ed, sg;
        hl >> h >> id >> tw >> ed >> sg;
        if (h != "H") throw std::runtime_error("expected H line, got '" + lines[i] + "'");
        const int k = parse_int(id);
        if (k < 0 || k >= darts) throw std::runtime_error("dart id " + id + " out of range");
        Dart& dt = ds[static_cast<std::size_t>(k)];
        dt.twin = parse_int(after(tw, "twin="));
        const std::string e = after(ed, "edge=");
        const auto dash = e.find('-');
        if (dash == std::string::npos) throw std::runtime_error("bad edge '" + e + "'");
        dt.edge = Edge{parse_int(e.substr(0, dash)) - 1, parse_int(e.substr(dash + 1)) - 1};
        dt.seg = parse_int(after(sg, "seg="));
        defined[static_cast<std::size_t>(k)] = 1;
    }
    for (int k = 0; k < darts; ++k)
        if (!defined[static_cast<std::size_t>(k)]) throw std::runtime_error("dart " + std::to_string(k) + " has no H line");
    for (int v = 0; v < nv; ++v) {
        const auto& r = rot[static_cast<std::size_t>(v)];
        for (std::size_t j = 0; j < r.size(); ++j) {
            const int g = r[j];
            if (g < 0 || g >= darts) throw std::runtime_error("rotation of vertex " + std::to_string(v + 1) + " names unknown dart");
            Dart& dt = ds[static_cast<std::size_t>(g)];
            if (dt.origin >= 0) throw std::runtime_error("dart " + std::to_string(g) + " listed at two vertices");
            dt.origin = v;
            dt.next = r[(j + 1) % r.size()];
        }
    }
    return Drawing(n, x, std::move(ds));
}

}  // namespace

std::vector<ParsedRecord> read_records(std::istream& in) {
    std::vector<ParsedRecord> out;
    std::vector<std::string> cur;
    std::string line;
    int lineno = 0;
    int start = 0;
    auto flush = [&] {
        ParsedRecord r;
        r.index = static_cast<int>(out.size());
        r.first_line = start;
        try {
            r.drawing = parse_record(cur);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        out.push_back(std::move(r));
        cur.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (cur.empty() && (line.empty() || line[0] == '#')) continue;
        if (line == ".") {
            if (cur.empty()) continue;
            flush();
            continue;
        }
        if (cur.empty()) start = lineno;
        cur.push_back(line);
    }
    if (!cur.empty()) {
        flush();
        out.back().drawing.reset();
        out.back().error = "unterminated record";
    }
    return out;
}

std::vector<Drawing> read_drawings(std::istream& in) {
    std::vector<Drawing> out;
    for (auto& r : read_records(in)) {
        if (!r.drawing)
            throw std::runtime_error("record " + std::to_string(r.index) + " (line " + std::to_string(r.first_line) +
                                     "): " + r.error);
        out.push_back(std::move(*r.drawing));
    }
    return out;
}

std::vector<Drawing> read_drawings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_drawings(in);
}

void write_drawings_file(const std::string& path, const std::vector<Drawing>& ds) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& d : ds) write_drawing(out, d);
}

}  // namespace forge
