#include "dsai/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dsai/errors.hpp"

namespace dsai {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next meaningful line, with '#' comments and blanks stripped.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            out = raw;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("line " + std::to_string(line_no) + ": " + msg);
    }
};

int to_internal(const LineReader& r, long id, int n) {
    if (id < 1 || id > n)
        r.fail("vertex id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    return static_cast<int>(id - 1);
}

struct ParsedFile {
    int n = 0, m = 0, r = 0, p = 0;
    Graph graph;
    std::vector<Vertex> x_set;
    std::vector<std::pair<int, Vertex>> colours;
};

ParsedFile parse_dsai(std::istream& in) {
    LineReader reader{in};
    ParsedFile f;
    std::string line;
    if (!reader.next(line)) reader.fail("missing 'p dsai' header");
    {
        std::istringstream ss(line);
        std::string p, fmt;
        if (!(ss >> p >> fmt >> f.n >> f.m >> f.r >> f.p) || p != "p" || fmt != "dsai")
            reader.fail("expected 'p dsai <n> <m> <r> <p>', got '" + line + "'");
        if (f.n < 0 || f.m < 0) reader.fail("negative vertex or edge count");
        if (f.n > 10'000'000 || f.m > 100'000'000)
            reader.fail("instance header exceeds supported size");
    }
    f.graph = Graph(f.n);
    int edges_seen = 0;
    while (reader.next(line)) {
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "e") {
            long u, v;
            if (!(ss >> u >> v)) reader.fail("malformed edge line '" + line + "'");
            int ui = to_internal(reader, u, f.n), vi = to_internal(reader, v, f.n);
            if (ui == vi) reader.fail("self-loop at vertex " + std::to_string(u));
            if (f.graph.has_edge(ui, vi)) reader.fail("duplicate edge " + line);
            f.graph.add_edge(ui, vi);
            ++edges_seen;
        } else if (kind == "x") {
            long v;
            if (!(ss >> v)) reader.fail("malformed x line '" + line + "'");
            f.x_set.push_back(to_internal(reader, v, f.n));
        } else if (kind == "col") {
            long i, v;
            if (!(ss >> i >> v)) reader.fail("malformed col line '" + line + "'");
            if (i < 1) reader.fail("colour block index must be >= 1");
            f.colours.emplace_back(static_cast<int>(i), to_internal(reader, v, f.n));
        } else {
            reader.fail("unknown line kind '" + kind + "'");
        }
    }
    if (edges_seen != f.m)
        throw InputError("header declares " + std::to_string(f.m) + " edges but file has " +
                         std::to_string(edges_seen));
    std::sort(f.x_set.begin(), f.x_set.end());
    if (std::adjacent_find(f.x_set.begin(), f.x_set.end()) != f.x_set.end())
        throw InputError("duplicate vertex in x-set");
    return f;
}

} // namespace

Instance read_instance(std::istream& in) {
    ParsedFile f = parse_dsai(in);
    return Instance{std::move(f.graph), std::move(f.x_set), f.r, f.p};
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << "p dsai " << inst.graph.vertex_count() << ' ' << inst.graph.edge_count() << ' '
        << inst.radius << ' ' << inst.budget << '\n';
    for (auto [u, v] : inst.graph.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    auto x = inst.x_set;
    std::sort(x.begin(), x.end());
    for (Vertex v : x) out << "x " << v + 1 << '\n';
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    write_instance(out, inst);
}

ColourfulInstance read_colourful(std::istream& in) {
    ParsedFile f = parse_dsai(in);
    int k = 0;
    for (auto [i, v] : f.colours) k = std::max(k, i);
    ColourfulInstance c;
    c.graph = std::move(f.graph);
    c.blocks.assign(k + 1, {});
    std::vector<int> block_of(f.n, 0);
    for (auto [i, v] : f.colours) {
        if (block_of[v] != 0)
            throw InputError("vertex " + std::to_string(v + 1) + " assigned to two blocks");
        block_of[v] = i;
    }
    for (Vertex v = 0; v < f.n; ++v) c.blocks[block_of[v]].push_back(v);
    return c;
}

ColourfulInstance read_colourful_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_colourful(in);
}

void write_colourful(std::ostream& out, const ColourfulInstance& inst) {
    out << "p dsai " << inst.graph.vertex_count() << ' ' << inst.graph.edge_count()
        << " 0 0\n";
    for (auto [u, v] : inst.graph.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    for (int i = 1; i < static_cast<int>(inst.blocks.size()); ++i)
        for (Vertex v : inst.blocks[i]) out << "col " << i << ' ' << v + 1 << '\n';
}

void write_colourful_file(const std::string& path, const ColourfulInstance& inst) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    write_colourful(out, inst);
}

CnfFormula read_dimacs_cnf(std::istream& in) {
    CnfFormula f;
    std::string line;
    int line_no = 0, declared_clauses = -1;
    std::vector<int> current;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ss(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ss >> p >> fmt >> f.variable_count >> declared_clauses) || fmt != "cnf")
                throw InputError("line " + std::to_string(line_no) + ": bad DIMACS header");
            header_seen = true;
            continue;
        }
        if (!header_seen)
            throw InputError("line " + std::to_string(line_no) + ": literals before 'p cnf'");
        int lit;
        while (ss >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.variable_count)
                    throw InputError("line " + std::to_string(line_no) + ": literal " +
                                     std::to_string(lit) + " exceeds variable count");
                current.push_back(lit);
            }
        }
    }
    if (!header_seen) throw InputError("missing 'p cnf' header");
    if (!current.empty()) f.clauses.push_back(current); // tolerate missing final 0
    if (declared_clauses >= 0 && declared_clauses != static_cast<int>(f.clauses.size()))
        throw InputError("header declares " + std::to_string(declared_clauses) +
                         " clauses but file has " + std::to_string(f.clauses.size()));
    return f;
}

CnfFormula read_dimacs_cnf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_dimacs_cnf(in);
}

void write_dimacs_cnf(std::ostream& out, const CnfFormula& f) {
    out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

} // namespace dsai
