#include <rlab/io.hpp>
#include <rlab/error.hpp>

#include <fstream>
#include <sstream>

using std::string;
using std::vector;

namespace rlab
{
    namespace
    {
        auto split_lines(const string & text) -> vector<string>
        {
            vector<string> lines;
            std::istringstream in(text);
            string line;
            while (std::getline(in, line)) {
                require(line.empty() || line.back() != '\r', ErrorKind::ParseError, "CR line endings are not accepted");
                lines.push_back(line);
            }
            return lines;
        }

        auto parse_int(const string & token) -> long
        {
            size_t used = 0;
            long value = 0;
            try {
                value = std::stol(token, &used);
            }
            catch (const std::exception &) {
                fail(ErrorKind::ParseError, "not an integer: '" + token + "'");
            }
            require(used == token.size(), ErrorKind::ParseError, "not an integer: '" + token + "'");
            return value;
        }
    }

    auto write_dgraph(const Digraph & g, const Layering * layering) -> string
    {
        std::ostringstream out;
        out << "DGRAPH 1\n";
        out << "n " << g.n() << "\n";
        if (layering)
            for (int v = 0; v < g.n(); ++v)
                out << "layer " << v << " " << layering->layer_of[v] << "\n";
        for (auto [u, v] : g.edges())
            out << "e " << u << " " << v << "\n";
        return out.str();
    }

    auto read_dgraph(const string & text) -> DigraphFile
    {
        auto lines = split_lines(text);
        require(! lines.empty() && lines[0] == "DGRAPH 1", ErrorKind::ParseError, "missing DGRAPH 1 header");
        int n = -1;
        vector<std::pair<int, int>> edges;
        vector<int> layer_of;
        bool has_layers = false;
        for (size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty())
                continue;
            std::istringstream in(lines[i]);
            string tag, a, b, extra;
            in >> tag >> a;
            if (tag == "n") {
                require(n < 0, ErrorKind::ParseError, "duplicate n line");
                n = int(parse_int(a));
                require(n >= 0, ErrorKind::ParseError, "negative n");
                layer_of.assign(n, 0);
                continue;
            }
            require(n >= 0, ErrorKind::ParseError, "n line must come first");
            in >> b;
            require(! (in >> extra), ErrorKind::ParseError, "trailing tokens on line " + std::to_string(i + 1));
            int x = int(parse_int(a)), y = int(parse_int(b));
            if (tag == "layer") {
                require(edges.empty(), ErrorKind::ParseError, "layer lines must precede edge lines");
                require(x >= 0 && x < n && y >= 1, ErrorKind::ParseError, "bad layer line");
                layer_of[x] = y;
                has_layers = true;
            }
            else if (tag == "e")
                edges.emplace_back(x, y);
            else
                fail(ErrorKind::ParseError, "unknown line tag '" + tag + "'");
        }
        require(n >= 0, ErrorKind::ParseError, "missing n line");
        DigraphFile file{Digraph(n, std::move(edges)), std::nullopt};
        if (has_layers) {
            Layering layering;
            layering.layer_of = layer_of;
            for (int l : layer_of) {
                require(l >= 1, ErrorKind::ParseError, "vertex without a layer line");
                layering.H = std::max(layering.H, l);
            }
            layering.w = std::max(1, max_edge_span(file.graph, layer_of));
            require(layering_valid(file.graph, layering), ErrorKind::LayeringMismatch, "layer lines do not fit the edges");
            file.layering = layering;
        }
        return file;
    }

    auto tournament_hex(const Tournament & t) -> string
    {
        static const char * digits = "0123456789abcdef";
        string hex;
        int nibble = 0, filled = 0;
        for (int i = 0; i < t.n(); ++i)
            for (int j = i + 1; j < t.n(); ++j) {
                nibble = (nibble << 1) | (t.has_edge(i, j) ? 1 : 0);
                if (++filled == 4) {
                    hex += digits[nibble];
                    nibble = filled = 0;
                }
            }
        if (filled)
            hex += digits[nibble << (4 - filled)];
        return hex;
    }

    auto tournament_from_hex(int n, const string & hex) -> Tournament
    {
        require(n >= 0, ErrorKind::ParseError, "negative tournament size");
        long pairs = long(n) * (n - 1) / 2;
        require(long(hex.size()) == (pairs + 3) / 4, ErrorKind::ParseError, "hex length does not match n");
        Tournament t(n);
        long bit = 0;
        auto nibble_at = [&](long idx) {
            char c = hex[idx];
            if (c >= '0' && c <= '9')
                return c - '0';
            if (c >= 'a' && c <= 'f')
                return c - 'a' + 10;
            fail(ErrorKind::ParseError, string("bad hex digit '") + c + "'");
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit) {
                bool forward = (nibble_at(bit / 4) >> (3 - bit % 4)) & 1;
                if (! forward)
                    t.orient(j, i);
            }
        if (pairs % 4)
            require((nibble_at(long(hex.size()) - 1) & ((1 << (4 - pairs % 4)) - 1)) == 0, ErrorKind::ParseError,
                    "padding bits must be zero");
        require(t.is_complete(), ErrorKind::ParseError, "decoded tournament is not complete");
        return t;
    }

    auto write_tourn(const Tournament & t) -> string
    {
        return "TOURN 1\n" + std::to_string(t.n()) + "\n" + tournament_hex(t) + "\n";
    }

    auto read_tourn(const string & text) -> Tournament
    {
        auto lines = split_lines(text);
        require(lines.size() >= 2 && lines[0] == "TOURN 1", ErrorKind::ParseError, "missing TOURN 1 header");
        int n = int(parse_int(lines[1]));
        return tournament_from_hex(n, lines.size() >= 3 ? lines[2] : string());
    }

    auto tournament_dot(const Tournament & t) -> string
    {
        std::ostringstream out;
        out << "digraph T {\n";
        for (int u = 0; u < t.n(); ++u)
            t.out(u).for_each([&](int v) { out << "  " << u << " -> " << v << ";\n"; });
        out << "}\n";
        return out.str();
    }

    auto digraph_dot(const Digraph & g, const Layering * layering) -> string
    {
        std::ostringstream out;
        out << "digraph G {\n  rankdir=LR;\n";
        if (layering)
            for (const auto & layer : layering->layers()) {
                if (layer.empty())
                    continue;
                out << "  { rank=same;";
                for (int v : layer)
                    out << " " << v << ";";
                out << " }\n";
            }
        for (auto [u, v] : g.edges())
            out << "  " << u << " -> " << v << ";\n";
        out << "}\n";
        return out.str();
    }

    auto read_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        require(bool(in), ErrorKind::IoError, "cannot open " + path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_file(const string & path, const string & contents) -> void
    {
        std::ofstream out(path, std::ios::binary);
        require(bool(out), ErrorKind::IoError, "cannot write " + path);
        out << contents;
        require(bool(out), ErrorKind::IoError, "write failed for " + path);
    }
}
