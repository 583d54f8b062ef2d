#include "sg/sgf.hpp"

#include <sstream>

namespace sg {

namespace {

struct Lines {
    std::vector<std::pair<int, std::string>> content;  // (line number, text)
};

Lines significant_lines(const std::string& text) {
    Lines ls;
    std::istringstream ss(text);
    std::string line;
    int num = 0;
    while (std::getline(ss, line)) {
        ++num;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        ls.content.emplace_back(num, line);
    }
    return ls;
}

std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::vector<long long> vals;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "'", lineno);
        }
    }
    return vals;
}

}  // namespace

SgfData parse_sgf(const std::string& text) {
    Lines ls = significant_lines(text);
    if (ls.content.empty()) throw ParseError("empty input");
    auto [hline, header] = ls.content[0];
    std::istringstream hs(header);
    std::string magic;
    long long n = 0, V = 0, root = 0;
    if (!(hs >> magic >> n >> V >> root) || magic != "schreier")
        throw ParseError("expected header 'schreier <n> <V> <root>'", hline);
    std::string rest;
    if (hs >> rest) throw ParseError("trailing content after header", hline);
    if (n < 1 || n > kMaxRank) throw ParseError("rank out of range", hline);
    if (V < 1) throw ParseError("vertex count out of range", hline);
    if (root < -1 || root >= V) throw ParseError("root out of range", hline);
    if (static_cast<long long>(ls.content.size()) < 1 + n)
        throw ParseError("expected " + std::to_string(n) + " permutation lines");

    std::vector<std::vector<int>> out(n, std::vector<int>(V, -1));
    std::vector<std::vector<char>> taken(n, std::vector<char>(V, 0));
    bool any_hole = false;
    for (int g = 0; g < n; ++g) {
        auto [lineno, line] = ls.content[1 + g];
        std::vector<long long> vals = parse_ints(line, lineno);
        if (static_cast<long long>(vals.size()) != V)
            throw ParseError("expected " + std::to_string(V) + " entries, got " +
                                 std::to_string(vals.size()),
                             lineno);
        for (long long v = 0; v < V; ++v) {
            long long w = vals[v];
            if (w == -1) {
                any_hole = true;
                continue;
            }
            if (w < 0 || w >= V)
                throw ParseError("image " + std::to_string(w) + " out of range", lineno,
                                 static_cast<int>(v) + 1);
            if (taken[g][w])
                throw ParseError("duplicate image " + std::to_string(w), lineno,
                                 static_cast<int>(v) + 1);
            taken[g][w] = 1;
            out[g][v] = static_cast<int>(w);
        }
    }

    SgfData data;
    std::optional<int> opt_root;
    if (root >= 0) opt_root = static_cast<int>(root);
    data.partial = PartialLabeledGraph(static_cast<int>(n), std::move(out), opt_root);
    if (!any_hole && root >= 0 && validate(data.partial).empty())
        data.graph = complete_graph(data.partial);
    // Total-but-disconnected or rootless tables stay partial results so
    // callers can report violations rather than fail to parse.

    std::size_t next = 1 + n;
    if (ls.content.size() > next) {
        auto [lineno, line] = ls.content[next];
        std::istringstream fs(line);
        std::string kw, bits;
        if (!(fs >> kw >> bits) || kw != "field")
            throw ParseError("expected optional 'field <bits>' line", lineno);
        if (static_cast<long long>(bits.size()) != V)
            throw ParseError("field length " + std::to_string(bits.size()) + " != vertex count",
                             lineno);
        std::vector<std::uint8_t> fb(V);
        for (long long i = 0; i < V; ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw ParseError("field bits must be 0/1", lineno, static_cast<int>(i) + 1);
            fb[i] = bits[i] - '0';
        }
        data.field_bits = std::move(fb);
        ++next;
    }
    if (ls.content.size() > next)
        throw ParseError("unexpected trailing line", ls.content[next].first);
    return data;
}

static std::string write_tables(int rank, int V, int root,
                                const std::vector<std::vector<int>>& out,
                                const std::vector<std::uint8_t>* field_bits) {
    std::string s =
        "schreier " + std::to_string(rank) + " " + std::to_string(V) + " " + std::to_string(root);
    s += "\n";
    for (int g = 0; g < rank; ++g) {
        for (int v = 0; v < V; ++v) {
            if (v) s += " ";
            s += std::to_string(out[g][v]);
        }
        s += "\n";
    }
    if (field_bits) {
        s += "field ";
        for (std::uint8_t b : *field_bits) s += (b ? '1' : '0');
        s += "\n";
    }
    return s;
}

std::string write_sgf(const SchreierGraph& g, const std::vector<std::uint8_t>* field_bits) {
    return write_tables(g.rank, g.vertex_count, g.root, g.perms, field_bits);
}

std::string write_sgf(const PartialLabeledGraph& g, const std::vector<std::uint8_t>* field_bits) {
    return write_tables(g.rank, g.vertex_count, g.root.value_or(-1), g.out, field_bits);
}

}  // namespace sg
