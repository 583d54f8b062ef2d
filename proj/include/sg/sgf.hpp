#pragma once
// Text serialization of labeled graphs:
//   schreier <n> <V> <root>      (root -1 when the graph has none)
//   <V integers>                 (one line per generator; -1 = missing image)
//   field 0110...                (optional per-vertex bit line)
// Lines starting with '#' are comments. The parser is the exact inverse of
// the writer.
#include <optional>
#include <string>
#include <vector>

#include "sg/graph.hpp"

namespace sg {

struct SgfData {
    PartialLabeledGraph partial;           // always populated
    std::optional<SchreierGraph> graph;    // set iff total, bijective, connected
    std::optional<std::vector<std::uint8_t>> field_bits;

    bool complete() const { return graph.has_value(); }
};

// Throws ParseError (with line/column) on malformed text, duplicate images,
// or an out-of-range root.
SgfData parse_sgf(const std::string& text);

std::string write_sgf(const SchreierGraph& g,
                      const std::vector<std::uint8_t>* field_bits = nullptr);
std::string write_sgf(const PartialLabeledGraph& g,
                      const std::vector<std::uint8_t>* field_bits = nullptr);

}  // namespace sg
