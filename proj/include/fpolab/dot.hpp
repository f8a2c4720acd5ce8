#pragma once

#include <sstream>
#include <string>

#include "fpolab/core.hpp"

namespace fpolab {

namespace detail {
inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}
}  // namespace detail

// Hasse diagram in DOT: edges point upward in time, inputs pinned to the
// bottom rank, outputs to the top, internal elements filled black, frame
// elements drawn red.
inline std::string to_dot(const Fpo& f, const std::string& name = "fpo") {
    std::ostringstream os;
    os << "digraph " << detail::dot_quote(name) << " {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=circle];\n";
    for (int e = 0; e < f.size(); ++e) {
        os << "  " << detail::dot_quote(f.id(e));
        if (f.is_internal(e))
            os << " [style=filled, fillcolor=black, fontcolor=white]";
        else
            os << " [color=red, fontcolor=red]";
        os << ";\n";
    }
    if (!f.inputs().empty()) {
        os << "  { rank=source;";
        for (const auto& id : f.inputs()) os << " " << detail::dot_quote(id) << ";";
        os << " }\n";
    }
    if (!f.outputs().empty()) {
        os << "  { rank=sink;";
        for (const auto& id : f.outputs()) os << " " << detail::dot_quote(id) << ";";
        os << " }\n";
    }
    for (const auto& [a, b] : hasse_reduction(f))
        os << "  " << detail::dot_quote(a) << " -> " << detail::dot_quote(b)
           << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace fpolab
