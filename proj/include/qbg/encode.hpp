#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qbg/affine.hpp"
#include "qbg/qbg.hpp"
#include "qbg/version.hpp"

namespace qbg {

// Textual and JSON encodings for elements, root systems, and graphs. All
// encodings use 1-based simple-reflection indices (s_1 .. s_n as written);
// the empty word [] is the identity. Reduced words are normalized to the
// lexicographically least one so that output is deterministic.

// Lexicographically least reduced word (0-based indices): repeatedly strip
// the smallest left descent.
inline std::vector<int> lex_word(const WeylGroup& W, WeylElement w) {
    std::vector<int> out;
    while (W.length(w) > 0) {
        for (int i = 0; i < W.rank(); ++i) {
            if (W.left_descent(w, i)) {
                out.push_back(i);
                w = W.mul(W.simple(i), w);
                break;
            }
        }
    }
    return out;
}

// "[1,2]" with 1-based indices; "[]" for the identity.
inline std::string format_word(const std::vector<int>& word0) {
    std::string s = "[";
    for (size_t k = 0; k < word0.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(word0[k] + 1);
    }
    return s + "]";
}

// Compact one-line form: w=[1,2] t=[-4,-4].
inline std::string format_element(const AffineWeyl& aff, const AffineElement& x) {
    return "w=" + format_word(lex_word(aff.classical(), x.w)) +
           " t=" + vec_to_string(x.t.c);
}

namespace detail {

inline void skip_spaces(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
}

// Parses "[a,b,...]" starting at pos; empty brackets give an empty vector.
inline IntVec parse_bracket_list(const std::string& s, size_t& pos) {
    skip_spaces(s, pos);
    check_input(pos < s.size() && s[pos] == '[', "expected '[' in element text");
    ++pos;
    IntVec out;
    skip_spaces(s, pos);
    if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return out;
    }
    while (true) {
        skip_spaces(s, pos);
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        check_input(pos > start && std::isdigit((unsigned char)s[pos - 1]),
                    "expected an integer in element text");
        out.push_back(std::stoi(s.substr(start, pos - start)));
        skip_spaces(s, pos);
        check_input(pos < s.size() && (s[pos] == ',' || s[pos] == ']'),
                    "expected ',' or ']' in element text");
        if (s[pos] == ']') {
            ++pos;
            return out;
        }
        ++pos;
    }
}

// Converts a 1-based word to 0-based, validating the index range.
inline std::vector<int> word_from_one_based(const IntVec& word1, int rank) {
    std::vector<int> word0;
    word0.reserve(word1.size());
    for (int i : word1) {
        check_input(i >= 1 && i <= rank,
                    "simple reflection index " + std::to_string(i) +
                        " out of range 1.." + std::to_string(rank));
        word0.push_back(i - 1);
    }
    return word0;
}

} // namespace detail

// Parses a standalone bracketed list like "[-12,-8]".
inline IntVec parse_int_list(const std::string& text) {
    size_t pos = 0;
    IntVec out = detail::parse_bracket_list(text, pos);
    detail::skip_spaces(text, pos);
    check_input(pos == text.size(), "trailing characters after the list");
    return out;
}

// Parses "w=[1,2] t=[-4,-4]", optionally preceded by a type label that must
// then match the root system (e.g. "A2 w=[1,2] t=[-4,-4]").
inline AffineElement parse_element(const AffineWeyl& aff, const std::string& text) {
    size_t pos = 0;
    detail::skip_spaces(text, pos);
    size_t wpos = text.find("w=", pos);
    check_input(wpos != std::string::npos, "element text needs w=[...]");
    if (wpos > pos) {
        std::string head = text.substr(pos, wpos - pos);
        while (!head.empty() && std::isspace((unsigned char)head.back())) head.pop_back();
        std::string upper = head;
        for (char& c : upper) c = (char)std::toupper((unsigned char)c);
        check_input(upper == aff.root_system().label(),
                    "type label '" + head + "' does not match " +
                        aff.root_system().label());
    }
    pos = wpos + 2;
    IntVec word1 = detail::parse_bracket_list(text, pos);
    size_t tpos = text.find("t=", pos);
    check_input(tpos != std::string::npos, "element text needs t=[...]");
    pos = tpos + 2;
    IntVec t = detail::parse_bracket_list(text, pos);
    detail::skip_spaces(text, pos);
    check_input(pos == text.size(), "trailing characters in element text");
    check_input((int)t.size() == aff.rank(),
                "translation part needs " + std::to_string(aff.rank()) +
                    " coordinates");
    const WeylGroup& W = aff.classical();
    WeylElement w = W.from_word(detail::word_from_one_based(word1, W.rank()));
    return aff.make(w, CorootVector{t});
}

// {"type": "A2", "w": [1,2], "t": [-4,-4], "convention": "untwisted"}
inline nlohmann::json element_to_json(const AffineWeyl& aff, const AffineElement& x) {
    std::vector<int> w1;
    for (int i : lex_word(aff.classical(), x.w)) w1.push_back(i + 1);
    return nlohmann::json{{"type", aff.root_system().label()},
                          {"w", w1},
                          {"t", x.t.c},
                          {"convention", convention_name(aff.convention())}};
}

inline AffineElement element_from_json(const AffineWeyl& aff, const nlohmann::json& j) {
    check_input(j.is_object(), "element JSON must be an object");
    check_input(j.contains("w") && j.contains("t"), "element JSON needs w and t");
    if (j.contains("type"))
        check_input(j["type"] == aff.root_system().label(),
                    "element type does not match the root system");
    if (j.contains("convention"))
        check_input(j["convention"] == std::string(convention_name(aff.convention())),
                    "element convention does not match the group");
    IntVec word1;
    IntVec t;
    try {
        word1 = j["w"].get<IntVec>();
        t = j["t"].get<IntVec>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("malformed element JSON: ") + e.what());
    }
    check_input((int)t.size() == aff.rank(),
                "translation part needs " + std::to_string(aff.rank()) +
                    " coordinates");
    const WeylGroup& W = aff.classical();
    WeylElement w = W.from_word(detail::word_from_one_based(word1, W.rank()));
    return aff.make(w, CorootVector{t});
}

// {"cartan": [[2,-1],[-1,2]], "label": "A2"}; label defaults to "custom".
inline RootSystem root_system_from_json(const nlohmann::json& j) {
    check_input(j.is_object() && j.contains("cartan"),
                "root system JSON needs a cartan matrix");
    std::vector<IntVec> rows;
    std::string label;
    try {
        rows = j["cartan"].get<std::vector<IntVec>>();
        label = j.value("label", std::string("custom"));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("malformed root system JSON: ") + e.what());
    }
    return RootSystem::from_cartan(IntMat::from_rows(rows), label);
}

inline RootSystem root_system_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open root system file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInputError(std::string("cannot parse ") + path + ": " + e.what());
    }
    return root_system_from_json(j);
}

// Vertices in the deterministic output order: by length, then by
// lexicographic reduced word.
inline std::vector<WeylElement> sorted_vertices(const WeylGroup& W) {
    std::vector<std::pair<std::vector<int>, WeylElement>> keyed;
    keyed.reserve((size_t)W.size());
    for (int i = 0; i < W.size(); ++i) {
        WeylElement w = W.element(i);
        keyed.emplace_back(lex_word(W, w), w);
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.size() != b.first.size())
                      return a.first.size() < b.first.size();
                  return a.first < b.first;
              });
    std::vector<WeylElement> out;
    out.reserve(keyed.size());
    for (const auto& kv : keyed) out.push_back(kv.second);
    return out;
}

namespace detail {

// Edges sorted by (source position, target position) in the vertex order.
inline std::vector<QBGEdge> sorted_edges(const QBGraph& g,
                                         const std::vector<WeylElement>& order) {
    std::vector<int> rank((size_t)g.group().size(), 0);
    for (size_t k = 0; k < order.size(); ++k) rank[(size_t)order[k].idx] = (int)k;
    std::vector<QBGEdge> es = g.edges();
    std::stable_sort(es.begin(), es.end(),
                     [&rank](const QBGEdge& a, const QBGEdge& b) {
                         if (rank[(size_t)a.source.idx] != rank[(size_t)b.source.idx])
                             return rank[(size_t)a.source.idx] < rank[(size_t)b.source.idx];
                         return rank[(size_t)a.target.idx] < rank[(size_t)b.target.idx];
                     });
    return es;
}

} // namespace detail

// GraphViz DOT text. Bruhat edges are plain, quantum edges are dashed and
// carry kind and weight attributes; node names are lexicographic reduced
// words.
inline std::string export_qbg_dot(const QBGraph& g) {
    const WeylGroup& W = g.group();
    std::vector<WeylElement> order = sorted_vertices(W);
    std::vector<std::string> name((size_t)W.size());
    for (WeylElement v : order) name[(size_t)v.idx] = format_word(lex_word(W, v));
    std::ostringstream out;
    out << "digraph qbg {\n";
    out << "  label=\"" << g.root_system().label() << " quantum Bruhat graph ("
        << convention_name(g.convention()) << ")\";\n";
    for (WeylElement v : order) out << "  \"" << name[(size_t)v.idx] << "\";\n";
    for (const QBGEdge& e : detail::sorted_edges(g, order)) {
        out << "  \"" << name[(size_t)e.source.idx] << "\" -> \""
            << name[(size_t)e.target.idx] << "\"";
        if (e.kind == EdgeKind::Quantum)
            out << " [kind=\"quantum\", weight=\"" << vec_to_string(e.weight)
                << "\", style=dashed]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

// Full graph as JSON: vertices in output order, edges with their labels and
// weights, and the reflection ordering used by path normalization.
inline nlohmann::json export_qbg_json(const QBGraph& g) {
    const WeylGroup& W = g.group();
    const RootSystem& rs = g.root_system();
    std::vector<WeylElement> order = sorted_vertices(W);
    nlohmann::json verts = nlohmann::json::array();
    for (WeylElement v : order) {
        std::vector<int> w1;
        for (int i : lex_word(W, v)) w1.push_back(i + 1);
        verts.push_back({{"w", w1}, {"length", W.length(v)}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const QBGEdge& e : detail::sorted_edges(g, order)) {
        std::vector<int> s1;
        for (int i : lex_word(W, e.source)) s1.push_back(i + 1);
        std::vector<int> t1;
        for (int i : lex_word(W, e.target)) t1.push_back(i + 1);
        edges.push_back({{"source", s1},
                         {"target", t1},
                         {"kind", edge_kind_name(e.kind)},
                         {"root", rs.positive_root(e.root_p).c},
                         {"weight", e.weight}});
    }
    nlohmann::json ordering = nlohmann::json::array();
    ReflectionOrdering ord = ReflectionOrdering::standard(W);
    for (int p : ord.roots_in_order()) ordering.push_back(rs.positive_root(p).c);
    return nlohmann::json{{"version", kToolVersion},
                          {"type", rs.label()},
                          {"convention", convention_name(g.convention())},
                          {"vertices", verts},
                          {"edges", edges},
                          {"ordering", ordering}};
}

} // namespace qbg
