#pragma once

#include <psisel/core/error.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Plain-text formats. Lines starting with '#' are comments, blank lines are
// skipped and node indices are 0-based. Edge and hyperedge lists may carry a
// "# nodes N" comment that fixes the universe size (otherwise it is
// 1 + the largest index seen).
//
//   edge list       u<TAB>v<TAB>w         w rational: "2", "3/2" or "0.25"
//   hyperedge list  w<TAB>v1,v2,...
//   labels          node<TAB>label
//   ratings         user<TAB>item<TAB>stars   (MovieLens "u::i::r::t" also accepted)
//   points          x1,x2,...,xd

namespace psisel::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

template <typename Int>
Int parse_integer(std::string_view s, std::size_t line, const char* what) {
    s = trim(s);
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
    return v;
}

inline double parse_real(std::string_view s, std::size_t line) {
    std::string text(trim(s));
    if (text.empty())
        throw ParseError("empty number", line);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + text + "'", line);
    }
    if (used != text.size() || !std::isfinite(v))
        throw ParseError("invalid number '" + text + "'", line);
    return v;
}

inline Ratio parse_ratio(std::string_view s, std::size_t line) {
    try {
        return Ratio::parse(trim(s));
    } catch (const Error& e) {
        throw ParseError(e.what(), line);
    }
}

/// Calls `handle(std::string_view content, std::size_t line)` for every
/// non-comment, non-blank line; `directive(std::string_view)` for comments.
template <typename Handle, typename Directive>
void for_each_line(std::istream& in, Handle&& handle, Directive&& directive) {
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view content = trim(raw);
        if (content.empty())
            continue;
        if (content.front() == '#') {
            directive(trim(content.substr(1)), line);
            continue;
        }
        handle(content, line);
    }
}

inline std::optional<std::size_t> nodes_directive(std::string_view comment) {
    constexpr std::string_view key = "nodes";
    if (comment.substr(0, key.size()) != key)
        return std::nullopt;
    std::string_view rest = trim(comment.substr(key.size()));
    if (!rest.empty() && rest.front() == ':')
        rest = trim(rest.substr(1));
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
        return std::nullopt; // ordinary comment
    return n;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot open '" + path + "' for writing");
    return out;
}

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    return ::psisel::detail::checked_mul(a / std::gcd(a, b), b);
}

} // namespace detail

/// `weight` is empty when the text has no exact rational form within 64-bit
/// range (e.g. "1.5e-07"); `real` is always set.
struct RationalEdge {
    node_t u;
    node_t v;
    std::optional<Ratio> weight;
    double real;
};

/// Edge list as read, before choosing an integer or real weight model.
struct EdgeList {
    std::size_t node_count = 0;
    std::vector<RationalEdge> edges;

    /// Integer graph with all weights multiplied by the least common
    /// denominator; repeated pairs are summed.
    WeightedGraph to_integer_graph(std::int64_t* scale_out = nullptr) const {
        std::int64_t scale = 1;
        for (const auto& e : edges) {
            if (!e.weight)
                throw InvalidInput("edge weight " + std::to_string(e.real) +
                                   " has no exact rational form; write it as p/q or a short decimal");
            scale = detail::lcm_checked(scale, e.weight->den());
        }
        GraphBuilder<std::int64_t> builder(node_count);
        for (const auto& e : edges) {
            Ratio scaled = *e.weight * Ratio(scale);
            builder.add_edge(e.u, e.v, scaled.num());
        }
        if (scale_out)
            *scale_out = scale;
        return builder.build();
    }

    RealGraph to_real_graph() const {
        GraphBuilder<double> builder(node_count);
        for (const auto& e : edges)
            builder.add_edge(e.u, e.v, e.real);
        return builder.build();
    }
};

inline EdgeList read_edge_list(std::istream& in) {
    EdgeList list;
    std::optional<std::size_t> declared;
    std::size_t seen = 0;
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            auto fields = detail::split(content, "\t");
            if (fields.size() == 2)
                fields.push_back("1");
            if (fields.size() != 3)
                throw ParseError("expected u<TAB>v<TAB>w", line);
            RationalEdge e{detail::parse_integer<node_t>(fields[0], line, "node"),
                           detail::parse_integer<node_t>(fields[1], line, "node"), std::nullopt, 0.0};
            const std::string_view w = detail::trim(fields[2]);
            try {
                e.weight = Ratio::parse(w);
            } catch (const Error&) {
                if (w.find('/') != std::string_view::npos)
                    throw ParseError("invalid weight '" + std::string(w) + "'", line);
            }
            e.real = e.weight && w.find('/') != std::string_view::npos ? e.weight->to_double()
                                                                       : detail::parse_real(w, line);
            if ((e.weight && (e.weight->is_infinite() || *e.weight < Ratio(0))) || e.real < 0.0)
                throw ParseError("edge weight must be finite and non-negative", line);
            if (e.u == e.v)
                throw ParseError("self-loop at node " + std::to_string(e.u), line);
            seen = std::max({seen, e.u + 1, e.v + 1});
            list.edges.push_back(e);
        },
        [&](std::string_view comment, std::size_t) {
            if (auto n = detail::nodes_directive(comment))
                declared = n;
        });
    if (declared && *declared < seen)
        throw ParseError("declared node count " + std::to_string(*declared) + " is smaller than indices used", 1);
    list.node_count = declared.value_or(seen);
    return list;
}

inline EdgeList read_edge_list(const std::string& path) {
    auto in = detail::open_in(path);
    return read_edge_list(in);
}

template <typename W>
void write_edge_list(std::ostream& out, const BasicGraph<W>& g) {
    out << "# nodes " << g.node_count() << '\n';
    if constexpr (std::is_floating_point_v<W>)
        out << std::setprecision(17);
    for (const auto& e : g.edges())
        out << e.u << '\t' << e.v << '\t' << e.weight << '\n';
}

template <typename W>
void write_edge_list(const std::string& path, const BasicGraph<W>& g) {
    auto out = detail::open_out(path);
    write_edge_list(out, g);
}

/// Weights are multiplied by their least common denominator, reported
/// through `scale_out`.
inline Hypergraph read_hyperedge_list(std::istream& in, std::int64_t* scale_out = nullptr) {
    struct Raw {
        Ratio weight;
        std::vector<node_t> members;
    };
    std::vector<Raw> raw;
    std::optional<std::size_t> declared;
    std::size_t seen = 0;
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            auto fields = detail::split(content, "\t");
            if (fields.size() != 2)
                throw ParseError("expected w<TAB>v1,v2,...", line);
            Raw r{detail::parse_ratio(fields[0], line), {}};
            if (r.weight.is_infinite() || r.weight < Ratio(0))
                throw ParseError("hyperedge weight must be finite and non-negative", line);
            for (auto member : detail::split(detail::trim(fields[1]), ",")) {
                node_t v = detail::parse_integer<node_t>(member, line, "node");
                seen = std::max(seen, v + 1);
                r.members.push_back(v);
            }
            raw.push_back(std::move(r));
        },
        [&](std::string_view comment, std::size_t) {
            if (auto n = detail::nodes_directive(comment))
                declared = n;
        });
    if (declared && *declared < seen)
        throw ParseError("declared node count is smaller than indices used", 1);
    std::int64_t scale = 1;
    for (const auto& r : raw)
        scale = detail::lcm_checked(scale, r.weight.den());
    std::vector<Hyperedge> edges;
    edges.reserve(raw.size());
    for (auto& r : raw)
        edges.push_back({(r.weight * Ratio(scale)).num(), std::move(r.members)});
    if (scale_out)
        *scale_out = scale;
    return Hypergraph(declared.value_or(seen), std::move(edges));
}

inline Hypergraph read_hyperedge_list(const std::string& path, std::int64_t* scale_out = nullptr) {
    auto in = detail::open_in(path);
    return read_hyperedge_list(in, scale_out);
}

inline void write_hyperedge_list(std::ostream& out, const Hypergraph& h) {
    out << "# nodes " << h.node_count() << '\n';
    for (const auto& e : h.edges()) {
        out << e.weight << '\t';
        for (std::size_t i = 0; i < e.members.size(); ++i)
            out << (i ? "," : "") << e.members[i];
        out << '\n';
    }
}

inline void write_hyperedge_list(const std::string& path, const Hypergraph& h) {
    auto out = detail::open_out(path);
    write_hyperedge_list(out, h);
}

/// node<TAB>label pairs with arbitrary integer labels (class ids).
inline std::vector<std::pair<node_t, std::int64_t>> read_class_labels(std::istream& in) {
    std::vector<std::pair<node_t, std::int64_t>> out;
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            auto fields = detail::split(content, "\t");
            if (fields.size() != 2)
                throw ParseError("expected node<TAB>label", line);
            out.emplace_back(detail::parse_integer<node_t>(fields[0], line, "node"),
                             detail::parse_integer<std::int64_t>(fields[1], line, "label"));
        },
        [](std::string_view, std::size_t) {});
    return out;
}

/// Binary labels over a universe of n nodes. With `positive_class`, any class
/// id is accepted and mapped to 1 iff it equals that class (one-vs-rest).
inline Labeling read_labels(std::istream& in, std::size_t n,
                            std::optional<std::int64_t> positive_class = std::nullopt) {
    Labeling y(n);
    for (auto [node, label] : read_class_labels(in)) {
        if (node >= n)
            throw UniverseMismatch("label for node " + std::to_string(node) + " outside universe of size " +
                                   std::to_string(n));
        if (positive_class)
            label = label == *positive_class ? 1 : 0;
        else if (label != 0 && label != 1)
            throw InvalidInput("label of node " + std::to_string(node) + " must be 0 or 1");
        y.set(node, static_cast<int>(label));
    }
    return y;
}

inline Labeling read_labels(const std::string& path, std::size_t n,
                            std::optional<std::int64_t> positive_class = std::nullopt) {
    auto in = detail::open_in(path);
    return read_labels(in, n, positive_class);
}

inline void write_labels(std::ostream& out, const Labeling& y) {
    for (node_t v = 0; v < y.universe(); ++v)
        if (y.defined(v))
            out << v << '\t' << y[v] << '\n';
}

inline void write_labels(const std::string& path, const Labeling& y) {
    auto out = detail::open_out(path);
    write_labels(out, y);
}

/// One node index per line; a labels file is accepted too (first column).
inline NodeSet read_node_set(std::istream& in, std::size_t n) {
    NodeSet s(n);
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            auto fields = detail::split(content, "\t");
            node_t v = detail::parse_integer<node_t>(fields[0], line, "node");
            if (v >= n)
                throw UniverseMismatch("node " + std::to_string(v) + " outside universe of size " +
                                       std::to_string(n));
            s.insert(v);
        },
        [](std::string_view, std::size_t) {});
    return s;
}

struct Rating {
    std::int64_t user;
    std::int64_t item;
    Ratio stars;
};

inline std::vector<Rating> read_ratings(std::istream& in) {
    std::vector<Rating> out;
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            auto fields = content.find("::") != std::string_view::npos ? detail::split(content, "::")
                                                                       : detail::split(content, "\t");
            if (fields.size() != 3 && fields.size() != 4)
                throw ParseError("expected user<TAB>item<TAB>stars", line);
            Rating r{detail::parse_integer<std::int64_t>(fields[0], line, "user"),
                     detail::parse_integer<std::int64_t>(fields[1], line, "item"),
                     detail::parse_ratio(fields[2], line)};
            if (r.stars.is_infinite() || r.stars < Ratio(1) || r.stars > Ratio(5))
                throw ParseError("stars must lie in [1, 5]", line);
            out.push_back(r);
        },
        [](std::string_view, std::size_t) {});
    return out;
}

inline std::vector<Rating> read_ratings(const std::string& path) {
    auto in = detail::open_in(path);
    return read_ratings(in);
}

inline std::vector<std::vector<double>> read_points(std::istream& in) {
    std::vector<std::vector<double>> out;
    detail::for_each_line(
        in,
        [&](std::string_view content, std::size_t line) {
            std::vector<double> p;
            for (auto field : detail::split(content, ","))
                p.push_back(detail::parse_real(field, line));
            if (!out.empty() && p.size() != out.front().size())
                throw ParseError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                     std::to_string(out.front().size()),
                                 line);
            out.push_back(std::move(p));
        },
        [](std::string_view, std::size_t) {});
    return out;
}

inline std::vector<std::vector<double>> read_points(const std::string& path) {
    auto in = detail::open_in(path);
    return read_points(in);
}

inline void write_points(std::ostream& out, const std::vector<std::vector<double>>& points) {
    out << std::setprecision(17);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i)
            out << (i ? "," : "") << p[i];
        out << '\n';
    }
}

} // namespace psisel::io
