#pragma once

/**
 * @file polygon_io.hpp
 * @brief The polygon file format: UTF-8 text, `loop { ... }` sections with
 *        `corner (p, q)` and `fold (p, q) chart [[a,b],[c,d]] + (e, f)`
 *        lines in walk order, rationals as "p/q" or "p", `#` line comments.
 *        Parsing is exact; positions and charts round-trip bit-exactly.
 */

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/folded.hpp"
#include "toric/rational.hpp"

namespace toric {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + message),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

namespace detail {

class PolygonLexer {
public:
    explicit PolygonLexer(const std::string& text) : text_(text) {}

    struct Token {
        std::string value;  // empty at end of input
        int line = 1;
        int col = 1;
    };

    Token next() {
        skip_ws_and_comments();
        Token t{"", line_, col_};
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        if (std::strchr("(){}[],+", c)) {
            t.value = std::string(1, c);
            advance();
            return t;
        }
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               !std::strchr("(){}[],+#", text_[pos_])) {
            t.value += text_[pos_];
            advance();
        }
        if (t.value.empty())
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        return t;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

class PolygonParser {
public:
    explicit PolygonParser(const std::string& text) : lex_(text) { shift(); }

    FoldedPolygon parse() {
        FoldedPolygon poly;
        while (!tok_.value.empty()) {
            expect("loop");
            expect("{");
            std::vector<MarkedPoint> loop;
            while (tok_.value != "}") {
                if (tok_.value.empty()) fail("unexpected end of file inside loop");
                if (tok_.value == "corner") {
                    shift();
                    loop.push_back(corner_mark(parse_point()));
                } else if (tok_.value == "fold") {
                    shift();
                    RatVec2 pos = parse_point();
                    expect("chart");
                    IntMat2 a = parse_matrix();
                    expect("+");
                    RatVec2 b = parse_point();
                    loop.push_back(fold_mark(pos, AffineMapZ{a, b}));
                } else {
                    fail("expected 'corner', 'fold' or '}', got '" + tok_.value + "'");
                }
            }
            shift();  // '}'
            poly.loops.push_back(std::move(loop));
        }
        check_invariants(poly);
        return poly;
    }

private:
    PolygonLexer lex_;
    PolygonLexer::Token tok_;

    void shift() { tok_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(tok_.line, tok_.col, msg);
    }

    void expect(const std::string& v) {
        if (tok_.value != v) fail("expected '" + v + "', got '" + tok_.value + "'");
        shift();
    }

    Rational parse_rational() {
        try {
            Rational r = Rational::parse(tok_.value);
            shift();
            return r;
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    std::int64_t parse_integer() {
        Rational r = parse_rational();
        if (!r.is_integer()) throw ParseError(tok_.line, tok_.col, "expected an integer");
        return r.num();
    }

    RatVec2 parse_point() {
        expect("(");
        Rational x = parse_rational();
        expect(",");
        Rational y = parse_rational();
        expect(")");
        return {x, y};
    }

    IntMat2 parse_matrix() {
        expect("[");
        expect("[");
        IntMat2 m;
        m.m00 = parse_integer();
        expect(",");
        m.m01 = parse_integer();
        expect("]");
        expect(",");
        expect("[");
        m.m10 = parse_integer();
        expect(",");
        m.m11 = parse_integer();
        expect("]");
        expect("]");
        return m;
    }

    // Structural invariants of the type itself; the smoothness verdicts are
    // the validator's job.
    static void check_invariants(const FoldedPolygon& poly) {
        if (poly.loops.empty()) throw ParseError(1, 1, "file contains no loops");
        for (const auto& loop : poly.loops) {
            const std::size_t n = loop.size();
            if (n < 3) throw ParseError(1, 1, "loop has fewer than 3 marks");
            for (std::size_t i = 0; i < n; ++i)
                if (loop[i].pos == loop[(i + 1) % n].pos)
                    throw ParseError(1, 1, "repeated mark at " + str(loop[i].pos));
            for (std::size_t i = 0; i < n; ++i) {
                const auto& m = loop[i];
                if (m.kind != MarkKind::fold) continue;
                IntVec2 d_next = detail::walk_dir(loop, i, (i + 1) % n);
                IntVec2 d_prev = detail::walk_dir(loop, i, (i + n - 1) % n);
                if (!(d_next == -d_prev))
                    throw ParseError(1, 1, "fold on corner forbidden (at " + str(m.pos) + ")");
                if (!is_unimodular(m.chart.linear))
                    throw ParseError(1, 1, "fold chart not in GL(2,Z) (at " + str(m.pos) + ")");
            }
        }
    }
};

}  // namespace detail

inline FoldedPolygon parse_polygon(const std::string& text) {
    return detail::PolygonParser(text).parse();
}

inline FoldedPolygon load_polygon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_polygon(ss.str());
}

inline std::string serialize_polygon(const FoldedPolygon& poly) {
    std::string out;
    for (const auto& loop : poly.loops) {
        out += "loop {\n";
        for (const auto& m : loop) {
            if (m.kind == MarkKind::corner) {
                out += "  corner (" + m.pos.x.str() + ", " + m.pos.y.str() + ")\n";
            } else {
                const auto& a = m.chart.linear;
                out += "  fold (" + m.pos.x.str() + ", " + m.pos.y.str() + ") chart [[" +
                       std::to_string(a.m00) + ", " + std::to_string(a.m01) + "], [" +
                       std::to_string(a.m10) + ", " + std::to_string(a.m11) + "]] + (" +
                       m.chart.offset.x.str() + ", " + m.chart.offset.y.str() + ")\n";
            }
        }
        out += "}\n";
    }
    return out;
}

inline bool polygons_equal(const FoldedPolygon& a, const FoldedPolygon& b) {
    if (a.loops.size() != b.loops.size()) return false;
    for (std::size_t i = 0; i < a.loops.size(); ++i) {
        if (a.loops[i].size() != b.loops[i].size()) return false;
        for (std::size_t j = 0; j < a.loops[i].size(); ++j) {
            const auto& x = a.loops[i][j];
            const auto& y = b.loops[i][j];
            if (x.kind != y.kind || !(x.pos == y.pos)) return false;
            if (x.kind == MarkKind::fold && !(x.chart == y.chart)) return false;
        }
    }
    return true;
}

}  // namespace toric
