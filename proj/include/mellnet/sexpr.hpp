#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mellnet {

struct ParseError : std::runtime_error {
    size_t line;
    size_t col;
    ParseError(const std::string& msg, size_t line_, size_t col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), col(col_) {}
};

// Minimal s-expression: an atom or a list.  Atoms are bare tokens; there is
// no string/number syntax, callers interpret token text themselves.
struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> items;

    static Sexp sym(std::string s) {
        Sexp e;
        e.is_atom = true;
        e.atom = std::move(s);
        return e;
    }
    static Sexp list(std::vector<Sexp> xs = {}) {
        Sexp e;
        e.items = std::move(xs);
        return e;
    }

    size_t size() const { return items.size(); }
    const Sexp& at(size_t i) const {
        if (is_atom || i >= items.size())
            throw std::runtime_error("sexp index out of range");
        return items[i];
    }
    bool is_sym(const char* s) const { return is_atom && atom == s; }
    // head symbol of a list, or "" when not applicable
    std::string head() const {
        if (is_atom || items.empty() || !items[0].is_atom) return "";
        return items[0].atom;
    }
};

namespace detail {

struct Lexer {
    const std::string& text;
    size_t pos = 0, line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void advance() {
        if (text[pos] == '\n') { line++; col = 1; } else { col++; }
        pos++;
    }
    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    Sexp next() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", line, col);
        char c = text[pos];
        if (c == '(') {
            advance();
            Sexp e = Sexp::list();
            for (;;) {
                skip_ws();
                if (pos >= text.size()) throw ParseError("unclosed '('", line, col);
                if (text[pos] == ')') { advance(); break; }
                e.items.push_back(next());
            }
            return e;
        }
        if (c == ')') throw ParseError("unexpected ')'", line, col);
        std::string tok;
        while (pos < text.size()) {
            char d = text[pos];
            if (d == '(' || d == ')' || d == ';' || d == ' ' || d == '\t' || d == '\r' || d == '\n')
                break;
            tok.push_back(d);
            advance();
        }
        return Sexp::sym(std::move(tok));
    }
};

} // namespace detail

inline Sexp parse_sexpr(const std::string& text) {
    detail::Lexer lx(text);
    Sexp e = lx.next();
    if (!lx.at_end()) throw ParseError("trailing content after expression", lx.line, lx.col);
    return e;
}

inline std::vector<Sexp> parse_sexprs(const std::string& text) {
    detail::Lexer lx(text);
    std::vector<Sexp> out;
    while (!lx.at_end()) out.push_back(lx.next());
    return out;
}

inline void write_sexpr(const Sexp& e, std::string& out) {
    if (e.is_atom) {
        out += e.atom;
        return;
    }
    out += '(';
    for (size_t i = 0; i < e.items.size(); i++) {
        if (i) out += ' ';
        write_sexpr(e.items[i], out);
    }
    out += ')';
}

inline std::string write_sexpr(const Sexp& e) {
    std::string out;
    write_sexpr(e, out);
    return out;
}

} // namespace mellnet
