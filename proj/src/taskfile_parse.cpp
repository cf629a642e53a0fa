// Copyright 2026 The confsym Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <cctype>
#include <set>
#include <sstream>

#include "confsym/taskfile.hpp"

namespace confsym {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Cursor(const std::string& t) : text(t) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }

    char advance() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
};

class PolyParser {
public:
    PolyParser(Cursor& cur, int n) : cur_(cur), n_(n) {}

    Poly parse_expr() {
        Poly acc(n_);
        cur_.skip_space_and_comments();
        bool negate = false;
        if (cur_.peek() == '+' || cur_.peek() == '-') negate = cur_.advance() == '-';
        acc += parse_term(negate);
        for (;;) {
            cur_.skip_space_and_comments();
            char c = cur_.peek();
            if (c != '+' && c != '-') break;
            cur_.advance();
            acc += parse_term(c == '-');
        }
        return acc;
    }

private:
    Poly parse_term(bool negate) {
        Poly acc = parse_factor();
        for (;;) {
            cur_.skip_space_and_comments();
            if (cur_.peek() != '*') break;
            cur_.advance();
            acc = acc * parse_factor();
        }
        return negate ? -acc : acc;
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        cur_.skip_space_and_comments();
        if (cur_.peek() == '^') {
            cur_.advance();
            cur_.skip_space_and_comments();
            if (!std::isdigit(static_cast<unsigned char>(cur_.peek()))) cur_.fail("exponent must be a non-negative integer");
            long e = parse_integer();
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly parse_atom() {
        cur_.skip_space_and_comments();
        char c = cur_.peek();
        if (c == '(') {
            int open_line = cur_.line, open_col = cur_.col;
            cur_.advance();
            Poly inner = parse_expr();
            cur_.skip_space_and_comments();
            if (cur_.peek() != ')') throw ParseError(open_line, open_col, "unbalanced parenthesis");
            cur_.advance();
            return inner;
        }
        if (c == 'x') {
            int vline = cur_.line, vcol = cur_.col;
            cur_.advance();
            if (!std::isdigit(static_cast<unsigned char>(cur_.peek())))
                throw ParseError(vline, vcol, "variable must be x1..x" + std::to_string(n_));
            long i = parse_integer();
            if (i < 1 || i > n_)
                throw ParseError(vline, vcol,
                                 "unknown variable x" + std::to_string(i) + " (dimension is " + std::to_string(n_) + ")");
            return Poly::variable(n_, static_cast<int>(i));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = parse_integer();
            if (cur_.peek() == '/') {
                int sline = cur_.line, scol = cur_.col;
                cur_.advance();
                if (!std::isdigit(static_cast<unsigned char>(cur_.peek())))
                    throw ParseError(sline, scol, "malformed rational");
                long den = parse_integer();
                if (den == 0) throw ParseError(sline, scol, "malformed rational: zero denominator");
                return Poly::constant(n_, Rational(num, den));
            }
            return Poly::constant(n_, Rational(num));
        }
        if (c == '-') {  // unary minus inside a factor position, e.g. after '('
            cur_.advance();
            return -parse_atom();
        }
        cur_.fail(c == '\0' ? "unexpected end of expression" : std::string("unexpected character '") + c + "'");
    }

    long parse_integer() {
        long v = 0;
        if (!std::isdigit(static_cast<unsigned char>(cur_.peek()))) cur_.fail("digit expected");
        while (std::isdigit(static_cast<unsigned char>(cur_.peek()))) v = v * 10 + (cur_.advance() - '0');
        return v;
    }

    Cursor& cur_;
    int n_;
};

}  // namespace

Poly parse_polynomial(const std::string& text, int n) {
    Cursor cur(text);
    PolyParser parser(cur, n);
    Poly p = parser.parse_expr();
    cur.skip_space_and_comments();
    if (!cur.eof()) cur.fail("trailing input after expression");
    return p;
}

namespace {

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

Rational parse_weight(const std::string& text, int line) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(line, 1, std::string("bad rational weight: ") + e.what());
    }
}

// parses "( e1, e2, ... )" with polynomial entries
std::vector<Poly> parse_poly_list(const std::string& text, int n, int line) {
    Cursor cur(text);
    cur.line = line;
    cur.skip_space_and_comments();
    if (cur.peek() != '(') cur.fail("expected '(' to open the component list");
    cur.advance();
    std::vector<Poly> out;
    for (;;) {
        PolyParser parser(cur, n);
        out.push_back(parser.parse_expr());
        cur.skip_space_and_comments();
        if (cur.peek() == ',') {
            cur.advance();
            continue;
        }
        if (cur.peek() == ')') {
            cur.advance();
            break;
        }
        cur.fail("expected ',' or ')' in component list");
    }
    cur.skip_space_and_comments();
    if (!cur.eof()) cur.fail("trailing input after component list");
    return out;
}

}  // namespace

std::string TaskDecl::arg(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : args)
        if (k == key) return v;
    return fallback;
}

bool TaskDecl::has_arg(const std::string& key) const {
    for (const auto& [k, v] : args)
        if (k == key) return true;
    return false;
}

TaskFile parse_taskfile(const std::string& text) {
    TaskFile tf;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::map<std::string, char> declared;  // name -> kind
    bool dimension_seen = false;

    auto check_fresh = [&](const std::string& name, int line) {
        if (declared.count(name)) throw ParseError(line, 1, "name '" + name + "' already declared");
    };

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto words = split_words(line);
        if (words.empty()) continue;
        const std::string& directive = words[0];

        if (directive == "dimension") {
            if (words.size() != 2) throw ParseError(lineno, 1, "usage: dimension <n>");
            tf.dimension = static_cast<int>(std::stol(words[1]));
            if (tf.dimension < 1 || tf.dimension > kMaxDim) throw ParseError(lineno, 1, "dimension out of range");
            dimension_seen = true;
        } else if (directive == "order") {
            if (words.size() != 2) throw ParseError(lineno, 1, "usage: order <k>");
            tf.order = static_cast<int>(std::stol(words[1]));
            if (tf.order < 1 || tf.order > 12) throw ParseError(lineno, 1, "order out of range");
        } else if (directive == "seed") {
            if (words.size() != 2) throw ParseError(lineno, 1, "usage: seed <s>");
            tf.seed = std::stoull(words[1]);
        } else if (directive == "field" || directive == "density" || directive == "metric" || directive == "conformal") {
            size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, 1, "expected '=' in declaration");
            auto head = split_words(line.substr(0, eq));
            std::string rhs = line.substr(eq + 1);
            if (head.size() < 2) throw ParseError(lineno, 1, "declaration needs a name");
            const std::string& name = head[1];
            check_fresh(name, lineno);
            // optional "valence v" / "weight w" pairs between the name and '='
            int valence = 1;
            Rational weight(0);
            for (size_t i = 2; i < head.size(); i += 2) {
                if (i + 1 >= head.size()) throw ParseError(lineno, 1, "dangling attribute '" + head[i] + "'");
                if (head[i] == "valence") {
                    if (directive != "field") throw ParseError(lineno, 1, "'valence' only applies to fields");
                    valence = static_cast<int>(std::stol(head[i + 1]));
                } else if (head[i] == "weight") {
                    if (directive == "metric" || directive == "conformal")
                        throw ParseError(lineno, 1, "'" + directive + "' declarations do not take a weight");
                    weight = parse_weight(head[i + 1], lineno);
                } else {
                    throw ParseError(lineno, 1, "unknown attribute '" + head[i] + "'");
                }
            }
            const int n = tf.dimension;
            if (directive == "field") {
                FieldDecl d;
                d.name = name;
                d.valence = valence;
                d.weight = weight;
                d.entries = parse_poly_list(rhs, n, lineno);
                size_t expect = valence == 1 ? static_cast<size_t>(n) : static_cast<size_t>(n) * (static_cast<size_t>(n) + 1) / 2;
                if (valence != 1 && valence != 2) throw ParseError(lineno, 1, "field valence must be 1 or 2");
                if (d.entries.size() != expect)
                    throw ParseError(lineno, 1, "field '" + name + "' needs " + std::to_string(expect) + " components");
                if (valence == 2) {
                    // upper triangle row-major; diagonal must be trace-free
                    Poly trace(n);
                    size_t k = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = i; j < n; ++j, ++k)
                            if (i == j) trace += d.entries[k];
                    if (!trace.is_zero())
                        throw ParseError(lineno, 1, "valence-2 field '" + name + "' must be trace-free");
                }
                tf.fields.push_back(std::move(d));
                declared[name] = 'f';
            } else if (directive == "density") {
                auto list = parse_poly_list("(" + rhs + ")", n, lineno);
                tf.densities.push_back({name, weight, list.at(0)});
                declared[name] = 'd';
            } else if (directive == "metric") {
                MetricDecl d;
                d.name = name;
                d.entries = parse_poly_list(rhs, n, lineno);
                size_t expect = static_cast<size_t>(n) * (static_cast<size_t>(n) + 1) / 2;
                if (d.entries.size() != expect)
                    throw ParseError(lineno, 1, "metric '" + name + "' needs " + std::to_string(expect) + " upper-triangle entries");
                tf.metrics.push_back(std::move(d));
                declared[name] = 'm';
            } else {
                auto list = parse_poly_list("(" + rhs + ")", n, lineno);
                const Poly& omega = list.at(0);
                std::vector<Rational> origin(static_cast<size_t>(n));
                if (omega.eval(origin) != Rational(1))
                    throw ParseError(lineno, 1, "conformal factor '" + name + "' must equal 1 at the origin");
                tf.conformals.push_back({name, omega});
                declared[name] = 'c';
            }
            tf.decl_order.push_back(name);
        } else if (directive == "task") {
            if (words.size() < 2) throw ParseError(lineno, 1, "usage: task <verb> [args]");
            TaskDecl t;
            t.verb = words[1];
            t.line = lineno;
            // pairing kinds may appear as bare words without being declarations
            static const std::set<std::string> keywords = {
                "first",        "second",          "oneform",
                "yamabe",       "inner",           "special-gradient",
                "special-divergence", "special-hessian", "special-double-divergence",
                "special-divergence-v2"};
            for (size_t i = 2; i < words.size(); ++i) {
                size_t eq = words[i].find('=');
                if (eq == std::string::npos) {
                    if (!declared.count(words[i]) && !keywords.count(words[i]))
                        throw ParseError(lineno, 1, "task references undeclared name '" + words[i] + "'");
                    t.names.push_back(words[i]);
                } else {
                    t.args.emplace_back(words[i].substr(0, eq), words[i].substr(eq + 1));
                }
            }
            for (const auto& [k, v] : t.args) {
                if (k == "metric" || k == "conformal" || k == "field" || k == "density") {
                    if (!declared.count(v)) throw ParseError(lineno, 1, "task references undeclared name '" + v + "'");
                }
            }
            tf.tasks.push_back(std::move(t));
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + directive + "'");
        }
        if (!dimension_seen && (directive == "field" || directive == "metric" || directive == "conformal"))
            throw ParseError(lineno, 1, "declare 'dimension' before fields");
    }
    return tf;
}

std::string print_taskfile(const TaskFile& tf) {
    std::ostringstream os;
    os << "dimension " << tf.dimension << "\n";
    os << "order " << tf.order << "\n";
    os << "seed " << tf.seed << "\n";
    for (const auto& name : tf.decl_order) {
        for (const auto& f : tf.fields) {
            if (f.name != name) continue;
            os << "field " << f.name;
            if (f.valence != 1) os << " valence " << f.valence;
            if (!f.weight.is_zero()) os << " weight " << f.weight.str();
            os << " = (";
            for (size_t i = 0; i < f.entries.size(); ++i) os << (i ? ", " : "") << f.entries[i].str();
            os << ")\n";
        }
        for (const auto& d : tf.densities)
            if (d.name == name) {
                os << "density " << d.name;
                if (!d.weight.is_zero()) os << " weight " << d.weight.str();
                os << " = " << d.value.str() << "\n";
            }
        for (const auto& m : tf.metrics) {
            if (m.name != name) continue;
            os << "metric " << m.name << " = (";
            for (size_t i = 0; i < m.entries.size(); ++i) os << (i ? ", " : "") << m.entries[i].str();
            os << ")\n";
        }
        for (const auto& c : tf.conformals)
            if (c.name == name) os << "conformal " << c.name << " = " << c.value.str() << "\n";
    }
    for (const auto& t : tf.tasks) {
        os << "task " << t.verb;
        for (const auto& nm : t.names) os << " " << nm;
        for (const auto& [k, v] : t.args) os << " " << k << "=" << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace confsym
