#include "freejac/parse.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <memory>

#include "freejac/error.hpp"

namespace freejac {

namespace {

enum class Tok {
    ident,
    number,  // nonnegative real or pure-imaginary literal
    plus,
    minus,
    star,
    caret,
    lparen,
    rparen,
    lbracket,
    rbracket,
    comma,
    semicolon,
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    double value = 0.0;
    bool imaginary = false;
    bool plain_uint = false;  // digits only: usable as an exponent
    int line = 1;
    int column = 1;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg, int line, int column) {
    throw Error(code, msg, nlohmann::json{{"line", line}, {"column", column}});
}

[[noreturn]] void fail(ErrorCode code, const std::string& msg, const Token& t) {
    fail(code, msg, t.line, t.column);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.kind = Tok::ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool plain = true;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                plain = false;
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    plain = false;
                    j = k;
                    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                        ++j;
                }
            }
            t.kind = Tok::number;
            t.text = text.substr(i, j - i);
            auto conv = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (conv.ec != std::errc()) {
                fail(ErrorCode::syntax_error, "number '" + t.text + "' is out of range",
                     line, col);
            }
            t.plain_uint = plain;
            // imaginary suffix: 3i, 2.5i — only when not gluing onto an identifier
            if (j < text.size() && text[j] == 'i' &&
                (j + 1 >= text.size() || !ident_char(text[j + 1]))) {
                t.imaginary = true;
                t.plain_uint = false;
                ++j;
                t.text = text.substr(i, j - i);
            }
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '^': t.kind = Tok::caret; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            case '[': t.kind = Tok::lbracket; break;
            case ']': t.kind = Tok::rbracket; break;
            case ',': t.kind = Tok::comma; break;
            case ';': t.kind = Tok::semicolon; break;
            default:
                fail(ErrorCode::syntax_error,
                     std::string("unexpected character '") + c + "'", line, col);
        }
        t.text = std::string(1, c);
        advance(1);
        out.push_back(std::move(t));
    }
    Token eof;
    eof.kind = Tok::end;
    eof.line = line;
    eof.column = col;
    out.push_back(eof);
    return out;
}

// Expressions are parsed to a small AST first so the variable alphabet can be
// sized after the whole input has been seen (first-appearance numbering).
struct Node {
    enum Kind { var, constant, add, sub, neg, mul, pow, commutator } kind;
    int var_index = 0;
    cplx value{};
    unsigned exponent = 0;
    std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind k) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    ParsedMap parse_map_source() {
        parse_header();
        expect(Tok::lparen, "expected '(' to open the component tuple");
        if (peek().kind == Tok::rparen) {
            fail(ErrorCode::empty_tuple, "a map needs at least one component", peek());
        }
        std::vector<NodePtr> comps;
        comps.push_back(parse_expr());
        while (peek().kind == Tok::comma) {
            next();
            comps.push_back(parse_expr());
        }
        expect(Tok::rparen, "expected ')' or ',' in the component tuple");
        expect(Tok::end, "trailing input after the closing ')'");
        return build(std::move(comps));
    }

    ParsedMap parse_bare_expr() {
        std::vector<NodePtr> comps;
        comps.push_back(parse_expr());
        expect(Tok::end, "trailing input after the expression");
        return build(std::move(comps));
    }

    bool starts_with_tuple() const {
        return toks_.front().kind == Tok::lparen ||
               (toks_.front().kind == Tok::ident && toks_.front().text == "vars");
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> names_;
    std::map<std::string, int> index_of_;
    bool declared_ = false;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    const Token& expect(Tok kind, const std::string& msg) {
        if (peek().kind != kind) fail(ErrorCode::syntax_error, msg, peek());
        return next();
    }

    void parse_header() {
        if (peek().kind != Tok::ident || peek().text != "vars") return;
        next();
        declared_ = true;
        while (true) {
            const Token& t = expect(Tok::ident, "expected a variable name");
            declare(t);
            if (peek().kind == Tok::comma) {
                next();
                continue;
            }
            break;
        }
        expect(Tok::semicolon, "expected ';' after the vars header");
    }

    void declare(const Token& t) {
        if (t.text == "vars" || t.text == "i") {
            fail(ErrorCode::syntax_error, "'" + t.text + "' is reserved", t);
        }
        if (index_of_.count(t.text)) {
            fail(ErrorCode::syntax_error, "duplicate variable '" + t.text + "'", t);
        }
        index_of_[t.text] = static_cast<int>(names_.size());
        names_.push_back(t.text);
    }

    int resolve(const Token& t) {
        auto it = index_of_.find(t.text);
        if (it != index_of_.end()) return it->second;
        if (declared_) {
            fail(ErrorCode::unknown_identifier, "unknown identifier '" + t.text + "'", t);
        }
        declare(t);
        return index_of_[t.text];
    }

    NodePtr parse_expr() {
        NodePtr acc;
        if (peek().kind == Tok::minus) {
            next();
            acc = make_node(Node::neg);
            acc->lhs = parse_term();
        } else {
            acc = parse_term();
        }
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool plus = next().kind == Tok::plus;
            auto n = make_node(plus ? Node::add : Node::sub);
            n->lhs = std::move(acc);
            n->rhs = parse_term();
            acc = std::move(n);
        }
        return acc;
    }

    NodePtr parse_term() {
        NodePtr acc = parse_factor();
        while (peek().kind == Tok::star) {
            next();
            auto n = make_node(Node::mul);
            n->lhs = std::move(acc);
            n->rhs = parse_factor();
            acc = std::move(n);
        }
        return acc;
    }

    NodePtr parse_factor() {
        NodePtr base = parse_atom();
        if (peek().kind != Tok::caret) return base;
        next();
        const Token& e = peek();
        if (e.kind == Tok::minus) {
            fail(ErrorCode::bad_exponent, "exponents must be nonnegative integers", e);
        }
        if (e.kind != Tok::number || !e.plain_uint) {
            fail(ErrorCode::bad_exponent, "exponents must be nonnegative integers", e);
        }
        next();
        auto n = make_node(Node::pow);
        n->exponent = static_cast<unsigned>(e.value);
        n->lhs = std::move(base);
        return n;
    }

    NodePtr parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::ident: {
                next();
                if (t.text == "i") {
                    auto n = make_node(Node::constant);
                    n->value = cplx(0.0, 1.0);
                    return n;
                }
                if (t.text == "vars") {
                    fail(ErrorCode::syntax_error, "'vars' is reserved", t);
                }
                auto n = make_node(Node::var);
                n->var_index = resolve(t);
                return n;
            }
            case Tok::number: {
                next();
                auto n = make_node(Node::constant);
                n->value = t.imaginary ? cplx(0.0, t.value) : cplx(t.value, 0.0);
                return n;
            }
            case Tok::lparen: {
                next();
                NodePtr inner = parse_expr();
                expect(Tok::rparen, "expected ')'");
                return inner;
            }
            case Tok::lbracket: {
                next();
                auto n = make_node(Node::commutator);
                n->lhs = parse_expr();
                expect(Tok::comma, "expected ',' inside the commutator");
                n->rhs = parse_expr();
                expect(Tok::rbracket, "expected ']'");
                return n;
            }
            default:
                fail(ErrorCode::syntax_error, "expected a variable, literal, '(' or '['", t);
        }
    }

    FreePoly eval(const Node& n, int num_vars) const {
        switch (n.kind) {
            case Node::var:
                return FreePoly::variable(num_vars, n.var_index);
            case Node::constant:
                return FreePoly::constant(num_vars, n.value);
            case Node::add:
                return eval(*n.lhs, num_vars) + eval(*n.rhs, num_vars);
            case Node::sub:
                return eval(*n.lhs, num_vars) - eval(*n.rhs, num_vars);
            case Node::neg:
                return -eval(*n.lhs, num_vars);
            case Node::mul:
                return eval(*n.lhs, num_vars) * eval(*n.rhs, num_vars);
            case Node::pow: {
                FreePoly base = eval(*n.lhs, num_vars);
                FreePoly acc = FreePoly::constant(num_vars, 1.0);
                for (unsigned k = 0; k < n.exponent; ++k) acc *= base;
                return acc;
            }
            case Node::commutator: {
                FreePoly a = eval(*n.lhs, num_vars);
                FreePoly b = eval(*n.rhs, num_vars);
                return a * b - b * a;
            }
        }
        throw Error(ErrorCode::syntax_error, "corrupt expression tree");
    }

    ParsedMap build(std::vector<NodePtr> comps) {
        int num_vars = std::max<int>(1, static_cast<int>(names_.size()));
        std::vector<FreePoly> polys;
        polys.reserve(comps.size());
        for (const auto& c : comps) polys.push_back(eval(*c, num_vars));
        ParsedMap out{names_, FreePolyMap(num_vars, std::move(polys))};
        if (out.names.empty()) out.names = default_names(num_vars);
        return out;
    }
};

// --- printing ---------------------------------------------------------------

std::string render_word(const Word& w, const std::vector<std::string>& names,
                        bool compress_powers) {
    std::string out;
    std::size_t k = 0;
    while (k < w.letters.size()) {
        std::size_t run = 1;
        while (compress_powers && k + run < w.letters.size() &&
               w.letters[k + run] == w.letters[k])
            ++run;
        if (!out.empty()) out += "*";
        out += names[w.letters[k]];
        if (run > 1) out += "^" + std::to_string(run);
        k += run;
    }
    return out;
}

struct RenderedTerm {
    bool negative = false;
    std::string text;  // magnitude and word, without the sign
};

RenderedTerm render_term(const Word& w, cplx c, const std::vector<std::string>& names,
                         bool compress_powers) {
    RenderedTerm out;
    std::string coeff;
    bool coeff_is_one = false;
    if (c.imag() == 0.0) {
        out.negative = c.real() < 0.0;
        double mag = std::abs(c.real());
        coeff_is_one = mag == 1.0;
        coeff = format_double(mag);
    } else if (c.real() == 0.0) {
        out.negative = c.imag() < 0.0;
        double mag = std::abs(c.imag());
        coeff = mag == 1.0 ? "i" : format_double(mag) + "i";
    } else {
        std::string re = format_double(c.real());
        std::string im = c.imag() < 0.0 ? "-" + format_double(-c.imag())
                                        : "+" + format_double(c.imag());
        coeff = "(" + re + im + "i)";
    }
    std::string word = render_word(w, names, compress_powers);
    if (word.empty()) {
        out.text = coeff;
    } else if (coeff_is_one) {
        out.text = word;
    } else {
        out.text = coeff + "*" + word;
    }
    return out;
}

}  // namespace

ParsedMap parse_source(const std::string& text) {
    return Parser(text).parse_map_source();
}

FreePolyMap parse_map(const std::string& text) { return parse_source(text).map; }

FreePoly parse_poly(const std::string& text) {
    Parser p(text);
    if (p.starts_with_tuple()) {
        try {
            FreePolyMap m = p.parse_map_source().map;
            if (m.num_outputs() != 1) {
                throw Error(ErrorCode::arity_mismatch, "expected a single polynomial");
            }
            return m.components.front();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::syntax_error) throw;
            // fall through: "(X+Y)*X" is an expression, not a tuple
        }
    }
    return Parser(text).parse_bare_expr().map.components.front();
}

std::vector<std::string> default_names(int num_vars) {
    static const char* short_names[] = {"X", "Y", "Z", "W"};
    std::vector<std::string> out;
    if (num_vars <= 4) {
        for (int i = 0; i < num_vars; ++i) out.emplace_back(short_names[i]);
    } else {
        for (int i = 0; i < num_vars; ++i) out.push_back("X" + std::to_string(i + 1));
    }
    return out;
}

std::string print_poly(const FreePoly& p, const std::vector<std::string>& names,
                       bool compress_powers) {
    if (static_cast<int>(names.size()) < p.num_vars()) {
        throw Error(ErrorCode::invalid_argument, "not enough variable names for printing");
    }
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        RenderedTerm t = render_term(w, c, names, compress_powers);
        if (first) {
            out += (t.negative ? "-" : "") + t.text;
            first = false;
        } else {
            out += (t.negative ? " - " : " + ") + t.text;
        }
    }
    return out;
}

std::string print_map(const FreePolyMap& p, const std::vector<std::string>& names,
                      bool compress_powers) {
    std::string out = "vars ";
    for (int i = 0; i < p.num_vars; ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    out += "; (";
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (i) out += ", ";
        out += print_poly(p.components[i], names, compress_powers);
    }
    out += ")";
    return out;
}

std::string print_map(const FreePolyMap& p, bool compress_powers) {
    return print_map(p, default_names(p.num_vars), compress_powers);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace freejac
