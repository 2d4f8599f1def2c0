#include "ca/parse.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace ca {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            step();
        cur_ = Token{Tok::End, "", line_, col_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur_.kind = Tok::Int;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                cur_.text += text_[pos_];
                step();
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            cur_.kind = Tok::Ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                cur_.text += text_[pos_];
                step();
            }
            return;
        }
        switch (c) {
            case '+': cur_.kind = Tok::Plus; break;
            case '-': cur_.kind = Tok::Minus; break;
            case '*': cur_.kind = Tok::Star; break;
            case '^': cur_.kind = Tok::Caret; break;
            case '/': cur_.kind = Tok::Slash; break;
            case '(': cur_.kind = Tok::LParen; break;
            case ')': cur_.kind = Tok::RParen; break;
            default:
                throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        cur_.text = c;
        step();
    }

    void step() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_;
};

[[noreturn]] void fail(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.col, what);
}

class ScalarParser {
public:
    ScalarParser(Lexer& lex, const Chart& chart) : lex_(lex), chart_(chart) {}

    Scalar expr() {
        Scalar acc = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Tok op = lex_.take().kind;
            Scalar rhs = term();
            acc = (op == Tok::Plus) ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    Scalar factor() {
        Scalar base = primary();
        if (lex_.peek().kind == Tok::Caret) {
            Token caret = lex_.take();
            Token e = lex_.peek();
            if (e.kind != Tok::Int)
                fail(e.kind == Tok::End ? caret : e, "exponent must be a nonnegative integer");
            lex_.take();
            base = pow(base, static_cast<unsigned>(std::stoul(e.text)));
        }
        return base;
    }

private:
    Scalar term() {
        Scalar acc = factor();
        for (;;) {
            Tok op = lex_.peek().kind;
            if (op != Tok::Star && op != Tok::Slash) break;
            Token t = lex_.take();
            Scalar rhs = factor();
            if (op == Tok::Star) {
                acc = acc * rhs;
            } else {
                if (rhs.is_zero()) throw DivisionByZero();
                acc = acc / rhs;
            }
        }
        return acc;
    }

    Scalar primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Minus: return -factor();
            case Tok::Plus: return factor();
            case Tok::LParen: {
                Scalar inner = expr();
                Token close = lex_.take();
                if (close.kind != Tok::RParen) fail(close, "expected ')'");
                return inner;
            }
            case Tok::Int: return Scalar(Rat(t.text));
            case Tok::Ident: {
                int idx = chart_.index_of(t.text);
                if (idx < 0) fail(t, "unknown coordinate '" + t.text + "'");
                return Scalar::variable(idx, chart_.dim());
            }
            default: fail(t, "expected a value");
        }
    }

    Lexer& lex_;
    const Chart& chart_;
};

// Index of the coordinate when the identifier is `d` + a coordinate name and
// not itself a coordinate name; -1 otherwise.
int differential_index(const Chart& chart, const std::string& ident) {
    if (ident.size() < 2 || ident[0] != 'd') return -1;
    if (chart.index_of(ident) >= 0) return -1;
    return chart.index_of(ident.substr(1));
}

}  // namespace

Scalar parse_scalar(const std::string& text, const Chart& chart) {
    Lexer lex(text);
    ScalarParser p(lex, chart);
    Scalar out = p.expr();
    if (lex.peek().kind != Tok::End) fail(lex.peek(), "trailing input");
    return out;
}

DifferentialForm parse_form(const std::string& text, const Chart& chart) {
    Lexer lex(text);
    ScalarParser sp(lex, chart);
    DifferentialForm total;
    bool first = true;
    Scalar sign(1);
    if (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
        if (lex.take().kind == Tok::Minus) sign = Scalar(-1);
    }
    for (;;) {
        // one term: factors separated by '*', '^' or '/', differentials
        // wedged in the order written
        Scalar coeff = sign;
        DifferentialForm part = DifferentialForm::function(chart, Scalar(1));
        Tok sep = Tok::Star;
        for (;;) {
            Token t = lex.peek();
            int di = (t.kind == Tok::Ident) ? differential_index(chart, t.text) : -1;
            if (di >= 0) {
                if (sep == Tok::Slash) fail(t, "cannot divide by a differential");
                lex.take();
                part = wedge(part, DifferentialForm::basis_one_form(chart, di));
            } else if (sep == Tok::Caret) {
                fail(t, "'^' between form factors expects a differential");
            } else {
                Scalar f = sp.factor();
                if (sep == Tok::Slash) {
                    if (f.is_zero()) throw DivisionByZero();
                    coeff = coeff / f;
                } else {
                    coeff = coeff * f;
                }
            }
            Tok next = lex.peek().kind;
            if (next == Tok::Star || next == Tok::Caret || next == Tok::Slash) {
                sep = lex.take().kind;
            } else {
                break;
            }
        }
        DifferentialForm term_form = coeff * part;
        if (first) {
            total = term_form;
            first = false;
        } else {
            if (term_form.degree() != total.degree())
                fail(lex.peek(), "terms of different form degree");
            total = total + term_form;
        }
        Tok next = lex.peek().kind;
        if (next == Tok::End) break;
        if (next != Tok::Plus && next != Tok::Minus) fail(lex.peek(), "expected '+' or '-'");
        sign = (lex.take().kind == Tok::Minus) ? Scalar(-1) : Scalar(1);
    }
    return total;
}

std::string print_form(const DifferentialForm& w) {
    if (w.degree() == 0) return w.comp()[0].str(w.chart().names());
    auto idxs = increasing_multi_indices(w.chart().dim(), w.degree());
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < idxs.size(); ++k) {
        if (w[static_cast<int>(k)].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << w[static_cast<int>(k)].str(w.chart().names()) << ")";
        for (int i : idxs[k]) os << "*d" << w.chart().name(i);
        first = false;
    }
    if (first) {
        // keep the degree readable for the zero form
        os << "(0)";
        for (int i : idxs.front()) os << "*d" << w.chart().name(i);
    }
    return os.str();
}

}  // namespace ca
