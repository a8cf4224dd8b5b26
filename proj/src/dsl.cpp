#include "pqbit/dsl.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pqbit::dsl {

ExprPtr make_atom(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Atom;
    e->atom = std::move(name);
    return e;
}

ExprPtr make_crisp(PBit v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::CrispLit;
    e->crisp = v;
    return e;
}

ExprPtr make_pair(TruthPair w) {
    validate(w);
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::PairLit;
    e->pair = w;
    return e;
}

ExprPtr make_counts(Evidence ev) {
    validate(ev);
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::CountLit;
    e->counts = ev;
    return e;
}

ExprPtr make_random(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("make_random: rho must lie in [0,1]");
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Random;
    e->rho = rho;
    return e;
}

namespace {

ExprPtr unary_node(ExprKind kind, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(a);
    return e;
}

ExprPtr binary_node(ExprKind kind, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

bool bits_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

ExprPtr make_not(ExprPtr e) { return unary_node(ExprKind::Not, std::move(e)); }
ExprPtr make_and(ExprPtr a, ExprPtr b) { return binary_node(ExprKind::And, std::move(a), std::move(b)); }
ExprPtr make_or(ExprPtr a, ExprPtr b) { return binary_node(ExprKind::Or, std::move(a), std::move(b)); }
ExprPtr make_implies(ExprPtr a, ExprPtr b) { return binary_node(ExprKind::Implies, std::move(a), std::move(b)); }

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Atom: return a.atom == b.atom;
        case ExprKind::CrispLit: return a.crisp == b.crisp;
        case ExprKind::PairLit:
            return bits_equal(a.pair.w_plus, b.pair.w_plus) && bits_equal(a.pair.w_minus, b.pair.w_minus);
        case ExprKind::CountLit: return a.counts == b.counts;
        case ExprKind::Random: return bits_equal(a.rho, b.rho);
        case ExprKind::Not: return expr_equal(*a.lhs, *b.lhs);
        case ExprKind::And:
        case ExprKind::Or:
        case ExprKind::Implies: return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

enum class Tok {
    End, LParen, RParen, LAngle, RAngle, LBrace, RBrace, Comma,
    Amp, Pipe, Arrow, Tilde, Number, Ident, CrispT, CrispF, CrispB, CrispN, Random,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double num = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        current_ = Token{Tok::End, "", 0.0, line_, col_};
        if (pos_ >= text_.size()) return;
        const char c = text_[pos_];
        switch (c) {
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '<': single(Tok::LAngle); return;
            case '>': single(Tok::RAngle); return;
            case '{': single(Tok::LBrace); return;
            case '}': single(Tok::RBrace); return;
            case ',': single(Tok::Comma); return;
            case '&': single(Tok::Amp); return;
            case '|': single(Tok::Pipe); return;
            case '~': single(Tok::Tilde); return;
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    current_.kind = Tok::Arrow;
                    current_.text = "->";
                    pos_ += 2;
                    col_ += 2;
                    return;
                }
                throw parse_error(line_, col_, "'->'", message("unexpected character '-'"));
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            lex_word();
            return;
        }
        throw parse_error(line_, col_, "expression",
                          message(std::string("unexpected character '") + c + "'"));
    }

    void single(Tok kind) {
        current_.kind = kind;
        current_.text = text_[pos_];
        ++pos_;
        ++col_;
    }

    void lex_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                pos_ = mark;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        current_.kind = Tok::Number;
        current_.text = std::string(text_.substr(start, pos_ - start));
        try {
            current_.num = std::stod(current_.text);
        } catch (const std::out_of_range&) {
            throw parse_error(line_, col_, "a representable number",
                              message("number out of range: " + current_.text));
        }
        col_ += static_cast<int>(pos_ - start);
    }

    void lex_word() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        current_.text = std::string(text_.substr(start, pos_ - start));
        col_ += static_cast<int>(pos_ - start);
        if (current_.text == "T") current_.kind = Tok::CrispT;
        else if (current_.text == "F") current_.kind = Tok::CrispF;
        else if (current_.text == "B") current_.kind = Tok::CrispB;
        else if (current_.text == "N") current_.kind = Tok::CrispN;
        else if (current_.text == "random") current_.kind = Tok::Random;
        else current_.kind = Tok::Ident;
    }

    std::string message(const std::string& detail) const {
        return "parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + detail;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_impl();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const Token& at, const std::string& expected) {
        throw parse_error(at.line, at.col, expected,
                          "parse error at " + std::to_string(at.line) + ":" + std::to_string(at.col) +
                              ": expected " + expected);
    }

    Token expect(Tok kind, const std::string& expected) {
        if (lex_.peek().kind != kind) fail(lex_.peek(), expected);
        return lex_.take();
    }

    ExprPtr parse_impl() {
        ExprPtr lhs = parse_or();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.take();
            return make_implies(std::move(lhs), parse_impl());
        }
        return lhs;
    }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            lhs = make_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_unary();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            lhs = make_and(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (lex_.peek().kind == Tok::Tilde) {
            lex_.take();
            return make_not(parse_unary());
        }
        return parse_primary();
    }

    double expect_number(const char* range_check) {
        const Token t = expect(Tok::Number, "a number");
        if (range_check && !(t.num >= 0.0 && t.num <= 1.0)) {
            fail(t, std::string(range_check));
        }
        return t.num;
    }

    long expect_integer() {
        const Token t = expect(Tok::Number, "an integer");
        if (t.text.find_first_of(".eE") != std::string::npos) fail(t, "an integer");
        return std::stol(t.text);
    }

    ExprPtr parse_primary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::LParen: {
                lex_.take();
                ExprPtr e = parse_impl();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::CrispT: lex_.take(); return make_crisp(kTrue);
            case Tok::CrispF: lex_.take(); return make_crisp(kFalse);
            case Tok::CrispB: lex_.take(); return make_crisp(kBoth);
            case Tok::CrispN: lex_.take(); return make_crisp(kNeither);
            case Tok::LAngle: {
                lex_.take();
                const double wp = expect_number("a number in [0,1]");
                expect(Tok::Comma, "','");
                const double wm = expect_number("a number in [0,1]");
                expect(Tok::RAngle, "'>'");
                return make_pair({wp, wm});
            }
            case Tok::LBrace: {
                const Token open = lex_.take();
                const long np = expect_integer();
                expect(Tok::Comma, "','");
                const long nm = expect_integer();
                expect(Tok::Comma, "','");
                const long total = expect_integer();
                expect(Tok::RBrace, "'}'");
                try {
                    return make_counts({np, nm, total});
                } catch (const std::invalid_argument& err) {
                    throw parse_error(open.line, open.col, "valid evidence counts",
                                      "parse error at " + std::to_string(open.line) + ":" +
                                          std::to_string(open.col) + ": " + err.what());
                }
            }
            case Tok::Random: {
                lex_.take();
                expect(Tok::LParen, "'('");
                const double rho = expect_number("a probability in [0,1]");
                expect(Tok::RParen, "')'");
                return make_random(rho);
            }
            case Tok::Ident: {
                return make_atom(lex_.take().text);
            }
            default:
                fail(t, "a primary expression");
        }
    }

    Lexer lex_;
};

// Precedence levels used by both parser shape and printer: -> is 1, | is 2,
// & is 3, ~ is 4, primaries are 5.
int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Implies: return 1;
        case ExprKind::Or: return 2;
        case ExprKind::And: return 3;
        case ExprKind::Not: return 4;
        default: return 5;
    }
}

std::string number_text(double v) {
    // nlohmann's dtoa emits the shortest digit string that round-trips.
    return nlohmann::json(v).dump();
}

void print_node(const Expr& e, int min_prec, std::string& out) {
    const int prec = precedence(e.kind);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::Atom: out += e.atom; break;
        case ExprKind::CrispLit: out += pbit_code(e.crisp); break;
        case ExprKind::PairLit:
            out += '<';
            out += number_text(e.pair.w_plus);
            out += ',';
            out += number_text(e.pair.w_minus);
            out += '>';
            break;
        case ExprKind::CountLit:
            out += '{';
            out += std::to_string(e.counts.n_plus);
            out += ',';
            out += std::to_string(e.counts.n_minus);
            out += ',';
            out += std::to_string(e.counts.total);
            out += '}';
            break;
        case ExprKind::Random:
            out += "random(";
            out += number_text(e.rho);
            out += ')';
            break;
        case ExprKind::Not:
            out += '~';
            print_node(*e.lhs, prec, out);
            break;
        case ExprKind::And:
            print_node(*e.lhs, prec, out);
            out += " & ";
            print_node(*e.rhs, prec + 1, out);
            break;
        case ExprKind::Or:
            print_node(*e.lhs, prec, out);
            out += " | ";
            print_node(*e.rhs, prec + 1, out);
            break;
        case ExprKind::Implies:
            print_node(*e.lhs, prec + 1, out);
            out += " -> ";
            print_node(*e.rhs, prec, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

ExprPtr parse(std::string_view text) {
    return Parser(text).run();
}

std::string print(const Expr& e) {
    std::string out;
    print_node(e, 1, out);
    return out;
}

}  // namespace pqbit::dsl
