#include "invlab/expr.hpp"

#include <cctype>
#include <charconv>

#include "invlab/construct.hpp"

namespace invlab {

namespace {

struct Token {
    enum class Type { Ident, Int, LParen, RParen, Comma, Semi, End };
    Type type = Type::End;
    std::string_view text;
    std::size_t offset = 0;
};

const char* describe(Token::Type t) {
    switch (t) {
    case Token::Type::Ident: return "identifier";
    case Token::Type::Int: return "integer";
    case Token::Type::LParen: return "'('";
    case Token::Type::RParen: return "')'";
    case Token::Type::Comma: return "','";
    case Token::Type::Semi: return "';'";
    case Token::Type::End: return "end of input";
    }
    return "token";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        current_.offset = pos_;
        if (pos_ == src_.size()) {
            current_.type = Token::Type::End;
            current_.text = {};
            return;
        }
        const char c = src_[pos_];
        const std::size_t start = pos_;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            current_.type = Token::Type::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            current_.type = Token::Type::Int;
        } else {
            ++pos_;
            switch (c) {
            case '(': current_.type = Token::Type::LParen; break;
            case ')': current_.type = Token::Type::RParen; break;
            case ',': current_.type = Token::Type::Comma; break;
            case ';': current_.type = Token::Type::Semi; break;
            default: throw ParseError(start, std::string("unexpected character '") + c + "'");
            }
        }
        current_.text = src_.substr(start, pos_ - start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr parse_all() {
        Expr e = parse_expr();
        expect(Token::Type::End);
        return e;
    }

private:
    Token expect(Token::Type type) {
        const Token& t = lex_.peek();
        if (t.type != type) {
            throw ParseError(t.offset, std::string("syntax error: expected ") + describe(type) + ", found " +
                                           describe(t.type));
        }
        return lex_.take();
    }

    bool accept(Token::Type type) {
        if (lex_.peek().type != type) return false;
        lex_.take();
        return true;
    }

    int parse_int() {
        const Token t = expect(Token::Type::Int);
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || value > kMaxVertices) {
            throw ParseError(t.offset, "integer out of range (max 64)");
        }
        return value;
    }

    // Comma-separated expressions up to ')'.
    std::vector<Expr> parse_expr_list() {
        std::vector<Expr> out;
        out.push_back(parse_expr());
        while (accept(Token::Type::Comma)) out.push_back(parse_expr());
        return out;
    }

    Expr parse_expr() {
        const Token id = expect(Token::Type::Ident);
        Expr e;
        e.offset = id.offset;
        const std::string_view name = id.text;

        if (name == "c3") {
            e.kind = Expr::Kind::C3;
            if (accept(Token::Type::LParen)) expect(Token::Type::RParen);
            return e;
        }
        if (name == "tt" || name == "qn") {
            e.kind = name == "tt" ? Expr::Kind::Transitive : Expr::Kind::Qn;
            expect(Token::Type::LParen);
            const std::size_t at = lex_.peek().offset;
            e.count = parse_int();
            if (e.kind == Expr::Kind::Qn && e.count < 1) throw ParseError(at, "qn needs an order >= 1");
            expect(Token::Type::RParen);
            return e;
        }
        if (name == "rev") {
            e.kind = Expr::Kind::Reverse;
            expect(Token::Type::LParen);
            e.children.push_back(parse_expr());
            expect(Token::Type::RParen);
            return e;
        }
        if (name == "dijoin") {
            e.kind = Expr::Kind::Dijoin;
            expect(Token::Type::LParen);
            e.children = parse_expr_list();
            if (e.children.size() != 2) {
                throw ParseError(id.offset, "arity error: dijoin takes 2 arguments, got " +
                                                std::to_string(e.children.size()));
            }
            expect(Token::Type::RParen);
            return e;
        }
        if (name == "join") {
            e.kind = Expr::Kind::Join;
            expect(Token::Type::LParen);
            e.children = parse_expr_list();
            expect(Token::Type::RParen);
            return e;
        }
        if (name == "blowup") {
            expect(Token::Type::LParen);
            e.children.push_back(parse_expr());
            expect(Token::Type::Semi);
            e.children.push_back(parse_expr());
            const bool more = accept(Token::Type::Comma);
            if (more && lex_.peek().type == Token::Type::Int) {
                const std::size_t at = lex_.peek().offset;
                e.kind = Expr::Kind::BlowupUniform;
                e.count = parse_int();
                if (e.count < 1) throw ParseError(at, "blowup count must be >= 1");
            } else {
                e.kind = Expr::Kind::Blowup;
                if (more) {
                    auto rest = parse_expr_list();
                    for (auto& r : rest) e.children.push_back(std::move(r));
                }
            }
            expect(Token::Type::RParen);
            return e;
        }
        throw ParseError(id.offset, "unknown identifier '" + std::string(name) + "'");
    }

    Lexer lex_;
};

void print(const Expr& e, std::string& out) {
    auto list = [&](std::size_t from) {
        for (std::size_t i = from; i < e.children.size(); ++i) {
            if (i > from) out += ", ";
            print(e.children[i], out);
        }
    };
    switch (e.kind) {
    case Expr::Kind::C3: out += "c3"; return;
    case Expr::Kind::Transitive: out += "tt(" + std::to_string(e.count) + ")"; return;
    case Expr::Kind::Qn: out += "qn(" + std::to_string(e.count) + ")"; return;
    case Expr::Kind::Reverse: out += "rev("; list(0); out += ")"; return;
    case Expr::Kind::Dijoin: out += "dijoin("; list(0); out += ")"; return;
    case Expr::Kind::Join: out += "join("; list(0); out += ")"; return;
    case Expr::Kind::Blowup:
        out += "blowup(";
        print(e.children[0], out);
        out += "; ";
        list(1);
        out += ")";
        return;
    case Expr::Kind::BlowupUniform:
        out += "blowup(";
        print(e.children[0], out);
        out += "; ";
        print(e.children[1], out);
        out += ", " + std::to_string(e.count) + ")";
        return;
    }
}

Digraph checked(const Expr& e, auto&& build) {
    try {
        return build();
    } catch (const UsageError& err) {
        throw ParseError(e.offset, std::string("cannot build: ") + err.what());
    }
}

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse_all(); }

std::string pretty_print(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

Digraph evaluate(const Expr& e) {
    auto all = [](const std::vector<Expr>& xs, std::size_t from) {
        std::vector<Digraph> out;
        for (std::size_t i = from; i < xs.size(); ++i) out.push_back(evaluate(xs[i]));
        return out;
    };
    switch (e.kind) {
    case Expr::Kind::C3: return c3();
    case Expr::Kind::Transitive: return checked(e, [&] { return transitive(e.count); });
    case Expr::Kind::Qn: return checked(e, [&] { return qn(e.count); });
    case Expr::Kind::Reverse: return reverse(evaluate(e.children.at(0)));
    case Expr::Kind::Dijoin: {
        const auto parts = all(e.children, 0);
        return checked(e, [&] { return dijoin(parts[0], parts[1]); });
    }
    case Expr::Kind::Join: {
        const auto parts = all(e.children, 0);
        return checked(e, [&] { return k_join(parts); });
    }
    case Expr::Kind::Blowup: {
        const Digraph host = evaluate(e.children.at(0));
        const auto parts = all(e.children, 1);
        if (static_cast<int>(parts.size()) != host.n()) {
            throw ParseError(e.offset, "arity error: blowup host has " + std::to_string(host.n()) +
                                           " vertices but " + std::to_string(parts.size()) + " parts were given");
        }
        return checked(e, [&] { return blow_up(host, parts); });
    }
    case Expr::Kind::BlowupUniform: {
        const Digraph host = evaluate(e.children.at(0));
        if (e.count != host.n()) {
            throw ParseError(e.offset, "arity error: blowup host has " + std::to_string(host.n()) +
                                           " vertices but count is " + std::to_string(e.count));
        }
        const std::vector<Digraph> parts(static_cast<std::size_t>(e.count), evaluate(e.children.at(1)));
        return checked(e, [&] { return blow_up(host, parts); });
    }
    }
    throw ParseError(e.offset, "unhandled expression kind");
}

} // namespace invlab
