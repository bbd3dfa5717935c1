#include "bops/kernel/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace bops::kernel {

namespace {

enum class Tok {
    End,
    Ident,
    IntLit,
    FloatLit,
    KwLong,
    KwDouble,
    KwFor,
    KwIf,
    KwElse,
    KwReserved,  // recognized but unsupported keywords (while, do, ...)
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semicolon,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Amp,
    Pipe,
    Caret,
    Tilde,
    Bang,
    Shl,
    Shr,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    AndAnd,
    OrOr,
    PlusPlus,
    MinusMinus,
    PlusAssign,
    MinusAssign,
};

struct Token {
    Tok tok = Tok::End;
    std::string text;
    int64_t int_value = 0;
    double float_value = 0;
    SourcePos pos;
};

const std::unordered_map<std::string, Tok> kKeywords = {
    {"long", Tok::KwLong},   {"double", Tok::KwDouble}, {"for", Tok::KwFor},
    {"if", Tok::KwIf},       {"else", Tok::KwElse},     {"while", Tok::KwReserved},
    {"do", Tok::KwReserved}, {"break", Tok::KwReserved}, {"continue", Tok::KwReserved},
    {"return", Tok::KwReserved}, {"int", Tok::KwReserved}, {"float", Tok::KwReserved},
    {"void", Tok::KwReserved}, {"char", Tok::KwReserved}, {"switch", Tok::KwReserved},
    {"case", Tok::KwReserved}, {"struct", Tok::KwReserved},
};

class Lexer {
public:
    Lexer(const std::string& src, const std::string& origin) : src_(src), origin_(origin) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.pos = pos_;
        if (at_end()) {
            t.tok = Tok::End;
            return t;
        }
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident();
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number();
        return lex_punct();
    }

    [[noreturn]] void fail(SourcePos pos, const std::string& msg) const {
        throw ParseError(ParseError::Kind::Syntax, pos, origin_, msg);
    }

    const std::string& origin() const { return origin_; }

private:
    bool at_end() const { return i_ >= src_.size(); }
    char peek(size_t ahead = 0) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            pos_.line++;
            pos_.col = 1;
        } else {
            pos_.col++;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                SourcePos start = pos_;
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (at_end()) fail(start, "unterminated block comment");
                    advance();
                }
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_ident() {
        Token t;
        t.pos = pos_;
        std::string s;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            s += advance();
        t.text = s;
        auto it = kKeywords.find(s);
        t.tok = it != kKeywords.end() ? it->second : Tok::Ident;
        return t;
    }

    Token lex_number() {
        Token t;
        t.pos = pos_;
        std::string s;
        bool is_float = false;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
        if (peek() == '.') {
            is_float = true;
            s += advance();
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            is_float = true;
            s += advance();
            if (peek() == '+' || peek() == '-') s += advance();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail(t.pos, "malformed exponent in numeric literal");
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
        }
        t.text = s;
        if (is_float) {
            t.tok = Tok::FloatLit;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t.float_value);
            if (ec != std::errc()) fail(t.pos, "bad float literal '" + s + "'");
        } else {
            t.tok = Tok::IntLit;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t.int_value);
            if (ec != std::errc()) fail(t.pos, "integer literal out of 64-bit range: '" + s + "'");
        }
        return t;
    }

    Token lex_punct() {
        Token t;
        t.pos = pos_;
        char c = advance();
        auto two = [&](char second, Tok yes, Tok no) {
            if (peek() == second) {
                advance();
                t.tok = yes;
            } else {
                t.tok = no;
            }
        };
        switch (c) {
            case '(': t.tok = Tok::LParen; break;
            case ')': t.tok = Tok::RParen; break;
            case '{': t.tok = Tok::LBrace; break;
            case '}': t.tok = Tok::RBrace; break;
            case '[': t.tok = Tok::LBracket; break;
            case ']': t.tok = Tok::RBracket; break;
            case ';': t.tok = Tok::Semicolon; break;
            case '*': t.tok = Tok::Star; break;
            case '/': t.tok = Tok::Slash; break;
            case '^': t.tok = Tok::Caret; break;
            case '~': t.tok = Tok::Tilde; break;
            case '+':
                if (peek() == '+') { advance(); t.tok = Tok::PlusPlus; }
                else if (peek() == '=') { advance(); t.tok = Tok::PlusAssign; }
                else t.tok = Tok::Plus;
                break;
            case '-':
                if (peek() == '-') { advance(); t.tok = Tok::MinusMinus; }
                else if (peek() == '=') { advance(); t.tok = Tok::MinusAssign; }
                else t.tok = Tok::Minus;
                break;
            case '=': two('=', Tok::Eq, Tok::Assign); break;
            case '!': two('=', Tok::Ne, Tok::Bang); break;
            case '&': two('&', Tok::AndAnd, Tok::Amp); break;
            case '|': two('|', Tok::OrOr, Tok::Pipe); break;
            case '<':
                if (peek() == '<') { advance(); t.tok = Tok::Shl; }
                else if (peek() == '=') { advance(); t.tok = Tok::Le; }
                else t.tok = Tok::Lt;
                break;
            case '>':
                if (peek() == '>') { advance(); t.tok = Tok::Shr; }
                else if (peek() == '=') { advance(); t.tok = Tok::Ge; }
                else t.tok = Tok::Gt;
                break;
            default:
                fail(t.pos, std::string("unexpected character '") + c + "'");
        }
        return t;
    }

    const std::string& src_;
    std::string origin_;
    size_t i_ = 0;
    SourcePos pos_;
};

class Parser {
public:
    Parser(const std::string& src, const std::string& origin) : lex_(src, origin) {
        cur_ = lex_.next();
    }

    KernelProgram parse_program() {
        while (cur_.tok != Tok::End) {
            if (cur_.tok == Tok::KwLong || cur_.tok == Tok::KwDouble) {
                parse_declaration();
            } else {
                program_.statements.push_back(parse_statement());
            }
        }
        return std::move(program_);
    }

private:
    [[noreturn]] void error(ParseError::Kind kind, SourcePos pos, const std::string& msg) {
        throw ParseError(kind, pos, lex_.origin(), msg);
    }
    [[noreturn]] void syntax(const std::string& msg) {
        error(ParseError::Kind::Syntax, cur_.pos, msg);
    }

    Token eat() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }

    Token expect(Tok tok, const std::string& what) {
        if (cur_.tok != tok) syntax("expected " + what);
        return eat();
    }

    void reject_reserved() {
        if (cur_.tok == Tok::KwReserved)
            error(ParseError::Kind::UnsupportedConstruct, cur_.pos,
                  "'" + cur_.text + "' is not part of the kernel language");
    }

    int lookup(const Token& name) {
        for (size_t i = 0; i < program_.declarations.size(); ++i)
            if (program_.declarations[i].name == name.text) return static_cast<int>(i);
        error(ParseError::Kind::UndeclaredIdentifier, name.pos,
              "undeclared identifier '" + name.text + "'");
    }

    const Declaration& decl(int symbol) const {
        return program_.declarations[static_cast<size_t>(symbol)];
    }

    void parse_declaration() {
        Token type_tok = eat();
        ScalarType type = type_tok.tok == Tok::KwLong ? ScalarType::Int64 : ScalarType::Float64;
        Token name = expect(Tok::Ident, "identifier after type");
        for (const auto& d : program_.declarations)
            if (d.name == name.text)
                error(ParseError::Kind::DuplicateDeclaration, name.pos,
                      "'" + name.text + "' is already declared");
        Declaration d;
        d.name = name.text;
        d.type = type;
        d.pos = name.pos;
        while (cur_.tok == Tok::LBracket) {
            eat();
            Token size = expect(Tok::IntLit, "constant array size");
            if (size.int_value < 1)
                syntax("array dimension must be a positive constant");
            d.dims.push_back(static_cast<uint64_t>(size.int_value));
            expect(Tok::RBracket, "']'");
        }
        expect(Tok::Semicolon, "';' after declaration");
        program_.declarations.push_back(std::move(d));
    }

    Stmt parse_statement() {
        reject_reserved();
        if (cur_.tok == Tok::KwLong || cur_.tok == Tok::KwDouble)
            syntax("declarations are only allowed at the top level, before use");
        Stmt s;
        s.pos = cur_.pos;
        switch (cur_.tok) {
            case Tok::KwFor:
                s.node = parse_for();
                return s;
            case Tok::KwIf:
                s.node = parse_if();
                return s;
            case Tok::Ident: {
                Token name = cur_;
                Assign a = parse_assignment();
                // function calls are the only thing that puts '(' after an
                // identifier; parse_assignment reports them before we get here
                (void)name;
                expect(Tok::Semicolon, "';' after assignment");
                s.node = std::move(a);
                return s;
            }
            default:
                syntax("expected a statement");
        }
    }

    std::vector<Stmt> parse_body() {
        std::vector<Stmt> body;
        if (cur_.tok == Tok::LBrace) {
            eat();
            while (cur_.tok != Tok::RBrace) {
                if (cur_.tok == Tok::End) syntax("unexpected end of input inside block");
                body.push_back(parse_statement());
            }
            eat();
        } else {
            body.push_back(parse_statement());
        }
        return body;
    }

    Assign parse_assignment() {
        Token name = expect(Tok::Ident, "identifier");
        if (cur_.tok == Tok::LParen)
            error(ParseError::Kind::UnsupportedConstruct, name.pos,
                  "function calls are not part of the kernel language");
        int symbol = lookup(name);
        LValue lv;
        lv.symbol = symbol;
        lv.pos = name.pos;
        while (cur_.tok == Tok::LBracket) {
            eat();
            lv.indices.push_back(parse_expr());
            expect(Tok::RBracket, "']'");
        }
        check_reference_shape(symbol, lv.indices.size(), name.pos);
        expect(Tok::Assign, "'='");
        Assign a;
        a.target = std::move(lv);
        a.value = parse_expr();
        check_index_types(a.target.indices);
        return a;
    }

    void check_reference_shape(int symbol, size_t indices, SourcePos pos) {
        const Declaration& d = decl(symbol);
        if (d.dims.size() != indices)
            error(ParseError::Kind::DimensionMismatch, pos,
                  "'" + d.name + "' has " + std::to_string(d.dims.size()) +
                      " dimension(s) but " + std::to_string(indices) + " index(es) were given");
    }

    void check_index_types(const std::vector<ExprPtr>& indices) {
        for (const auto& e : indices)
            if (e->type != ScalarType::Int64)
                error(ParseError::Kind::TypeError, e->pos, "array index must be an integer");
    }

    ForLoop parse_for() {
        eat();  // for
        expect(Tok::LParen, "'(' after for");
        ForLoop f;
        f.init = parse_assignment();
        if (f.init.target.is_array())
            syntax("for-loop variable must be a scalar");
        f.loop_symbol = f.init.target.symbol;
        expect(Tok::Semicolon, "';' after loop init");
        f.condition = parse_expr();
        if (f.condition->tag != Expr::Tag::Binary || !is_comparison(f.condition->binary_op))
            error(ParseError::Kind::TypeError, f.condition->pos,
                  "for-loop bound must be a comparison");
        if (!references_symbol(*f.condition, f.loop_symbol))
            syntax("for-loop bound must reference the loop variable");
        expect(Tok::Semicolon, "';' after loop bound");
        f.step = parse_step(f.loop_symbol);
        expect(Tok::RParen, "')' after loop step");
        f.body = parse_body();
        return f;
    }

    /// step := v++ | v-- | v += e | v -= e | v = e, desugared to assignment.
    Assign parse_step(int loop_symbol) {
        Token name = expect(Tok::Ident, "loop step");
        int symbol = lookup(name);
        if (symbol != loop_symbol)
            syntax("loop step must assign the loop variable '" + decl(loop_symbol).name + "'");
        const Declaration& d = decl(symbol);
        if (d.is_array()) syntax("for-loop variable must be a scalar");

        auto var_ref = [&]() {
            auto e = std::make_unique<Expr>();
            e->tag = Expr::Tag::ScalarRef;
            e->pos = name.pos;
            e->symbol = symbol;
            e->type = d.type;
            return e;
        };
        auto make_binary = [&](BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
            auto e = std::make_unique<Expr>();
            e->tag = Expr::Tag::Binary;
            e->pos = name.pos;
            e->binary_op = op;
            e->type = (lhs->type == ScalarType::Float64 || rhs->type == ScalarType::Float64)
                          ? ScalarType::Float64
                          : ScalarType::Int64;
            e->lhs = std::move(lhs);
            e->rhs = std::move(rhs);
            return e;
        };
        auto one = [&]() {
            auto e = std::make_unique<Expr>();
            e->tag = Expr::Tag::IntLit;
            e->pos = name.pos;
            e->int_value = 1;
            e->type = ScalarType::Int64;
            return e;
        };

        Assign a;
        a.target.symbol = symbol;
        a.target.pos = name.pos;
        switch (cur_.tok) {
            case Tok::PlusPlus:
                eat();
                a.value = make_binary(BinaryOp::Add, var_ref(), one());
                break;
            case Tok::MinusMinus:
                eat();
                a.value = make_binary(BinaryOp::Sub, var_ref(), one());
                break;
            case Tok::PlusAssign:
                eat();
                a.value = make_binary(BinaryOp::Add, var_ref(), parse_expr());
                break;
            case Tok::MinusAssign:
                eat();
                a.value = make_binary(BinaryOp::Sub, var_ref(), parse_expr());
                break;
            case Tok::Assign:
                eat();
                a.value = parse_expr();
                break;
            default:
                syntax("expected ++, --, +=, -= or = in loop step");
        }
        return a;
    }

    static bool references_symbol(const Expr& e, int symbol) {
        if ((e.tag == Expr::Tag::ScalarRef || e.tag == Expr::Tag::ArrayRef) && e.symbol == symbol)
            return true;
        for (const auto& idx : e.indices)
            if (references_symbol(*idx, symbol)) return true;
        if (e.lhs && references_symbol(*e.lhs, symbol)) return true;
        if (e.rhs && references_symbol(*e.rhs, symbol)) return true;
        return false;
    }

    IfStmt parse_if() {
        eat();  // if
        expect(Tok::LParen, "'(' after if");
        IfStmt s;
        s.condition = parse_expr();
        bool cond_ok = (s.condition->tag == Expr::Tag::Binary &&
                        (is_comparison(s.condition->binary_op) ||
                         is_logic(s.condition->binary_op))) ||
                       (s.condition->tag == Expr::Tag::Unary &&
                        s.condition->unary_op == UnaryOp::LogicNot);
        if (!cond_ok)
            error(ParseError::Kind::TypeError, s.condition->pos,
                  "if condition must be a comparison or logic expression");
        expect(Tok::RParen, "')' after if condition");
        s.then_body = parse_body();
        if (cur_.tok == Tok::KwElse) {
            eat();
            s.else_body = parse_body();
        }
        return s;
    }

    // Precedence climbing, lowest first: || && | ^ & ==/!= rel shift add mul unary.
    ExprPtr parse_expr() { return parse_logic_or(); }

    ExprPtr binary_chain(ExprPtr (Parser::*next)(), std::initializer_list<std::pair<Tok, BinaryOp>> ops) {
        ExprPtr lhs = (this->*next)();
        for (;;) {
            bool matched = false;
            for (auto [tok, op] : ops) {
                if (cur_.tok == tok) {
                    SourcePos pos = cur_.pos;
                    eat();
                    ExprPtr rhs = (this->*next)();
                    lhs = make_typed_binary(op, std::move(lhs), std::move(rhs), pos);
                    matched = true;
                    break;
                }
            }
            if (!matched) return lhs;
        }
    }

    ExprPtr parse_logic_or() {
        return binary_chain(&Parser::parse_logic_and, {{Tok::OrOr, BinaryOp::LogicOr}});
    }
    ExprPtr parse_logic_and() {
        return binary_chain(&Parser::parse_bit_or, {{Tok::AndAnd, BinaryOp::LogicAnd}});
    }
    ExprPtr parse_bit_or() {
        return binary_chain(&Parser::parse_bit_xor, {{Tok::Pipe, BinaryOp::BitOr}});
    }
    ExprPtr parse_bit_xor() {
        return binary_chain(&Parser::parse_bit_and, {{Tok::Caret, BinaryOp::BitXor}});
    }
    ExprPtr parse_bit_and() {
        return binary_chain(&Parser::parse_equality, {{Tok::Amp, BinaryOp::BitAnd}});
    }
    ExprPtr parse_equality() {
        return binary_chain(&Parser::parse_relational,
                            {{Tok::Eq, BinaryOp::Eq}, {Tok::Ne, BinaryOp::Ne}});
    }
    ExprPtr parse_relational() {
        return binary_chain(&Parser::parse_shift, {{Tok::Lt, BinaryOp::Lt},
                                                   {Tok::Le, BinaryOp::Le},
                                                   {Tok::Gt, BinaryOp::Gt},
                                                   {Tok::Ge, BinaryOp::Ge}});
    }
    ExprPtr parse_shift() {
        return binary_chain(&Parser::parse_additive,
                            {{Tok::Shl, BinaryOp::Shl}, {Tok::Shr, BinaryOp::Shr}});
    }
    ExprPtr parse_additive() {
        return binary_chain(&Parser::parse_multiplicative,
                            {{Tok::Plus, BinaryOp::Add}, {Tok::Minus, BinaryOp::Sub}});
    }
    ExprPtr parse_multiplicative() {
        return binary_chain(&Parser::parse_unary,
                            {{Tok::Star, BinaryOp::Mul}, {Tok::Slash, BinaryOp::Div}});
    }

    ExprPtr make_typed_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
        auto e = std::make_unique<Expr>();
        e->tag = Expr::Tag::Binary;
        e->pos = pos;
        e->binary_op = op;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        bool any_float =
            e->lhs->type == ScalarType::Float64 || e->rhs->type == ScalarType::Float64;
        switch (op) {
            case BinaryOp::BitAnd:
            case BinaryOp::BitOr:
            case BinaryOp::BitXor:
            case BinaryOp::Shl:
            case BinaryOp::Shr:
                if (any_float)
                    error(ParseError::Kind::TypeError, pos,
                          "bitwise operators require integer operands");
                e->type = ScalarType::Int64;
                break;
            case BinaryOp::LogicAnd:
            case BinaryOp::LogicOr:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                e->type = ScalarType::Int64;
                break;
            default:
                e->type = any_float ? ScalarType::Float64 : ScalarType::Int64;
                break;
        }
        return e;
    }

    ExprPtr parse_unary() {
        SourcePos pos = cur_.pos;
        if (cur_.tok == Tok::Minus || cur_.tok == Tok::Bang || cur_.tok == Tok::Tilde) {
            Tok op = eat().tok;
            ExprPtr operand = parse_unary();
            auto e = std::make_unique<Expr>();
            e->tag = Expr::Tag::Unary;
            e->pos = pos;
            e->lhs = std::move(operand);
            switch (op) {
                case Tok::Minus:
                    e->unary_op = UnaryOp::Neg;
                    e->type = e->lhs->type;
                    break;
                case Tok::Bang:
                    e->unary_op = UnaryOp::LogicNot;
                    e->type = ScalarType::Int64;
                    break;
                default:
                    e->unary_op = UnaryOp::BitNot;
                    if (e->lhs->type != ScalarType::Int64)
                        error(ParseError::Kind::TypeError, pos,
                              "bitwise not requires an integer operand");
                    e->type = ScalarType::Int64;
                    break;
            }
            return e;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        reject_reserved();
        SourcePos pos = cur_.pos;
        switch (cur_.tok) {
            case Tok::IntLit: {
                Token t = eat();
                auto e = std::make_unique<Expr>();
                e->tag = Expr::Tag::IntLit;
                e->pos = pos;
                e->int_value = t.int_value;
                e->type = ScalarType::Int64;
                return e;
            }
            case Tok::FloatLit: {
                Token t = eat();
                auto e = std::make_unique<Expr>();
                e->tag = Expr::Tag::FloatLit;
                e->pos = pos;
                e->float_value = t.float_value;
                e->type = ScalarType::Float64;
                return e;
            }
            case Tok::LParen: {
                eat();
                ExprPtr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: {
                Token name = eat();
                if (cur_.tok == Tok::LParen)
                    error(ParseError::Kind::UnsupportedConstruct, name.pos,
                          "function calls are not part of the kernel language; spell the "
                          "operation out with kernel statements");
                int symbol = lookup(name);
                auto e = std::make_unique<Expr>();
                e->pos = name.pos;
                e->symbol = symbol;
                while (cur_.tok == Tok::LBracket) {
                    eat();
                    e->indices.push_back(parse_expr());
                    expect(Tok::RBracket, "']'");
                }
                check_reference_shape(symbol, e->indices.size(), name.pos);
                check_index_types(e->indices);
                e->tag = e->indices.empty() ? Expr::Tag::ScalarRef : Expr::Tag::ArrayRef;
                e->type = decl(symbol).type;
                return e;
            }
            default:
                syntax("expected an expression");
        }
    }

    Lexer lex_;
    Token cur_;
    KernelProgram program_;
};

}  // namespace

KernelProgram parse(const std::string& source, const std::string& origin) {
    return Parser(source, origin).parse_program();
}

KernelProgram parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

}  // namespace bops::kernel
