#include "cohcheck/parser.h"

#include <cctype>
#include <set>
#include <sstream>

namespace cohcheck {

namespace {

enum class Tok { Ident, Star, Eq, EqBracket, RBracket, LParen, RParen, Comma, Colon, ColonEq, End };

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Star: return "'*'";
    case Tok::Eq: return "'='";
    case Tok::EqBracket: return "'=['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    SourcePos start;
    SourcePos end;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
}

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            SourcePos start = pos();
            if (i_ >= text_.size()) {
                out.push_back({Tok::End, "", start, start});
                return out;
            }
            char c = text_[i_];
            if (ident_start(c)) {
                std::size_t j = i_;
                while (j < text_.size() && ident_char(text_[j])) {
                    if (text_[j] == '-' && j + 1 < text_.size() && text_[j + 1] == '-') break;
                    ++j;
                }
                std::string word(text_.substr(i_, j - i_));
                advance(j - i_);
                out.push_back({Tok::Ident, std::move(word), start, pos()});
                continue;
            }
            Tok kind;
            std::size_t len = 1;
            switch (c) {
            case '*': kind = Tok::Star; break;
            case '=':
                if (peek(1) == '[') {
                    kind = Tok::EqBracket;
                    len = 2;
                } else {
                    kind = Tok::Eq;
                }
                break;
            case ']': kind = Tok::RBracket; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case ':':
                if (peek(1) == '=') {
                    kind = Tok::ColonEq;
                    len = 2;
                } else {
                    kind = Tok::Colon;
                }
                break;
            default: {
                std::ostringstream msg;
                auto uc = static_cast<unsigned char>(c);
                if (std::isprint(uc))
                    msg << "unexpected character '" << c << "'";
                else
                    msg << "unexpected byte 0x" << std::hex << static_cast<int>(uc);
                advance(1);
                throw ParseError(codes::ParseError, msg.str(), {file_, start, pos()});
            }
            }
            std::string tok_text(text_.substr(i_, len));
            advance(len);
            out.push_back({kind, std::move(tok_text), start, pos()});
        }
    }

private:
    char peek(std::size_t k) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

    SourcePos pos() const { return {line_, col_}; }

    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n && i_ < text_.size(); ++k, ++i_) {
            if (text_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_trivia() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else if (c == '-' && peek(1) == '-') {
                while (i_ < text_.size() && text_[i_] != '\n') advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    const std::string& file_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const std::string& file) : toks_(std::move(toks)), file_(file) {}

    Program program() {
        Program p;
        std::set<std::string> seen;
        while (!at(Tok::End)) {
            auto d = decl();
            if (!seen.insert(d.name).second)
                throw ParseError(codes::ParseDuplicateDecl, "duplicate declaration '" + d.name + "'", d.name_span);
            p.decls.push_back(std::move(d));
        }
        return p;
    }

private:
    const Token& cur() const { return toks_[k_]; }
    bool at(Tok t) const { return cur().kind == t; }
    SourceSpan span_from(SourcePos start) const {
        SourcePos end = k_ > 0 ? toks_[k_ - 1].end : start;
        return {file_, start, end};
    }

    [[noreturn]] void fail(std::vector<Tok> expected) const {
        std::vector<std::string> names;
        std::ostringstream msg;
        msg << "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            names.emplace_back(describe(expected[i]));
            msg << (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ") << names.back();
        }
        msg << " but found ";
        if (at(Tok::End))
            msg << "end of input";
        else
            msg << "'" << cur().text << "'";
        throw ParseError(codes::ParseError, msg.str(), {file_, cur().start, cur().end}, std::move(names));
    }

    Token expect(Tok t) {
        if (!at(t)) fail({t});
        return toks_[k_++];
    }

    Token ident() {
        auto t = expect(Tok::Ident);
        if (is_reserved(t.text))
            throw ParseError(codes::ParseError, "'" + t.text + "' is a reserved word", {file_, t.start, t.end},
                             {describe(Tok::Ident)});
        return t;
    }

    SrcDecl decl() {
        SrcDecl d;
        SourcePos start = cur().start;
        if (at(Tok::Ident) && cur().text == "coh") {
            d.kind = DeclKind::Coh;
        } else if (at(Tok::Ident) && cur().text == "def") {
            d.kind = DeclKind::Def;
        } else {
            std::vector<std::string> exp{"'coh'", "'def'"};
            std::string found = at(Tok::End) ? "end of input" : "'" + cur().text + "'";
            throw ParseError(codes::ParseError, "expected 'coh' or 'def' but found " + found,
                             {file_, cur().start, cur().end}, exp);
        }
        ++k_;
        auto name = ident();
        d.name = name.text;
        d.name_span = {file_, name.start, name.end};
        while (at(Tok::LParen)) d.tele.push_back(binder());
        if (!at(Tok::Colon)) fail({Tok::LParen, Tok::Colon});
        ++k_;
        d.ty = ty(0);
        if (d.kind == DeclKind::Def) {
            expect(Tok::ColonEq);
            d.body = tm(0);
        }
        d.span = span_from(start);
        return d;
    }

    SrcBinder binder() {
        SrcBinder b;
        SourcePos start = expect(Tok::LParen).start;
        b.names.push_back(ident().text);
        while (at(Tok::Ident)) b.names.push_back(ident().text);
        if (!at(Tok::Colon)) fail({Tok::Ident, Tok::Colon});
        ++k_;
        b.ty = ty(0);
        expect(Tok::RParen);
        b.span = span_from(start);
        return b;
    }

    void guard(std::size_t depth) const {
        if (depth > max_nesting)
            throw ParseError(codes::ParseError, "nesting deeper than " + std::to_string(max_nesting) + " levels",
                             {file_, cur().start, cur().end});
    }

    SrcTy ty(std::size_t depth) {
        guard(depth);
        SrcTy t;
        SourcePos start = cur().start;
        if (at(Tok::Star)) {
            ++k_;
            t.star = true;
            t.span = span_from(start);
            return t;
        }
        if (!at(Tok::Ident)) fail({Tok::Star, Tok::Ident});
        t.star = false;
        t.lhs = tm(depth + 1);
        if (at(Tok::Eq)) {
            ++k_;
        } else if (at(Tok::EqBracket)) {
            ++k_;
            t.base = std::make_shared<const SrcTy>(ty(depth + 1));
            expect(Tok::RBracket);
        } else {
            fail({Tok::Eq, Tok::EqBracket});
        }
        t.rhs = tm(depth + 1);
        t.span = span_from(start);
        return t;
    }

    SrcTm tm(std::size_t depth) {
        guard(depth);
        SrcTm t;
        auto head = ident();
        t.head = head.text;
        if (at(Tok::LParen)) {
            ++k_;
            t.applied = true;
            t.args.push_back(tm(depth + 1));
            while (at(Tok::Comma)) {
                ++k_;
                t.args.push_back(tm(depth + 1));
            }
            if (!at(Tok::RParen)) fail({Tok::Comma, Tok::RParen});
            ++k_;
        }
        t.span = span_from(head.start);
        return t;
    }

    std::vector<Token> toks_;
    const std::string& file_;
    std::size_t k_ = 0;
};

void print_tm_to(std::ostream& os, const SrcTm& t) {
    os << t.head;
    if (!t.applied) return;
    os << '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ", ";
        print_tm_to(os, t.args[i]);
    }
    os << ')';
}

void print_ty_to(std::ostream& os, const SrcTy& t) {
    if (t.star) {
        os << '*';
        return;
    }
    print_tm_to(os, *t.lhs);
    if (t.base) {
        os << " =[";
        print_ty_to(os, *t.base);
        os << "] ";
    } else {
        os << " = ";
    }
    print_tm_to(os, *t.rhs);
}

}  // namespace

bool is_reserved(std::string_view word) { return word == "coh" || word == "def"; }

bool is_identifier(std::string_view word) {
    if (word.empty() || !ident_start(word[0]) || is_reserved(word)) return false;
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (!ident_char(word[i])) return false;
        if (word[i] == '-' && i + 1 < word.size() && word[i + 1] == '-') return false;
    }
    return true;
}

Program parse_program(std::string_view text, const std::string& file) {
    Lexer lexer(text, file);
    Parser parser(lexer.run(), file);
    return parser.program();
}

std::string print_tm(const SrcTm& t) {
    std::ostringstream os;
    print_tm_to(os, t);
    return os.str();
}

std::string print_ty(const SrcTy& t) {
    std::ostringstream os;
    print_ty_to(os, t);
    return os.str();
}

std::string print_decl(const SrcDecl& d) {
    std::ostringstream os;
    os << (d.kind == DeclKind::Coh ? "coh " : "def ") << d.name;
    for (const auto& b : d.tele) {
        os << " (";
        for (const auto& n : b.names) os << n << ' ';
        os << ": ";
        print_ty_to(os, b.ty);
        os << ')';
    }
    os << " : ";
    print_ty_to(os, d.ty);
    if (d.body) {
        os << " := ";
        print_tm_to(os, *d.body);
    }
    return os.str();
}

std::string print_program(const Program& p) {
    std::string out;
    for (const auto& d : p.decls) {
        out += print_decl(d);
        out += '\n';
    }
    return out;
}

bool same_ast(const SrcTm& a, const SrcTm& b) {
    if (a.head != b.head || a.applied != b.applied || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_ast(a.args[i], b.args[i])) return false;
    return true;
}

bool same_ast(const SrcTy& a, const SrcTy& b) {
    if (a.star != b.star) return false;
    if (a.star) return true;
    if (bool(a.base) != bool(b.base)) return false;
    if (a.base && !same_ast(*a.base, *b.base)) return false;
    return same_ast(*a.lhs, *b.lhs) && same_ast(*a.rhs, *b.rhs);
}

bool same_ast(const SrcDecl& a, const SrcDecl& b) {
    if (a.kind != b.kind || a.name != b.name || a.tele.size() != b.tele.size()) return false;
    for (std::size_t i = 0; i < a.tele.size(); ++i)
        if (a.tele[i].names != b.tele[i].names || !same_ast(a.tele[i].ty, b.tele[i].ty)) return false;
    if (!same_ast(a.ty, b.ty) || bool(a.body) != bool(b.body)) return false;
    return !a.body || same_ast(*a.body, *b.body);
}

bool same_ast(const Program& a, const Program& b) {
    if (a.decls.size() != b.decls.size()) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i)
        if (!same_ast(a.decls[i], b.decls[i])) return false;
    return true;
}

}  // namespace cohcheck
