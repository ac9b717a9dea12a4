#pragma once

// Surface syntax of .coh files.
//
//   program  := decl*
//   decl     := "coh" IDENT tele ":" ty
//             | "def" IDENT tele ":" ty ":=" tm
//   tele     := ("(" IDENT+ ":" ty ")")*
//   ty       := "*" | tm "=" tm | tm "=[" ty "]" tm
//   tm       := IDENT | IDENT "(" tm ("," tm)* ")"
//
// Comments run from "--" to end of line.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohcheck/diagnostics.h"

namespace cohcheck {

struct SrcTm {
    std::string head;
    bool applied = false;  // head(args...) as opposed to a bare identifier
    std::vector<SrcTm> args;
    SourceSpan span;
};

struct SrcTy {
    bool star = true;
    std::shared_ptr<const SrcTy> base;  // set only for the explicit "=[T]" form
    std::optional<SrcTm> lhs;
    std::optional<SrcTm> rhs;
    SourceSpan span;
};

struct SrcBinder {
    std::vector<std::string> names;
    SrcTy ty;
    SourceSpan span;
};

enum class DeclKind { Coh, Def };

struct SrcDecl {
    DeclKind kind = DeclKind::Coh;
    std::string name;
    std::vector<SrcBinder> tele;
    SrcTy ty;
    std::optional<SrcTm> body;  // def only
    SourceSpan span;
    SourceSpan name_span;
};

struct Program {
    std::vector<SrcDecl> decls;
};

// Equality modulo source spans.
bool same_ast(const SrcTm& a, const SrcTm& b);
bool same_ast(const SrcTy& a, const SrcTy& b);
bool same_ast(const SrcDecl& a, const SrcDecl& b);
bool same_ast(const Program& a, const Program& b);

inline constexpr std::size_t max_nesting = 256;

/// Throws ParseError (code P001, or P002 for a duplicate declaration name).
Program parse_program(std::string_view text, const std::string& file = {});

std::string print_program(const Program& p);
std::string print_decl(const SrcDecl& d);
std::string print_ty(const SrcTy& t);
std::string print_tm(const SrcTm& t);

bool is_reserved(std::string_view word);
bool is_identifier(std::string_view word);

}  // namespace cohcheck
