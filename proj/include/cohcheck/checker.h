#pragma once

// The typing judgments of the coherence theory and checking of surface
// declarations against a symbol table.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohcheck/diagnostics.h"
#include "cohcheck/parser.h"
#include "cohcheck/syntax.h"

namespace cohcheck {

enum class JudgmentKind { CtxOk, MorOk, TypeOk, TermOk, Contr };

const char* to_string(JudgmentKind k);

struct KernelOptions {
    // Re-check Γ ⊢ T type after every successful inference of Γ ⊢ t : T, and
    // Θ ctx after every morphism check. Slow; meant for tests.
    bool assert_compat = false;
};

/// Judgments throw Error carrying one of the E00x codes. A Kernel remembers
/// coherence subscripts it has already verified, so reusing one instance
/// across a declaration (or a whole program) avoids rechecking shared
/// subscripts.
class Kernel {
public:
    explicit Kernel(KernelOptions opts = {}) : opts_(opts) {}

    void check_context(const Ctx& ctx);
    void check_type(const Ctx& ctx, const TyPtr& t);
    TyPtr infer_type(const Ctx& ctx, const TmPtr& t);
    void check_term(const Ctx& ctx, const TmPtr& t, const TyPtr& expected);
    void check_ctx_morphism(const Ctx& src, const CtxMor& gamma, const Ctx& dst);
    void check_contractible(const Ctx& ctx);

    /// Number of judgments of each kind derived so far.
    const std::map<JudgmentKind, std::size_t>& counts() const { return counts_; }

private:
    void verify_subscript(const Tm& coh);
    void check_contractible_shape(const Ctx& ctx);

    KernelOptions opts_;
    std::set<std::pair<const Ctx*, const Ty*>> verified_;
    std::vector<std::pair<CtxPtr, TyPtr>> keep_alive_;
    std::map<JudgmentKind, std::size_t> counts_;
};

// One-shot wrappers around a fresh Kernel.
void check_context(const Ctx& ctx);
void check_type(const Ctx& ctx, const TyPtr& t);
TyPtr infer_type(const Ctx& ctx, const TmPtr& t);
void check_term(const Ctx& ctx, const TmPtr& t, const TyPtr& expected);
void check_ctx_morphism(const Ctx& src, const CtxMor& gamma, const Ctx& dst);
void check_contractible(const Ctx& ctx);

// ---------------------------------------------------------------------------
// Declarations

struct CheckedDecl {
    DeclKind kind = DeclKind::Coh;
    Name name;
    CtxPtr ctx;
    TyPtr ty;
    TmPtr body;  // def only
    SourceSpan span;

    /// For a coh: the term coh_{ctx.ty}(ctx variables), labelled with the name.
    /// For a def: the body.
    TmPtr generic_term() const;
};

using DeclPtr = std::shared_ptr<const CheckedDecl>;

/// Checked declarations in insertion order. Never mutated in place: `with`
/// returns an extended copy.
class SymbolTable {
public:
    const std::vector<DeclPtr>& decls() const { return decls_; }
    DeclPtr find(const Name& name) const;
    bool contains(const Name& name) const { return index_.count(name) > 0; }
    SymbolTable with(DeclPtr decl) const;

private:
    std::vector<DeclPtr> decls_;
    std::map<Name, std::size_t> index_;
};

struct CheckReport {
    std::string decl;
    bool ok = false;
    int dim = -1;    // of the return type; -1 on error
    int depth = -1;  // of the return type; -1 on error
    std::vector<Diagnostic> diagnostics;
    SourceSpan span;
};

struct DeclResult {
    CheckReport report;
    DeclPtr checked;  // null on error
};

DeclResult check_declaration(const SymbolTable& table, const SrcDecl& decl, Kernel& kernel);
DeclResult check_declaration(const SymbolTable& table, const SrcDecl& decl);

struct CheckOptions {
    bool fail_fast = false;
    KernelOptions kernel;
};

struct ProgramResult {
    std::vector<CheckReport> reports;
    SymbolTable table;

    bool ok() const;
};

/// Checks declarations in order, extending `table` with each success.
ProgramResult check_program(const Program& p, SymbolTable table = {}, const CheckOptions& opts = {});

}  // namespace cohcheck
