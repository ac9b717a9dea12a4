// Surface declarations to core syntax: name resolution, base inference, and
// the per-declaration checks.

#include "cohcheck/checker.h"

namespace cohcheck {

TmPtr CheckedDecl::generic_term() const {
    if (kind == DeclKind::Def) return body;
    return Tm::coh(ctx, ty, identity_morphism(*ctx), name);
}

DeclPtr SymbolTable::find(const Name& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : decls_[it->second];
}

SymbolTable SymbolTable::with(DeclPtr decl) const {
    SymbolTable out = *this;
    out.index_[decl->name] = out.decls_.size();
    out.decls_.push_back(std::move(decl));
    return out;
}

bool ProgramResult::ok() const {
    for (const auto& r : reports)
        if (!r.ok) return false;
    return true;
}

namespace {

class Resolver {
public:
    Resolver(const SymbolTable& table, Kernel& kernel) : table_(table), kernel_(kernel) {}

    TmPtr tm(const Ctx& ctx, const SrcTm& s) {
        try {
            return tm_unspanned(ctx, s);
        } catch (Error& e) {
            e.set_span_if_unset(s.span);
            throw;
        }
    }

    TyPtr ty(const Ctx& ctx, const SrcTy& s) {
        try {
            if (s.star) return Ty::star();
            TmPtr l = tm(ctx, *s.lhs);
            TmPtr r = tm(ctx, *s.rhs);
            TyPtr base;
            if (s.base) {
                base = ty(ctx, *s.base);
            } else {
                try {
                    base = kernel_.infer_type(ctx, l);
                } catch (Error& e) {
                    e.set_span_if_unset(s.lhs->span);
                    throw;
                }
            }
            TyPtr out = Ty::hom(base, l, r);
            kernel_.check_type(ctx, out);
            return out;
        } catch (Error& e) {
            e.set_span_if_unset(s.span);
            throw;
        }
    }

    Ctx telescope(const std::vector<SrcBinder>& tele) {
        Ctx ctx;
        for (const auto& b : tele) {
            for (const auto& name : b.names) {
                TyPtr t = ty(ctx, b.ty);
                try {
                    ctx = ctx.extend(name, t);
                } catch (Error& e) {
                    e.set_span_if_unset(b.span);
                    throw;
                }
            }
        }
        return ctx;
    }

private:
    TmPtr tm_unspanned(const Ctx& ctx, const SrcTm& s) {
        if (!s.applied) {
            if (ctx.contains(s.head)) return Tm::var(s.head);
            if (auto d = table_.find(s.head)) {
                throw Error(codes::ArityMismatch, "'" + s.head + "' expects " + std::to_string(d->ctx->size()) +
                                                      " arguments, got none");
            }
            throw Error(codes::UnboundVariable, "unbound variable '" + s.head + "'");
        }
        auto d = table_.find(s.head);
        if (!d) {
            if (ctx.contains(s.head))
                throw Error(codes::UnknownName, "'" + s.head + "' is a variable, not a declaration");
            throw Error(codes::UnknownName, "unknown declaration '" + s.head + "'");
        }
        if (s.args.size() != d->ctx->size()) {
            throw Error(codes::ArityMismatch, "'" + s.head + "' expects " + std::to_string(d->ctx->size()) +
                                                  " arguments, got " + std::to_string(s.args.size()));
        }
        CtxMor args;
        args.reserve(s.args.size());
        for (const auto& a : s.args) args.push_back(tm(ctx, a));
        if (d->kind == DeclKind::Coh) return Tm::coh(d->ctx, d->ty, std::move(args), d->name);
        // A def is used like a macro; its arguments are checked where the
        // result is inferred.
        return substitute(d->body, args, *d->ctx);
    }

    const SymbolTable& table_;
    Kernel& kernel_;
};

SourceSpan telescope_span(const SrcDecl& d) {
    if (d.tele.empty()) return d.name_span;
    return {d.tele.front().span.file, d.tele.front().span.start, d.tele.back().span.end};
}

}  // namespace

DeclResult check_declaration(const SymbolTable& table, const SrcDecl& decl, Kernel& kernel) {
    DeclResult out;
    out.report.decl = decl.name;
    out.report.span = decl.span;
    try {
        if (table.contains(decl.name))
            throw Error(codes::DuplicateDecl, "'" + decl.name + "' is already declared", decl.name_span);
        Resolver res(table, kernel);
        Ctx ctx = res.telescope(decl.tele);
        if (decl.kind == DeclKind::Coh) {
            try {
                kernel.check_contractible(ctx);
            } catch (Error& e) {
                e.set_span_if_unset(telescope_span(decl));
                throw;
            }
        }
        TyPtr ty = res.ty(ctx, decl.ty);
        TmPtr body;
        if (decl.kind == DeclKind::Def) {
            body = res.tm(ctx, *decl.body);
            try {
                kernel.check_term(ctx, body, ty);
            } catch (Error& e) {
                e.set_span_if_unset(decl.body->span);
                throw;
            }
        }
        auto checked = std::make_shared<CheckedDecl>();
        checked->kind = decl.kind;
        checked->name = decl.name;
        checked->ctx = std::make_shared<const Ctx>(std::move(ctx));
        checked->ty = ty;
        checked->body = body;
        checked->span = decl.span;
        out.checked = checked;
        out.report.ok = true;
        out.report.dim = dim(ty);
        out.report.depth = depth(ty);
    } catch (const Error& e) {
        Diagnostic d = e.diagnostic();
        if (!e.span()) d.span = decl.span;
        out.report.diagnostics.push_back(std::move(d));
    }
    return out;
}

DeclResult check_declaration(const SymbolTable& table, const SrcDecl& decl) {
    Kernel kernel;
    return check_declaration(table, decl, kernel);
}

ProgramResult check_program(const Program& p, SymbolTable table, const CheckOptions& opts) {
    ProgramResult out;
    Kernel kernel(opts.kernel);
    for (const auto& d : p.decls) {
        DeclResult r = check_declaration(table, d, kernel);
        if (r.checked) table = table.with(r.checked);
        bool failed = !r.report.ok;
        out.reports.push_back(std::move(r.report));
        if (failed && opts.fail_fast) break;
    }
    out.table = std::move(table);
    return out;
}

}  // namespace cohcheck
