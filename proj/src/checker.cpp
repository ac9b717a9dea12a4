#include "cohcheck/checker.h"

#include <stdexcept>

namespace cohcheck {

const char* to_string(JudgmentKind k) {
    switch (k) {
    case JudgmentKind::CtxOk: return "ctx";
    case JudgmentKind::MorOk: return "mor";
    case JudgmentKind::TypeOk: return "type";
    case JudgmentKind::TermOk: return "term";
    case JudgmentKind::Contr: return "contr";
    }
    return "?";
}

namespace {

[[noreturn]] void rethrow_with_prefix(const Error& e, const std::string& prefix) {
    throw Error(e.code(), prefix + e.what(), e.span());
}

std::string suffix_string(const Ctx& ctx, std::size_t from) {
    std::vector<Entry> rest(ctx.entries().begin() + static_cast<std::ptrdiff_t>(from), ctx.entries().end());
    return to_string(Ctx(std::move(rest)));
}

}  // namespace

void Kernel::check_context(const Ctx& ctx) {
    ++counts_[JudgmentKind::CtxOk];
    std::vector<Entry> prefix;
    prefix.reserve(ctx.size());
    for (const auto& e : ctx.entries()) {
        Ctx before(prefix);
        if (before.contains(e.name))
            throw Error(codes::DuplicateName, "variable '" + e.name + "' is bound twice");
        try {
            check_type(before, e.ty);
        } catch (const Error& err) {
            rethrow_with_prefix(err, "in the type of '" + e.name + "': ");
        }
        prefix.push_back(e);
    }
}

void Kernel::check_type(const Ctx& ctx, const TyPtr& t) {
    ++counts_[JudgmentKind::TypeOk];
    if (t->is_star()) return;
    check_type(ctx, t->base());
    TyPtr l = infer_type(ctx, t->lhs());
    TyPtr r = infer_type(ctx, t->rhs());
    if (!syntactic_eq(l, t->base()) || !syntactic_eq(r, t->base())) {
        throw Error(codes::EndpointTypeMismatch,
                    "endpoints of " + to_string(t) + " do not live in " + to_string(t->base()) + ": " +
                        to_string(t->lhs()) + " : " + to_string(l) + ", " + to_string(t->rhs()) + " : " +
                        to_string(r));
    }
}

TyPtr Kernel::infer_type(const Ctx& ctx, const TmPtr& t) {
    ++counts_[JudgmentKind::TermOk];
    TyPtr result;
    if (t->is_var()) {
        auto i = ctx.index_of(t->name());
        if (!i) throw Error(codes::UnboundVariable, "unbound variable '" + t->name() + "'");
        result = ctx[*i].ty;
    } else {
        verify_subscript(*t);
        check_ctx_morphism(ctx, t->args(), *t->ctx());
        result = substitute(t->ty(), t->args(), *t->ctx());
    }
    if (opts_.assert_compat) {
        try {
            check_type(ctx, result);
        } catch (const Error& e) {
            throw std::logic_error("compatibility violated: type of " + to_string(t) + " is ill-formed: " +
                                   e.what());
        }
    }
    return result;
}

void Kernel::check_term(const Ctx& ctx, const TmPtr& t, const TyPtr& expected) {
    TyPtr got = infer_type(ctx, t);
    if (!syntactic_eq(got, expected)) {
        throw Error(codes::TypeMismatch,
                    to_string(t) + " has type " + to_string(got) + " but " + to_string(expected) + " was expected");
    }
}

void Kernel::check_ctx_morphism(const Ctx& src, const CtxMor& gamma, const Ctx& dst) {
    ++counts_[JudgmentKind::MorOk];
    if (gamma.size() != dst.size()) {
        throw Error(codes::ArityMismatch, "expected " + std::to_string(dst.size()) + " argument" +
                                              (dst.size() == 1 ? "" : "s") + ", got " + std::to_string(gamma.size()));
    }
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        try {
            check_term(src, gamma[i], substitute(dst[i].ty, gamma, dst));
        } catch (const Error& e) {
            rethrow_with_prefix(e, "argument " + std::to_string(i + 1) + " (for '" + dst[i].name + "'): ");
        }
    }
    if (opts_.assert_compat) {
        try {
            check_context(dst);
        } catch (const Error& e) {
            throw std::logic_error(std::string("compatibility violated: target context is ill-formed: ") + e.what());
        }
    }
}

void Kernel::check_contractible(const Ctx& ctx) {
    check_context(ctx);
    check_contractible_shape(ctx);
}

// Peels (y : T) (z : u = y) blocks from the right until a single point is left.
void Kernel::check_contractible_shape(const Ctx& ctx) {
    ++counts_[JudgmentKind::Contr];
    std::size_t n = ctx.size();
    if (n == 0) throw Error(codes::NotContractible, "the empty context is not contractible");
    while (n > 1) {
        if (n == 2) {
            throw Error(codes::NotContractible,
                        "not contractible: " + suffix_string(ctx, 0) + " does not start from a single point");
        }
        const Entry& y = ctx[n - 2];
        const Entry& z = ctx[n - 1];
        auto fail = [&](const std::string& why) {
            throw Error(codes::NotContractible, "not contractible at " + suffix_string(ctx, n - 2) + ": " + why);
        };
        if (!z.ty->is_hom()) fail("'" + z.name + "' is not a path");
        if (!z.ty->rhs()->is_var() || z.ty->rhs()->name() != y.name)
            fail("the target of '" + z.name + "' must be '" + y.name + "'");
        if (!syntactic_eq(z.ty->base(), y.ty)) fail("'" + z.name + "' must be a path in the type of '" + y.name + "'");
        if (free_vars(z.ty->lhs()).count(y.name)) fail("the source of '" + z.name + "' mentions '" + y.name + "'");
        Ctx prefix = ctx.prefix(n - 2);
        check_term(prefix, z.ty->lhs(), y.ty);
        n -= 2;
    }
    if (!ctx[0].ty->is_star())
        throw Error(codes::NotContractible, "not contractible: the first entry '" + ctx[0].name + "' must have type *");
}

void Kernel::verify_subscript(const Tm& coh) {
    auto key = std::make_pair(coh.ctx().get(), coh.ty().get());
    if (verified_.count(key)) return;
    try {
        check_contractible(*coh.ctx());
        check_type(*coh.ctx(), coh.ty());
    } catch (const Error& e) {
        std::string what = coh.label().empty() ? "in a coherence subscript: " : "in the subscript of '" + coh.label() + "': ";
        rethrow_with_prefix(e, what);
    }
    verified_.insert(key);
    keep_alive_.emplace_back(coh.ctx(), coh.ty());
}

void check_context(const Ctx& ctx) { Kernel().check_context(ctx); }
void check_type(const Ctx& ctx, const TyPtr& t) { Kernel().check_type(ctx, t); }
TyPtr infer_type(const Ctx& ctx, const TmPtr& t) { return Kernel().infer_type(ctx, t); }
void check_term(const Ctx& ctx, const TmPtr& t, const TyPtr& expected) { Kernel().check_term(ctx, t, expected); }
void check_ctx_morphism(const Ctx& src, const CtxMor& gamma, const Ctx& dst) {
    Kernel().check_ctx_morphism(src, gamma, dst);
}
void check_contractible(const Ctx& ctx) { Kernel().check_contractible(ctx); }

}  // namespace cohcheck
