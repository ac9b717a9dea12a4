#include "cohcheck/syntax.h"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace cohcheck {

std::string to_string(const SourceSpan& span) {
    std::ostringstream os;
    os << (span.file.empty() ? "<input>" : span.file) << ':' << span.start.line << ':' << span.start.column;
    return os.str();
}

// ---------------------------------------------------------------------------
// Ctx

std::optional<std::size_t> Ctx::index_of(const Name& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].name == name) return i;
    return std::nullopt;
}

Ctx Ctx::extend(Name name, TyPtr ty) const {
    if (contains(name)) throw Error(codes::DuplicateName, "duplicate name '" + name + "' in context");
    auto entries = entries_;
    entries.push_back({std::move(name), std::move(ty)});
    return Ctx(std::move(entries));
}

Ctx Ctx::prefix(std::size_t n) const {
    return Ctx(std::vector<Entry>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

// ---------------------------------------------------------------------------
// Constructors

TyPtr Ty::star() {
    static const TyPtr s = std::make_shared<const Ty>();
    return s;
}

TyPtr Ty::hom(TyPtr base, TmPtr lhs, TmPtr rhs) {
    auto t = std::make_shared<Ty>();
    t->base_ = std::move(base);
    t->lhs_ = std::move(lhs);
    t->rhs_ = std::move(rhs);
    return t;
}

TmPtr Tm::var(Name name) {
    auto t = std::make_shared<Tm>();
    t->name_ = std::move(name);
    return t;
}

TmPtr Tm::coh(CtxPtr ctx, TyPtr ty, CtxMor args, Name label) {
    auto t = std::make_shared<Tm>();
    t->ctx_ = std::move(ctx);
    t->ty_ = std::move(ty);
    t->args_ = std::move(args);
    t->label_ = std::move(label);
    return t;
}

TmPtr Tm::with_args(CtxMor args) const { return coh(ctx_, ty_, std::move(args), label_); }

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_fv(const TmPtr& t, NameSet& out);

void collect_fv(const TyPtr& t, NameSet& out) {
    if (t->is_star()) return;
    collect_fv(t->base(), out);
    collect_fv(t->lhs(), out);
    collect_fv(t->rhs(), out);
}

void collect_fv(const TmPtr& t, NameSet& out) {
    if (t->is_var()) {
        out.insert(t->name());
        return;
    }
    for (const auto& a : t->args()) collect_fv(a, out);
}

}  // namespace

NameSet free_vars(const TmPtr& t) {
    NameSet s;
    collect_fv(t, s);
    return s;
}

NameSet free_vars(const TyPtr& t) {
    NameSet s;
    collect_fv(t, s);
    return s;
}

NameSet free_vars(const CtxMor& m) {
    NameSet s;
    for (const auto& t : m) collect_fv(t, s);
    return s;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

void check_arity(const CtxMor& gamma, const Ctx& ctx) {
    if (gamma.size() != ctx.size())
        throw Error(codes::ArityMismatch, "substitution of " + std::to_string(gamma.size()) +
                                              " terms for a context of length " + std::to_string(ctx.size()));
}

TmPtr subst_tm(const TmPtr& t, const CtxMor& gamma, const Ctx& ctx);

TyPtr subst_ty(const TyPtr& t, const CtxMor& gamma, const Ctx& ctx) {
    if (t->is_star()) return t;
    return Ty::hom(subst_ty(t->base(), gamma, ctx), subst_tm(t->lhs(), gamma, ctx), subst_tm(t->rhs(), gamma, ctx));
}

TmPtr subst_tm(const TmPtr& t, const CtxMor& gamma, const Ctx& ctx) {
    if (t->is_var()) {
        auto i = ctx.index_of(t->name());
        if (!i) throw Error(codes::UnboundVariable, "unbound variable '" + t->name() + "'");
        return gamma[*i];
    }
    CtxMor args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(subst_tm(a, gamma, ctx));
    return t->with_args(std::move(args));
}

}  // namespace

TmPtr substitute(const TmPtr& t, const CtxMor& gamma, const Ctx& ctx) {
    check_arity(gamma, ctx);
    return subst_tm(t, gamma, ctx);
}

TyPtr substitute(const TyPtr& t, const CtxMor& gamma, const Ctx& ctx) {
    check_arity(gamma, ctx);
    return subst_ty(t, gamma, ctx);
}

CtxMor substitute(const CtxMor& m, const CtxMor& gamma, const Ctx& ctx) {
    check_arity(gamma, ctx);
    CtxMor out;
    out.reserve(m.size());
    for (const auto& t : m) out.push_back(subst_tm(t, gamma, ctx));
    return out;
}

TmPtr project(const CtxMor& gamma, const Ctx& ctx, const Name& x) {
    check_arity(gamma, ctx);
    auto i = ctx.index_of(x);
    if (!i) throw Error(codes::UnboundVariable, "unbound variable '" + x + "'");
    return gamma[*i];
}

void collect_coh_subterms(const TyPtr& t, std::vector<TmPtr>& out) {
    if (t->is_star()) return;
    collect_coh_subterms(t->base(), out);
    collect_coh_subterms(t->lhs(), out);
    collect_coh_subterms(t->rhs(), out);
}

void collect_coh_subterms(const TmPtr& t, std::vector<TmPtr>& out) {
    if (t->is_var()) return;
    for (const auto& a : t->args()) collect_coh_subterms(a, out);
    for (const auto& seen : out)
        if (seen == t) return;
    out.push_back(t);
}

std::vector<TmPtr> coh_subterms(const TmPtr& t) {
    std::vector<TmPtr> out;
    collect_coh_subterms(t, out);
    return out;
}

std::vector<TmPtr> coh_subterms(const TyPtr& t) {
    std::vector<TmPtr> out;
    collect_coh_subterms(t, out);
    return out;
}

CtxMor identity_morphism(const Ctx& ctx) {
    CtxMor m;
    m.reserve(ctx.size());
    for (const auto& e : ctx.entries()) m.push_back(Tm::var(e.name));
    return m;
}

// ---------------------------------------------------------------------------
// Depth and dimension

int depth(const TyPtr& t) {
    if (t->is_star()) return 0;
    return std::max({depth(t->base()), depth(t->lhs()), depth(t->rhs())});
}

int depth(const CtxMor& m) {
    int d = 0;
    for (const auto& t : m) d = std::max(d, depth(t));
    return d;
}

int depth(const Ctx& ctx) {
    int d = 0;
    for (const auto& e : ctx.entries()) d = std::max(d, depth(e.ty));
    return d;
}

int depth(const TmPtr& t) {
    if (t->is_var()) return 0;
    return std::max({depth(t->args()), depth(t->ty()) + 1, depth(*t->ctx()) + 1});
}

int dim(const TyPtr& t) { return t->is_star() ? 0 : dim(t->base()) + 1; }

// ---------------------------------------------------------------------------
// Alpha canonicalization

namespace {

using Renaming = std::unordered_map<Name, Name>;

struct Canonicalizer {
    std::unordered_map<const Ctx*, std::pair<CtxPtr, TyPtr>> memo;

    TmPtr tm(const TmPtr& t, const Renaming& r) {
        if (t->is_var()) {
            auto it = r.find(t->name());
            return it == r.end() ? t : Tm::var(it->second);
        }
        auto [ctx, ty] = subscript(t->ctx(), t->ty());
        CtxMor args;
        for (const auto& a : t->args()) args.push_back(tm(a, r));
        return Tm::coh(std::move(ctx), std::move(ty), std::move(args), t->label());
    }

    TyPtr ty(const TyPtr& t, const Renaming& r) {
        if (t->is_star()) return t;
        return Ty::hom(ty(t->base(), r), tm(t->lhs(), r), tm(t->rhs(), r));
    }

    std::pair<CtxPtr, TyPtr> subscript(const CtxPtr& ctx, const TyPtr& t) {
        // The memo key is the context node; the same context may carry
        // different return types, so only the context half is reused.
        Renaming r;
        std::vector<Entry> entries;
        CtxPtr canon_ctx;
        if (auto it = memo.find(ctx.get()); it != memo.end()) {
            canon_ctx = it->second.first;
            for (std::size_t i = 0; i < ctx->size(); ++i) r[(*ctx)[i].name] = "v" + std::to_string(i);
        } else {
            for (std::size_t i = 0; i < ctx->size(); ++i) {
                const auto& e = (*ctx)[i];
                auto canon_ty = ty(e.ty, r);
                r[e.name] = "v" + std::to_string(i);
                entries.push_back({r[e.name], canon_ty});
            }
            canon_ctx = std::make_shared<const Ctx>(std::move(entries));
            memo.emplace(ctx.get(), std::make_pair(canon_ctx, nullptr));
        }
        return {canon_ctx, ty(t, r)};
    }
};

}  // namespace

TmPtr alpha_canonicalize(const TmPtr& t) { return Canonicalizer{}.tm(t, {}); }
TyPtr alpha_canonicalize(const TyPtr& t) { return Canonicalizer{}.ty(t, {}); }

CtxMor alpha_canonicalize(const CtxMor& m) {
    Canonicalizer c;
    CtxMor out;
    for (const auto& t : m) out.push_back(c.tm(t, {}));
    return out;
}

Ctx alpha_canonicalize(const Ctx& ctx) {
    // Context binders are not subscript binders: only nested subscripts move.
    Canonicalizer c;
    std::vector<Entry> entries;
    for (const auto& e : ctx.entries()) entries.push_back({e.name, c.ty(e.ty, {})});
    return Ctx(std::move(entries));
}

// ---------------------------------------------------------------------------
// Structural identity

bool structurally_equal(const TmPtr& a, const TmPtr& b) {
    if (a == b) return true;
    if (a->is_var() != b->is_var()) return false;
    if (a->is_var()) return a->name() == b->name();
    return structurally_equal(*a->ctx(), *b->ctx()) && structurally_equal(a->ty(), b->ty()) &&
           structurally_equal(a->args(), b->args());
}

bool structurally_equal(const TyPtr& a, const TyPtr& b) {
    if (a == b) return true;
    if (a->is_star() || b->is_star()) return a->is_star() && b->is_star();
    return structurally_equal(a->base(), b->base()) && structurally_equal(a->lhs(), b->lhs()) &&
           structurally_equal(a->rhs(), b->rhs());
}

bool structurally_equal(const CtxMor& a, const CtxMor& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(a[i], b[i])) return false;
    return true;
}

bool structurally_equal(const Ctx& a, const Ctx& b) {
    if (&a == &b) return true;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || !structurally_equal(a[i].ty, b[i].ty)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Equality up to subscript renaming. Each subscript opens a fresh scope in
// which names are compared by binder position.

namespace {

struct Scope {
    std::unordered_map<Name, std::size_t> a;
    std::unordered_map<Name, std::size_t> b;
};

bool eq_tm(const TmPtr& x, const TmPtr& y, const Scope& s);

bool eq_ty(const TyPtr& x, const TyPtr& y, const Scope& s) {
    if (x == y && s.a.empty() && s.b.empty()) return true;
    if (x->is_star() || y->is_star()) return x->is_star() && y->is_star();
    return eq_ty(x->base(), y->base(), s) && eq_tm(x->lhs(), y->lhs(), s) && eq_tm(x->rhs(), y->rhs(), s);
}

bool eq_subscript(const Ctx& ca, const TyPtr& ta, const Ctx& cb, const TyPtr& tb) {
    if (ca.size() != cb.size()) return false;
    Scope inner;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!eq_ty(ca[i].ty, cb[i].ty, inner)) return false;
        inner.a[ca[i].name] = i;
        inner.b[cb[i].name] = i;
    }
    return eq_ty(ta, tb, inner);
}

bool eq_tm(const TmPtr& x, const TmPtr& y, const Scope& s) {
    if (x == y && s.a.empty() && s.b.empty()) return true;
    if (x->is_var() != y->is_var()) return false;
    if (x->is_var()) {
        auto ia = s.a.find(x->name());
        auto ib = s.b.find(y->name());
        if (ia != s.a.end() || ib != s.b.end())
            return ia != s.a.end() && ib != s.b.end() && ia->second == ib->second;
        return x->name() == y->name();
    }
    if (x->args().size() != y->args().size()) return false;
    if (!(x->ctx() == y->ctx() && x->ty() == y->ty()) &&
        !eq_subscript(*x->ctx(), x->ty(), *y->ctx(), y->ty()))
        return false;
    for (std::size_t i = 0; i < x->args().size(); ++i)
        if (!eq_tm(x->args()[i], y->args()[i], s)) return false;
    return true;
}

}  // namespace

bool syntactic_eq(const TmPtr& a, const TmPtr& b) { return eq_tm(a, b, {}); }
bool syntactic_eq(const TyPtr& a, const TyPtr& b) { return eq_ty(a, b, {}); }

bool syntactic_eq(const CtxMor& a, const CtxMor& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!syntactic_eq(a[i], b[i])) return false;
    return true;
}

bool syntactic_eq(const Ctx& a, const Ctx& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || !syntactic_eq(a[i].ty, b[i].ty)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_tm(std::ostream& os, const TmPtr& t, BaseDisplay mode);

void print_ty(std::ostream& os, const TyPtr& t, BaseDisplay mode) {
    if (t->is_star()) {
        os << '*';
        return;
    }
    print_tm(os, t->lhs(), mode);
    if (mode == BaseDisplay::Explicit) {
        os << " =[";
        print_ty(os, t->base(), mode);
        os << "] ";
    } else {
        os << " = ";
    }
    print_tm(os, t->rhs(), mode);
}

void print_ctx(std::ostream& os, const Ctx& ctx, BaseDisplay mode) {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i) os << ' ';
        os << '(' << ctx[i].name << " : ";
        print_ty(os, ctx[i].ty, mode);
        os << ')';
    }
}

void print_tm(std::ostream& os, const TmPtr& t, BaseDisplay mode) {
    if (t->is_var()) {
        os << t->name();
        return;
    }
    if (!t->label().empty()) {
        os << t->label();
    } else {
        os << "coh[";
        print_ctx(os, *t->ctx(), mode);
        os << " : ";
        print_ty(os, t->ty(), mode);
        os << ']';
    }
    os << '(';
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (i) os << ", ";
        print_tm(os, t->args()[i], mode);
    }
    os << ')';
}

}  // namespace

std::string to_string(const TmPtr& t, BaseDisplay mode) {
    std::ostringstream os;
    print_tm(os, t, mode);
    return os.str();
}

std::string to_string(const TyPtr& t, BaseDisplay mode) {
    std::ostringstream os;
    print_ty(os, t, mode);
    return os.str();
}

std::string to_string(const Ctx& ctx, BaseDisplay mode) {
    std::ostringstream os;
    print_ctx(os, ctx, mode);
    return os.str();
}

std::string to_string(const CtxMor& m, BaseDisplay mode) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ", ";
        print_tm(os, m[i], mode);
    }
    os << ')';
    return os.str();
}

}  // namespace cohcheck
