#include "support/gen.h"

#include <cstdlib>
#include <deque>
#include <iostream>
#include <map>

#include "cohcheck/corpus.h"
#include "cohcheck/parser.h"

namespace cohcheck::testing {

const SymbolTable& corpus_table() {
    static const SymbolTable table = [] {
        SymbolTable t;
        for (const auto& f : embedded_corpus()) {
            ProgramResult r = check_program(parse_program(f.text, std::string(f.name)), t);
            if (!r.ok()) {
                std::cerr << "corpus file " << f.name << " does not check\n";
                std::abort();
            }
            t = r.table;
        }
        return t;
    }();
    return table;
}

const std::vector<DeclPtr>& corpus_operations() {
    static const std::vector<DeclPtr> ops = [] {
        std::vector<DeclPtr> out;
        Kernel k;
        for (const auto& d : corpus_table().decls()) {
            try {
                k.check_contractible(*d->ctx);
                out.push_back(d);
            } catch (const Error&) {
            }
        }
        return out;
    }();
    return ops;
}

namespace {

struct Disk {
    CtxPtr ctx;
    TyPtr top;  // type of a_n
};

const Disk& disk_with_top(int n) {
    static std::map<int, Disk> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Entry> es{{"a0", Ty::star()}};
    TyPtr top = Ty::star();
    for (int k = 0; k < n; ++k) {
        Name a = "a" + std::to_string(k), b = "b" + std::to_string(k);
        es.push_back({b, top});
        TyPtr next = Ty::hom(top, Tm::var(a), Tm::var(b));
        es.push_back({"a" + std::to_string(k + 1), next});
        top = next;
    }
    return cache.emplace(n, Disk{std::make_shared<const Ctx>(std::move(es)), top}).first->second;
}

}  // namespace

CtxPtr disk(int n) { return disk_with_top(n).ctx; }

TmPtr identity_on(const TmPtr& v, const TyPtr& ty) {
    std::deque<std::pair<TmPtr, TmPtr>> boundary;
    for (TyPtr t = ty; t->is_hom(); t = t->base()) boundary.emplace_front(t->lhs(), t->rhs());
    int n = static_cast<int>(boundary.size());
    const Disk& d = disk_with_top(n);
    CtxMor args;
    for (const auto& [s, t] : boundary) {
        args.push_back(s);
        args.push_back(t);
    }
    args.push_back(v);
    TmPtr an = Tm::var("a" + std::to_string(n));
    return Tm::coh(d.ctx, Ty::hom(d.top, an, an), std::move(args), "id" + std::to_string(n));
}

Generator::Generator(std::uint64_t seed) : rng_(seed) {}

std::size_t Generator::below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

bool Generator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Name Generator::fresh(const Ctx& ctx, const std::string& stem) {
    Name n;
    do n = stem + std::to_string(counter_++);
    while (ctx.contains(n));
    return n;
}

std::vector<Generator::Typed> Generator::pool(const Ctx& ctx, int fuel) {
    std::vector<Typed> out;
    for (const auto& e : ctx.entries()) out.push_back({Tm::var(e.name), e.ty});
    if (fuel > 0) {
        for (int i = 0; i < 2; ++i) {
            TmPtr t = term(ctx, fuel - 1);
            out.push_back({t, kernel_.infer_type(ctx, t)});
        }
    }
    return out;
}

TmPtr Generator::apply(const DeclPtr& d, const CtxMor& gamma) {
    if (d->kind == DeclKind::Coh) return Tm::coh(d->ctx, d->ty, gamma, d->name);
    return substitute(d->body, gamma, *d->ctx);
}

CtxMor Generator::morphism(const Ctx& src, const Ctx& dst, int fuel) {
    std::vector<Typed> p = pool(src, fuel);
    std::vector<TmPtr> points;
    for (const auto& t : p)
        if (t.ty->is_star()) points.push_back(t.tm);
    CtxMor gamma{points[below(points.size())]};
    for (std::size_t i = 1; i + 1 < dst.size(); i += 2) {
        Ctx prefix = dst.prefix(i);
        TyPtr ty = substitute(dst[i].ty, gamma, prefix);
        TmPtr u = substitute(dst[i + 1].ty->lhs(), gamma, prefix);
        std::vector<std::pair<TmPtr, TmPtr>> options{{u, nullptr}};
        for (const auto& t : p) {
            if (t.ty->is_hom() && syntactic_eq(t.ty->base(), ty) && syntactic_eq(t.ty->lhs(), u))
                options.emplace_back(t.ty->rhs(), t.tm);
        }
        // Prefer an existing path over a fresh identity when there is one.
        std::size_t pick = options.size() > 1 && coin(0.8) ? 1 + below(options.size() - 1) : below(options.size());
        auto [y, z] = options[pick];
        gamma.push_back(y);
        gamma.push_back(z ? z : identity_on(u, ty));
    }
    return gamma;
}

TmPtr Generator::term(const Ctx& ctx, int fuel) {
    if (fuel <= 0 || coin(0.25)) return Tm::var(ctx[below(ctx.size())].name);
    const auto& ops = corpus_operations();
    const DeclPtr& d = ops[below(ops.size())];
    return apply(d, morphism(ctx, *d->ctx, fuel - 1));
}

Ctx Generator::contractible(int blocks) {
    Ctx c = Ctx().extend(fresh(Ctx(), "x"), Ty::star());
    for (int k = 0; k < blocks; ++k) {
        std::vector<Typed> p = pool(c, coin(0.3) ? 1 : 0);
        const Typed& u = p[below(p.size())];
        Name y = fresh(c, "y");
        c = c.extend(y, u.ty);
        c = c.extend(fresh(c, "f"), Ty::hom(u.ty, u.tm, Tm::var(y)));
    }
    return c;
}

Ctx Generator::context() {
    const auto& decls = corpus_table().decls();
    if (coin(0.6)) return *decls[below(decls.size())]->ctx;
    return contractible(1 + static_cast<int>(below(4)));
}

}  // namespace cohcheck::testing
