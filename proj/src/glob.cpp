#include "cohcheck/glob.h"

#include <map>
#include <stdexcept>

namespace cohcheck::glob {

CellPtr Cell::object(int index) {
    auto c = std::make_shared<Cell>();
    c->index_ = index;
    return c;
}

CellPtr Cell::arrow(CellPtr src, CellPtr tgt) {
    auto c = std::make_shared<Cell>();
    c->dim_ = src->dim() + 1;
    c->src_ = std::move(src);
    c->tgt_ = std::move(tgt);
    return c;
}

int compare(const Cell& a, const Cell& b) {
    if (&a == &b) return 0;
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    if (a.is_object()) return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    if (int c = compare(*a.src(), *b.src())) return c;
    return compare(*a.tgt(), *b.tgt());
}

bool same(const CellPtr& a, const CellPtr& b) {
    if (!a || !b) return a == b;
    return compare(*a, *b) == 0;
}

std::string to_string(const CellPtr& c) {
    if (c->is_object()) return std::to_string(c->index());
    return "[" + to_string(c->src()) + " -> " + to_string(c->tgt()) + "]";
}

CellPtr tower_cell(int n) {
    CellPtr c = Cell::object(0);
    for (int k = 0; k < n; ++k) c = Cell::arrow(c, c);
    return c;
}

bool operator==(const Fiber& a, const Fiber& b) { return same(a.src, b.src) && same(a.tgt, b.tgt); }

std::string to_string(const Fiber& f) {
    if (f.is_objects()) return "Ob";
    return "Hom(" + to_string(f.src) + ", " + to_string(f.tgt) + ")";
}

std::vector<CellPtr> GlobModel::cells(const Fiber& f) const {
    if (f.is_objects()) return objects();
    return hom(f.src, f.tgt);
}

CellPtr GlobModel::coh(const Ctx& delta, const TyPtr& ty, const Env&, const Fiber& fiber) const {
    auto cs = cells(fiber);
    if (cs.size() != 1) {
        throw Error(codes::HookFailure, "no forced interpretation of coh[" + to_string(delta) + " : " +
                                            cohcheck::to_string(ty) + "]: the fiber " + to_string(fiber) + " has " +
                                            std::to_string(cs.size()) + " cells");
    }
    return cs.front();
}

namespace {

std::vector<CellPtr> carrier(int size) {
    std::vector<CellPtr> out;
    for (int i = 0; i < size; ++i) out.push_back(Cell::object(i));
    return out;
}

void require_nonempty(int size) {
    if (size < 1) throw Error(codes::EmptyCarrier, "a model needs at least one object");
}

}  // namespace

DiscreteModel::DiscreteModel(int size) : size_(size) { require_nonempty(size); }
std::string DiscreteModel::descriptor() const { return "discrete:" + std::to_string(size_); }
std::vector<CellPtr> DiscreteModel::objects() const { return carrier(size_); }
std::vector<CellPtr> DiscreteModel::hom(const CellPtr& x, const CellPtr& y) const {
    if (!same(x, y)) return {};
    return {Cell::arrow(x, x)};
}

CodiscreteModel::CodiscreteModel(int size) : size_(size) { require_nonempty(size); }
std::string CodiscreteModel::descriptor() const { return "codiscrete:" + std::to_string(size_); }
std::vector<CellPtr> CodiscreteModel::objects() const { return carrier(size_); }
std::vector<CellPtr> CodiscreteModel::hom(const CellPtr& x, const CellPtr& y) const { return {Cell::arrow(x, y)}; }

std::unique_ptr<GlobModel> make_model(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    std::string kind = descriptor.substr(0, colon);
    std::string count = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    if ((kind != "discrete" && kind != "codiscrete") || count.size() != 1 || count[0] < '0' || count[0] > '9')
        throw std::invalid_argument("bad model '" + descriptor + "': expected discrete:N or codiscrete:N with 1 <= N <= 9");
    int n = count[0] - '0';
    if (kind == "discrete") return std::make_unique<DiscreteModel>(n);
    return std::make_unique<CodiscreteModel>(n);
}

bool check_globularity(const GlobModel& g, int bound) {
    std::vector<CellPtr> level = g.objects();
    for (int k = 0; k < bound && !level.empty(); ++k) {
        std::vector<CellPtr> next;
        for (const auto& x : level) {
            for (const auto& y : level) {
                if (k > 0 && (!same(x->src(), y->src()) || !same(x->tgt(), y->tgt()))) continue;
                for (const auto& c : g.hom(x, y)) {
                    if (!same(c->src(), x) || !same(c->tgt(), y)) return false;
                    if (k > 0) {
                        if (!same(c->src()->src(), c->tgt()->src())) return false;
                        if (!same(c->src()->tgt(), c->tgt()->tgt())) return false;
                    }
                    next.push_back(c);
                }
            }
        }
        level = std::move(next);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Interpretation

namespace {

// Interpretation in a fixed context and environment, memoized per term node.
class Interp {
public:
    Interp(const GlobModel& g, const Ctx& ctx, const Env& env) : g_(g), ctx_(ctx), env_(env) {
        if (env.size() != ctx.size())
            throw Error(codes::ArityMismatch, "environment of length " + std::to_string(env.size()) +
                                                  " for a context of length " + std::to_string(ctx.size()));
    }

    Fiber ty(const TyPtr& t) {
        if (t->is_star()) return {};
        return {tm(t->lhs()), tm(t->rhs())};
    }

    CellPtr tm(const TmPtr& t) {
        if (t->is_var()) {
            auto i = ctx_.index_of(t->name());
            if (!i) throw Error(codes::UnboundVariable, "unbound variable '" + t->name() + "'");
            return env_[*i];
        }
        auto it = memo_.find(t.get());
        if (it != memo_.end()) return it->second.second;
        if (auto bound = g_.supported_depth(); bound && depth(t->ty()) + 1 > *bound) {
            throw Error(codes::UnsupportedDepth, g_.descriptor() + " interprets coherences up to depth " +
                                                     std::to_string(*bound));
        }
        Env args = mor(t->args());
        Fiber f = Interp(g_, *t->ctx(), args).ty(t->ty());
        CellPtr c = g_.coh(*t->ctx(), t->ty(), args, f);
        memo_.emplace(t.get(), std::make_pair(t, c));
        return c;
    }

    Env mor(const CtxMor& m) {
        Env out;
        out.reserve(m.size());
        for (const auto& t : m) out.push_back(tm(t));
        return out;
    }

private:
    const GlobModel& g_;
    const Ctx& ctx_;
    const Env& env_;
    // Holds the node so that its address is not reused while memoized.
    std::map<const Tm*, std::pair<TmPtr, CellPtr>> memo_;
};

}  // namespace

std::vector<Env> interp_ctx(const GlobModel& g, const Ctx& ctx) {
    if (auto bound = g.supported_depth(); bound && depth(ctx) > *bound)
        throw Error(codes::UnsupportedDepth, g.descriptor() + " interprets coherences up to depth " +
                                                 std::to_string(*bound));
    std::vector<Env> envs{Env{}};
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        Ctx prefix = ctx.prefix(i);
        std::vector<Env> next;
        for (const auto& env : envs) {
            Fiber f = Interp(g, prefix, env).ty(ctx[i].ty);
            for (const auto& c : g.cells(f)) {
                Env e = env;
                e.push_back(c);
                next.push_back(std::move(e));
            }
        }
        envs = std::move(next);
    }
    return envs;
}

Fiber interp_ty(const GlobModel& g, const Ctx& ctx, const TyPtr& t, const Env& env) {
    return Interp(g, ctx, env).ty(t);
}

CellPtr interp_tm(const GlobModel& g, const Ctx& ctx, const TmPtr& t, const Env& env) {
    return Interp(g, ctx, env).tm(t);
}

Env interp_mor(const GlobModel& g, const Ctx& src, const CtxMor& gamma, const Env& env) {
    return Interp(g, src, env).mor(gamma);
}

// ---------------------------------------------------------------------------
// Semantic lemmas

namespace {

std::string env_string(const Env& env) {
    std::string out = "(";
    for (std::size_t i = 0; i < env.size(); ++i) out += (i ? ", " : "") + to_string(env[i]);
    return out + ")";
}

bool contains(const std::vector<CellPtr>& cs, const CellPtr& c) {
    for (const auto& x : cs)
        if (same(x, c)) return true;
    return false;
}

Name fresh_name(const Ctx& ctx) {
    Name n = "w";
    while (ctx.contains(n)) n += "'";
    return n;
}

class LemmaRun {
public:
    LemmaRun(const GlobModel& g, const SemanticOptions& opts, SemanticReport& report)
        : g_(g), opts_(opts), report_(report) {
        if (!opts_.substitute_ty)
            opts_.substitute_ty = [](const TyPtr& t, const CtxMor& m, const Ctx& c) { return substitute(t, m, c); };
        if (!opts_.substitute_tm)
            opts_.substitute_tm = [](const TmPtr& t, const CtxMor& m, const Ctx& c) { return substitute(t, m, c); };
    }

    void decl(const CheckedDecl& d) {
        decl_ = d.name;
        const Ctx& ctx = *d.ctx;
        std::vector<TmPtr> subs;
        for (const auto& e : ctx.entries()) collect_coh_subterms(e.ty, subs);
        collect_coh_subterms(d.ty, subs);
        if (d.body) collect_coh_subterms(d.body, subs);

        ++report_.contexts;
        Ctx wider = ctx.extend(fresh_name(ctx), Ty::star());
        for (const auto& env : interp_ctx(g_, ctx)) {
            ++report_.env_checks;
            env_ = env_string(env);
            Interp here(g_, ctx, env);

            for (std::size_t i = 0; i < ctx.size(); ++i) {
                const auto& e = ctx[i];
                Fiber full = here.ty(e.ty);
                Env front(env.begin(), env.begin() + static_cast<std::ptrdiff_t>(i));
                Fiber local = interp_ty(g_, ctx.prefix(i), e.ty, front);
                check(local == full, "weakening", "type of " + e.name + " in its prefix: " + to_string(local) +
                                                      " vs " + to_string(full));
                check(contains(g_.cells(full), env[i]), "variables", e.name + " = " + to_string(env[i]) +
                                                                         " is not a cell of " + to_string(full));
            }

            if (d.kind == DeclKind::Coh) {
                ++report_.singleton_checks;
                auto cs = g_.cells(here.ty(d.ty));
                check(cs.size() == 1, "singleton",
                      "return type has " + std::to_string(cs.size()) + " cells");
            }

            for (const auto& obj : g_.objects()) {
                Env more = env;
                more.push_back(obj);
                Interp there(g_, wider, more);
                check(here.ty(d.ty) == there.ty(d.ty), "weakening", "return type under a fresh point");
                for (const auto& u : subs)
                    check(same(here.tm(u), there.tm(u)), "weakening", cohcheck::to_string(u) + " under a fresh point");
            }

            for (const auto& u : subs) substitution(here, u);
        }
    }

private:
    // Compares the interpretation of material from u's subscript, substituted
    // by u's arguments, with its interpretation at the image of those arguments.
    void substitution(Interp& here, const TmPtr& u) {
        const Ctx& theta_ctx = *u->ctx();
        const CtxMor& theta = u->args();
        Env image = here.mor(theta);
        Interp there(g_, theta_ctx, image);
        std::string what = cohcheck::to_string(u);

        for (std::size_t i = 0; i < theta_ctx.size(); ++i) {
            const auto& e = theta_ctx[i];
            check(contains(g_.cells(there.ty(e.ty)), image[i]), "substitution",
                  what + ": argument for " + e.name + " is not in its fiber");
            check(same(here.tm(project(theta, theta_ctx, e.name)), image[i]), "projection",
                  what + ": component " + e.name);
        }

        Fiber f = there.ty(u->ty());
        ++report_.singleton_checks;
        check(g_.cells(f).size() == 1, "singleton", what + ": fiber " + to_string(f));

        TyPtr moved = opts_.substitute_ty(u->ty(), theta, theta_ctx);
        check(here.ty(moved) == f, "substitution", what + ": return type");

        std::vector<TmPtr> inner;
        for (const auto& e : theta_ctx.entries()) collect_coh_subterms(e.ty, inner);
        collect_coh_subterms(u->ty(), inner);
        for (const auto& w : inner) {
            TmPtr w_moved = opts_.substitute_tm(w, theta, theta_ctx);
            check(same(here.tm(w_moved), there.tm(w)), "substitution", what + ": term " + cohcheck::to_string(w));
            Env lhs, rhs;
            for (const auto& a : w->args()) {
                lhs.push_back(here.tm(opts_.substitute_tm(a, theta, theta_ctx)));
                rhs.push_back(there.tm(a));
            }
            bool eq = lhs.size() == rhs.size();
            for (std::size_t i = 0; eq && i < lhs.size(); ++i) eq = same(lhs[i], rhs[i]);
            check(eq, "substitution", what + ": arguments of " + cohcheck::to_string(w));
        }
    }

    void check(bool ok, const std::string& lemma, const std::string& detail) {
        ++report_.equations;
        if (!ok) report_.failures.push_back({lemma, decl_, env_, detail});
    }

    const GlobModel& g_;
    SemanticOptions opts_;
    SemanticReport& report_;
    std::string decl_;
    std::string env_;
};

}  // namespace

SemanticReport check_semantic_lemmas(const GlobModel& g, const std::vector<DeclPtr>& decls,
                                     const SemanticOptions& opts) {
    SemanticReport report;
    report.model = g.descriptor();
    int bound = 1;
    for (const auto& d : decls) bound = std::max(bound, 1 + dim(d->ty));
    report.globular = check_globularity(g, bound);
    LemmaRun run(g, opts, report);
    for (const auto& d : decls) run.decl(*d);
    return report;
}

}  // namespace cohcheck::glob
