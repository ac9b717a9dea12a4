#include "cohcheck/mltt.h"

#include <map>
#include <sstream>
#include <stdexcept>

namespace cohcheck::mltt {

MTyPtr MTy::base() {
    static const MTyPtr b = std::make_shared<const MTy>();
    return b;
}

MTyPtr MTy::id(MTyPtr base, MTmPtr lhs, MTmPtr rhs) {
    auto t = std::make_shared<MTy>();
    t->kind_ = Kind::Id;
    t->over_ = std::move(base);
    t->lhs_ = std::move(lhs);
    t->rhs_ = std::move(rhs);
    return t;
}

MTmPtr MTm::var(Name name) {
    auto t = std::make_shared<MTm>();
    t->name_ = std::move(name);
    return t;
}

MTmPtr MTm::idp(MTmPtr arg) {
    auto t = std::make_shared<MTm>();
    t->kind_ = Kind::Idp;
    t->a_ = std::move(arg);
    return t;
}

MTmPtr MTm::j(MTmPtr base, MotivePtr motive, MTmPtr diag, MTmPtr major, MTmPtr path) {
    auto t = std::make_shared<MTm>();
    t->kind_ = Kind::J;
    t->a_ = std::move(base);
    t->motive_ = std::move(motive);
    t->d_ = std::move(diag);
    t->major_ = std::move(major);
    t->path_ = std::move(path);
    return t;
}

MTmPtr MTm::j_delta(CtxPtr ctx, MotivePtr motive, MotivePtr diag, MEnv args) {
    auto t = std::make_shared<MTm>();
    t->kind_ = Kind::JDelta;
    t->ctx_ = std::move(ctx);
    t->motive_ = std::move(motive);
    t->diag_motive_ = std::move(diag);
    t->args_ = std::move(args);
    return t;
}

MTmPtr MTm::coh_ref(CtxPtr ctx, TyPtr ty, MEnv args, Name label) {
    auto t = std::make_shared<MTm>();
    t->kind_ = Kind::CohRef;
    t->ctx_ = std::move(ctx);
    t->ty_ = std::move(ty);
    t->args_ = std::move(args);
    t->name_ = std::move(label);
    return t;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

using Subst = std::map<Name, MTmPtr>;

MTmPtr subst_tm(const MTmPtr& t, const Subst& s);
MTyPtr subst_ty(const MTyPtr& t, const Subst& s);

MotivePtr subst_motive(const MotivePtr& m, const Subst& s) {
    Subst inner = s;
    for (const auto& p : m->params) inner.erase(p);
    if (inner.empty()) return m;
    auto out = std::make_shared<Motive>();
    out->params = m->params;
    if (m->is_type())
        out->body = subst_ty(std::get<MTyPtr>(m->body), inner);
    else
        out->body = subst_tm(std::get<MTmPtr>(m->body), inner);
    return out;
}

MEnv subst_env(const MEnv& e, const Subst& s) {
    MEnv out;
    out.reserve(e.size());
    for (const auto& t : e) out.push_back(subst_tm(t, s));
    return out;
}

MTmPtr subst_tm(const MTmPtr& t, const Subst& s) {
    switch (t->kind()) {
    case MTm::Kind::Var: {
        auto it = s.find(t->name());
        return it == s.end() ? t : it->second;
    }
    case MTm::Kind::Idp: return MTm::idp(subst_tm(t->arg(), s));
    case MTm::Kind::J:
        return MTm::j(subst_tm(t->base_point(), s), subst_motive(t->motive(), s), subst_tm(t->diag(), s),
                      subst_tm(t->major(), s), subst_tm(t->path(), s));
    case MTm::Kind::JDelta:
        return MTm::j_delta(t->ctx(), subst_motive(t->motive(), s), subst_motive(t->diag_motive(), s),
                            subst_env(t->args(), s));
    case MTm::Kind::CohRef: return MTm::coh_ref(t->ctx(), t->ty(), subst_env(t->args(), s), t->name());
    }
    return t;
}

MTyPtr subst_ty(const MTyPtr& t, const Subst& s) {
    if (t->kind() == MTy::Kind::Base) return t;
    return MTy::id(subst_ty(t->over(), s), subst_tm(t->lhs(), s), subst_tm(t->rhs(), s));
}

Subst make_subst(const std::vector<Name>& names, const MEnv& values) {
    if (names.size() != values.size())
        throw std::invalid_argument("motive expects " + std::to_string(names.size()) + " arguments, got " +
                                    std::to_string(values.size()));
    Subst s;
    for (std::size_t i = 0; i < names.size(); ++i) s[names[i]] = values[i];
    return s;
}

}  // namespace

MTmPtr subst(const MTmPtr& t, const std::vector<Name>& names, const MEnv& values) {
    return subst_tm(t, make_subst(names, values));
}

MTyPtr subst(const MTyPtr& t, const std::vector<Name>& names, const MEnv& values) {
    return subst_ty(t, make_subst(names, values));
}

MTyPtr apply_ty(const Motive& m, const MEnv& args) {
    if (!m.is_type()) throw std::invalid_argument("motive body is a term");
    return subst(std::get<MTyPtr>(m.body), m.params, args);
}

MTmPtr apply_tm(const Motive& m, const MEnv& args) {
    if (m.is_type()) throw std::invalid_argument("motive body is a type");
    return subst(std::get<MTmPtr>(m.body), m.params, args);
}

// ---------------------------------------------------------------------------
// Towers and the translation

std::pair<MTyPtr, MTmPtr> iterated_tower(const Name& a, int n) {
    MTyPtr ty = MTy::base();
    MTmPtr tm = MTm::var(a);
    for (int k = 0; k < n; ++k) {
        ty = MTy::id(ty, tm, tm);
        tm = MTm::idp(tm);
    }
    return {ty, tm};
}

namespace {

std::vector<Name> names_of(const Ctx& ctx) {
    std::vector<Name> out;
    out.reserve(ctx.size());
    for (const auto& e : ctx.entries()) out.push_back(e.name);
    return out;
}

MEnv vars_of(const Ctx& ctx) {
    MEnv out;
    out.reserve(ctx.size());
    for (const auto& e : ctx.entries()) out.push_back(MTm::var(e.name));
    return out;
}

// Throws unless ctx has the shape produced by the contractibility rules.
void require_contractible_shape(const Ctx& ctx) {
    std::size_t n = ctx.size();
    bool ok = n % 2 == 1 && ctx[0].ty->is_star();
    for (std::size_t k = 2; ok && k < n; k += 2) {
        const auto& z = ctx[k].ty;
        ok = z->is_hom() && z->rhs()->is_var() && z->rhs()->name() == ctx[k - 1].name;
    }
    if (!ok) throw Error(codes::NotContractible, "not contractible: " + to_string(ctx));
}

}  // namespace

MEnv diag(const Ctx& delta, const Name& a) {
    require_contractible_shape(delta);
    MEnv out{MTm::var(a)};
    for (std::size_t k = 2; k < delta.size(); k += 2) {
        Ctx prefix = delta.prefix(k - 1);
        MTmPtr u = elaborate_tm(prefix, delta[k].ty->lhs(), out);
        out.push_back(u);
        out.push_back(MTm::idp(u));
    }
    return out;
}

MTyPtr elaborate_ty(const Ctx& ctx, const TyPtr& t, const MEnv& env) {
    if (t->is_star()) return MTy::base();
    return MTy::id(elaborate_ty(ctx, t->base(), env), elaborate_tm(ctx, t->lhs(), env),
                   elaborate_tm(ctx, t->rhs(), env));
}

MTmPtr elaborate_tm(const Ctx& ctx, const TmPtr& t, const MEnv& env) {
    if (env.size() != ctx.size())
        throw Error(codes::ArityMismatch, "environment of length " + std::to_string(env.size()) +
                                              " for a context of length " + std::to_string(ctx.size()));
    if (t->is_var()) {
        auto i = ctx.index_of(t->name());
        if (!i) throw Error(codes::UnboundVariable, "unbound variable '" + t->name() + "'");
        return env[*i];
    }
    return MTm::coh_ref(t->ctx(), t->ty(), elaborate_mor(ctx, t->args(), env), t->label());
}

MEnv elaborate_mor(const Ctx& src, const CtxMor& gamma, const MEnv& env) {
    MEnv out;
    out.reserve(gamma.size());
    for (const auto& t : gamma) out.push_back(elaborate_tm(src, t, env));
    return out;
}

Motive elaborate_ty(const Ctx& ctx, const TyPtr& t) { return {names_of(ctx), elaborate_ty(ctx, t, vars_of(ctx))}; }

Motive elaborate_tm(const Ctx& ctx, const TmPtr& t) { return {names_of(ctx), elaborate_tm(ctx, t, vars_of(ctx))}; }

MTmPtr j_delta(const CtxPtr& delta, MotivePtr p, MotivePtr d, MEnv args) {
    require_contractible_shape(*delta);
    if (args.size() != delta->size())
        throw Error(codes::ArityMismatch, "J over a context of length " + std::to_string(delta->size()) +
                                              " applied to " + std::to_string(args.size()) + " arguments");
    return MTm::j_delta(delta, std::move(p), std::move(d), std::move(args));
}

// ---------------------------------------------------------------------------
// Printing and equality

namespace {

class Printer {
public:
    explicit Printer(bool canonical) : canonical_(canonical) {}

    void tm(std::ostream& os, const MTmPtr& t) {
        switch (t->kind()) {
        case MTm::Kind::Var: os << var_name(t->name()); return;
        case MTm::Kind::Idp: {
            int k = 0;
            MTmPtr cur = t;
            while (cur->kind() == MTm::Kind::Idp) {
                ++k;
                cur = cur->arg();
            }
            os << "idp^" << k << ' ';
            if (cur->kind() == MTm::Kind::Var) {
                tm(os, cur);
            } else {
                os << '(';
                tm(os, cur);
                os << ')';
            }
            return;
        }
        case MTm::Kind::J:
            os << "J(";
            tm(os, t->base_point());
            os << ", ";
            motive(os, *t->motive());
            os << ", ";
            tm(os, t->diag());
            os << ", ";
            tm(os, t->major());
            os << ", ";
            tm(os, t->path());
            os << ')';
            return;
        case MTm::Kind::JDelta:
            os << "J[" << to_string(*t->ctx()) << "](";
            motive(os, *t->motive());
            os << ", ";
            motive(os, *t->diag_motive());
            os << ')';
            env(os, t->args());
            return;
        case MTm::Kind::CohRef:
            if (t->name().empty())
                os << "coh[" << to_string(*t->ctx()) << " : " << to_string(t->ty()) << ']';
            else
                os << t->name();
            env(os, t->args());
            return;
        }
    }

    void ty(std::ostream& os, const MTyPtr& t) {
        if (t->kind() == MTy::Kind::Base) {
            os << 'A';
            return;
        }
        if (auto k = tower_index(t)) {
            MTmPtr pt = t->lhs();
            while (pt->kind() == MTm::Kind::Idp) pt = pt->arg();
            os << "Id^" << *k << " A " << var_name(pt->name());
            return;
        }
        os << "Id(";
        ty(os, t->over());
        os << ", ";
        tm(os, t->lhs());
        os << ", ";
        tm(os, t->rhs());
        os << ')';
    }

private:
    void env(std::ostream& os, const MEnv& e) {
        os << '(';
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << ", ";
            tm(os, e[i]);
        }
        os << ')';
    }

    void motive(std::ostream& os, const Motive& m) {
        std::vector<std::pair<Name, std::string>> saved;
        os << "\\(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            std::string shown = canonical_ ? "m" + std::to_string(next_++) : m.params[i];
            saved.emplace_back(m.params[i], scope_.count(m.params[i]) ? scope_[m.params[i]] : std::string());
            scope_[m.params[i]] = shown;
            os << (i ? ", " : "") << shown;
        }
        os << "). ";
        if (m.is_type())
            ty(os, std::get<MTyPtr>(m.body));
        else
            tm(os, std::get<MTmPtr>(m.body));
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            if (it->second.empty())
                scope_.erase(it->first);
            else
                scope_[it->first] = it->second;
        }
    }

    std::string var_name(const Name& n) const {
        auto it = scope_.find(n);
        return it == scope_.end() ? n : it->second;
    }

    bool canonical_;
    int next_ = 0;
    std::map<Name, std::string> scope_;
};

std::string canonical(const MTmPtr& t) {
    std::ostringstream os;
    Printer(true).tm(os, t);
    return os.str();
}

std::string canonical(const MTyPtr& t) {
    std::ostringstream os;
    Printer(true).ty(os, t);
    return os.str();
}

// (index, point) of a tower; the point is empty for the base type.
std::optional<std::pair<int, Name>> tower_of(const MTmPtr& t) {
    int k = 0;
    MTmPtr cur = t;
    while (cur->kind() == MTm::Kind::Idp) {
        ++k;
        cur = cur->arg();
    }
    if (cur->kind() != MTm::Kind::Var) return std::nullopt;
    return std::make_pair(k, cur->name());
}

std::optional<std::pair<int, Name>> tower_of(const MTyPtr& t) {
    if (t->kind() == MTy::Kind::Base) return std::make_pair(0, Name());
    auto below = tower_of(t->over());
    auto l = tower_of(t->lhs());
    auto r = tower_of(t->rhs());
    if (!below || !l || !r || *l != *r || l->first != below->first) return std::nullopt;
    if (!below->second.empty() && below->second != l->second) return std::nullopt;
    return std::make_pair(below->first + 1, l->second);
}

}  // namespace

std::optional<int> tower_index(const MTmPtr& t) {
    auto r = tower_of(t);
    return r ? std::optional<int>(r->first) : std::nullopt;
}

std::optional<int> tower_index(const MTyPtr& t) {
    auto r = tower_of(t);
    if (!r || r->first == 0) return std::nullopt;
    return r->first;
}

std::string to_string(const MTmPtr& t) { return canonical(t); }
std::string to_string(const MTyPtr& t) { return canonical(t); }

bool alpha_eq(const MTmPtr& a, const MTmPtr& b) { return a == b || canonical(a) == canonical(b); }
bool alpha_eq(const MTyPtr& a, const MTyPtr& b) { return a == b || canonical(a) == canonical(b); }

// ---------------------------------------------------------------------------
// Normalization

namespace {

class Normalizer {
public:
    explicit Normalizer(const NormalizeOptions& opts) : opts_(opts) {}

    MTmPtr tm(const MTmPtr& t) {
        switch (t->kind()) {
        case MTm::Kind::Var: return t;
        case MTm::Kind::Idp: {
            MTmPtr a = tm(t->arg());
            return a == t->arg() ? t : MTm::idp(a);
        }
        case MTm::Kind::CohRef: {
            auto [p, d] = coh_motives(t->ctx(), t->ty());
            return tm(MTm::j_delta(t->ctx(), p, d, t->args()));
        }
        case MTm::Kind::JDelta: return unfold(t);
        case MTm::Kind::J: return j(t);
        }
        return t;
    }

    MTyPtr ty(const MTyPtr& t) {
        if (t->kind() == MTy::Kind::Base) return t;
        return MTy::id(ty(t->over()), tm(t->lhs()), tm(t->rhs()));
    }

private:
    // J(P, d)(u, v, p) reduces to d when p is idp of u and v is u.
    MTmPtr j(const MTmPtr& t) {
        MTmPtr bp = tm(t->base_point());
        MTmPtr major = tm(t->major());
        MTmPtr path = tm(t->path());
        if (path->kind() == MTm::Kind::Idp && alpha_eq(path->arg(), bp) && alpha_eq(major, bp)) return tm(t->diag());
        return MTm::j(bp, t->motive(), tm(t->diag()), major, path);
    }

    MTmPtr unfold(const MTmPtr& t) {
        const Ctx& delta = *t->ctx();
        MEnv args;
        args.reserve(t->args().size());
        for (const auto& a : t->args()) args.push_back(tm(a));
        std::size_t n = delta.size();
        if (n == 1) return tm(apply_tm(*t->diag_motive(), {args[0]}));

        const auto& [prefix, p_diag] = step_data(t->ctx(), t->motive());
        MEnv front(args.begin(), args.end() - 2);
        MTmPtr u = tm(elaborate_tm(*prefix, delta[n - 1].ty->lhs(), front));

        auto motive = std::make_shared<Motive>();
        Name y = delta[n - 2].name + "#" + std::to_string(fresh_);
        Name z = delta[n - 1].name + "#" + std::to_string(fresh_);
        ++fresh_;
        motive->params = {y, z};
        MEnv p_args = front;
        p_args.push_back(MTm::var(y));
        p_args.push_back(MTm::var(z));
        motive->body = apply_ty(*t->motive(), p_args);

        MTmPtr inner = MTm::j_delta(prefix, p_diag, t->diag_motive(), front);
        MTmPtr major = args[n - 2];
        MTmPtr path = args[n - 1];
        if (opts_.corruption == JCorruption::SwapMajorAndPath) std::swap(major, path);
        return tm(MTm::j(u, motive, inner, major, path));
    }

    // The prefix context and the motive P(prefix, u, idp u) used for the
    // recursive call; both depend only on (delta, P).
    const std::pair<CtxPtr, MotivePtr>& step_data(const CtxPtr& delta, const MotivePtr& p) {
        auto key = std::make_pair(delta.get(), p.get());
        auto it = steps_.find(key);
        if (it != steps_.end()) return it->second.second;
        std::size_t n = delta->size();
        auto prefix = std::make_shared<const Ctx>(delta->prefix(n - 2));
        auto p_diag = std::make_shared<Motive>();
        for (const auto& e : prefix->entries()) p_diag->params.push_back(e.name);
        MEnv vars = vars_of(*prefix);
        MTmPtr u = elaborate_tm(*prefix, (*delta)[n - 1].ty->lhs(), vars);
        vars.push_back(u);
        vars.push_back(MTm::idp(u));
        p_diag->body = apply_ty(*p, vars);
        auto& slot = steps_[key];
        slot.first = {delta, p};
        slot.second = {prefix, p_diag};
        return slot.second;
    }

    std::pair<MotivePtr, MotivePtr> coh_motives(const CtxPtr& delta, const TyPtr& ty) {
        auto key = std::make_pair(delta.get(), ty.get());
        auto it = cohs_.find(key);
        if (it != cohs_.end()) return it->second.second;
        auto p = std::make_shared<Motive>(elaborate_ty(*delta, ty));
        auto d = std::make_shared<Motive>();
        d->params = {"a"};
        d->body = iterated_tower("a", dim(ty)).second;
        auto& slot = cohs_[key];
        slot.first = {delta, ty};
        slot.second = {p, d};
        return slot.second;
    }

    NormalizeOptions opts_;
    int fresh_ = 0;
    // Keys are raw pointers; the first member of each value keeps them alive.
    std::map<std::pair<const Ctx*, const Motive*>,
             std::pair<std::pair<CtxPtr, MotivePtr>, std::pair<CtxPtr, MotivePtr>>>
        steps_;
    std::map<std::pair<const Ctx*, const Ty*>,
             std::pair<std::pair<CtxPtr, TyPtr>, std::pair<MotivePtr, MotivePtr>>>
        cohs_;
};

void collect(const MTmPtr& t, std::vector<MotivePtr>& out) {
    switch (t->kind()) {
    case MTm::Kind::Var: return;
    case MTm::Kind::Idp: collect(t->arg(), out); return;
    case MTm::Kind::J:
        out.push_back(t->motive());
        collect(t->base_point(), out);
        collect(t->diag(), out);
        collect(t->major(), out);
        collect(t->path(), out);
        return;
    case MTm::Kind::JDelta:
    case MTm::Kind::CohRef:
        for (const auto& a : t->args()) collect(a, out);
        return;
    }
}

}  // namespace

MTmPtr normalize(const MTmPtr& t, const NormalizeOptions& opts) { return Normalizer(opts).tm(t); }
MTyPtr normalize(const MTyPtr& t, const NormalizeOptions& opts) { return Normalizer(opts).ty(t); }

std::vector<MotivePtr> collect_motives(const MTmPtr& t) {
    std::vector<MotivePtr> out;
    collect(t, out);
    return out;
}

// ---------------------------------------------------------------------------
// The diagonal lemmas

namespace {

class LemmaChecker {
public:
    LemmaChecker(const NormalizeOptions& opts, LemmaReport& report) : opts_(opts), report_(report) {}

    void subscript(const CtxPtr& delta, const TyPtr& ty, const std::string& subject) {
        auto key = std::make_pair(delta.get(), ty.get());
        if (done_.count(key)) return;
        done_.insert(key);
        keep_.emplace_back(delta, ty);

        const Ctx& ctx = *delta;
        MEnv id = diag(ctx, "a");
        expect_ty("type", subject + " return type", elaborate_ty(ctx, ty, id), dim(ty));
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            const auto& e = ctx[i];
            expect_ty("type", subject + " type of " + e.name, elaborate_ty(ctx, e.ty, id), dim(e.ty));
            expect_tm("term", subject + " variable " + e.name, id[i], dim(e.ty));
        }
        expect_tm("term", subject, MTm::coh_ref(delta, ty, id), dim(ty));

        std::vector<TmPtr> subs;
        collect_coh_subterms(ty, subs);
        for (const auto& e : ctx.entries()) collect_coh_subterms(e.ty, subs);
        for (const auto& u : subs) {
            std::string name = subject + " subterm " + cohcheck::to_string(u);
            TyPtr u_ty = kernel_.infer_type(ctx, u);
            expect_tm("term", name, elaborate_tm(ctx, u, id), dim(u_ty));

            MEnv image = elaborate_mor(ctx, u->args(), id);
            MEnv target = diag(*u->ctx(), "a");
            for (std::size_t i = 0; i < image.size(); ++i) {
                ++report_.checks;
                MTmPtr got = normalize(image[i], opts_);
                MTmPtr want = normalize(target[i], opts_);
                if (!alpha_eq(got, want))
                    report_.failures.push_back({"morphism", name + " argument " + std::to_string(i + 1),
                                                to_string(want), to_string(got)});
            }
            std::string inner = u->label().empty() ? "coh[" + cohcheck::to_string(*u->ctx()) + "]" : u->label();
            subscript(u->ctx(), u->ty(), inner);
        }
    }

private:
    void expect_ty(const std::string& lemma, const std::string& subject, const MTyPtr& t, int n) {
        ++report_.checks;
        MTyPtr got = normalize(t, opts_);
        MTyPtr want = iterated_tower("a", n).first;
        if (!alpha_eq(got, want)) report_.failures.push_back({lemma, subject, to_string(want), to_string(got)});
    }

    void expect_tm(const std::string& lemma, const std::string& subject, const MTmPtr& t, int n) {
        ++report_.checks;
        MTmPtr got = normalize(t, opts_);
        MTmPtr want = iterated_tower("a", n).second;
        if (!alpha_eq(got, want)) report_.failures.push_back({lemma, subject, to_string(want), to_string(got)});
    }

    NormalizeOptions opts_;
    LemmaReport& report_;
    Kernel kernel_;
    std::set<std::pair<const Ctx*, const Ty*>> done_;
    std::vector<std::pair<CtxPtr, TyPtr>> keep_;
};

}  // namespace

LemmaReport check_diagonal_lemmas(const CheckedDecl& decl, const NormalizeOptions& opts) {
    if (decl.kind != DeclKind::Coh)
        throw std::invalid_argument("diagonal lemmas apply to coh declarations only: " + decl.name);
    LemmaReport report;
    report.dim = dim(decl.ty);
    MEnv id = diag(*decl.ctx, "a");
    report.term_nf = to_string(normalize(MTm::coh_ref(decl.ctx, decl.ty, id, decl.name), opts));
    report.type_nf = to_string(normalize(elaborate_ty(*decl.ctx, decl.ty, id), opts));
    LemmaChecker(opts, report).subscript(decl.ctx, decl.ty, decl.name);
    return report;
}

}  // namespace cohcheck::mltt
