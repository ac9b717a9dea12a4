#include <doctest.h>

#include <stdexcept>

#include "cohcheck/glob.h"
#include "cohcheck/mltt.h"
#include "support/build.h"
#include "support/gen.h"

using namespace cohcheck;
using namespace cohcheck::testing;
using namespace cohcheck::glob;

namespace {

CellPtr ob(int i) { return Cell::object(i); }
CellPtr arr(CellPtr a, CellPtr b) { return Cell::arrow(std::move(a), std::move(b)); }

std::vector<std::string> envs(const GlobModel& g, const Ctx& c) {
    std::vector<std::string> out;
    for (const auto& e : interp_ctx(g, c)) {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + to_string(e[i]);
        out.push_back(s);
    }
    return out;
}

Ctx composable() {
    return ctx({{"x", star()}, {"y", star()}, {"p", eq(v("x"), v("y"))}, {"z", star()}, {"q", eq(v("y"), v("z"))}});
}

std::vector<DeclPtr> corpus() { return corpus_table().decls(); }

// Flips the return type of coherence nodes after substituting: a subscript
// that no longer matches the declaration it came from.
TmPtr flip(const TmPtr& s) {
    if (!s->is_coh() || !s->ty()->is_hom()) return s;
    return Tm::coh(s->ctx(), Ty::hom(s->ty()->base(), s->ty()->rhs(), s->ty()->lhs()), s->args(), s->label());
}

SemanticOptions mutated() {
    SemanticOptions o;
    o.substitute_tm = [](const TmPtr& t, const CtxMor& m, const Ctx& c) { return flip(substitute(t, m, c)); };
    o.substitute_ty = [](const TyPtr& t, const CtxMor& m, const Ctx& c) {
        TyPtr s = substitute(t, m, c);
        return s->is_star() ? s : Ty::hom(s->base(), flip(s->lhs()), flip(s->rhs()));
    };
    return o;
}

class Shallow : public DiscreteModel {
public:
    Shallow() : DiscreteModel(1) {}
    std::optional<int> supported_depth() const override { return 0; }
};

}  // namespace

TEST_CASE("cells") {
    CHECK(same(arr(ob(0), ob(1)), arr(ob(0), ob(1))));
    CHECK_FALSE(same(arr(ob(0), ob(1)), arr(ob(1), ob(0))));
    CHECK(to_string(arr(ob(0), ob(1))) == "[0 -> 1]");
    CHECK(tower_cell(2)->dim() == 2);
    CHECK(same(tower_cell(1), arr(ob(0), ob(0))));
}

TEST_CASE("model descriptors") {
    CHECK(make_model("discrete:2")->descriptor() == "discrete:2");
    CHECK(make_model("codiscrete:9")->objects().size() == 9);
    CHECK_THROWS_AS(make_model("discrete"), std::invalid_argument);
    CHECK_THROWS_AS(make_model("discrete:10"), std::invalid_argument);
    CHECK_THROWS_AS(make_model("simplicial:2"), std::invalid_argument);
    try {
        make_model("codiscrete:0");
        FAIL("expected EmptyCarrier");
    } catch (const Error& e) {
        CHECK(e.code() == codes::EmptyCarrier);
    }
}

TEST_CASE("discrete models") {
    DiscreteModel one(1), two(2);
    for (const auto& d : corpus()) {
        for (const auto& env : interp_ctx(one, *d->ctx)) CHECK(one.cells(interp_ty(one, *d->ctx, d->ty, env)).size() == 1);
    }
    CHECK(envs(two, *arrow_ctx()) == std::vector<std::string>{"0,0,[0 -> 0]", "1,1,[1 -> 1]"});
    CHECK(envs(two, ctx({{"x", star()}, {"y", star()}})).size() == 4);
}

TEST_CASE("codiscrete models") {
    CodiscreteModel two(2);
    CHECK(envs(two, *arrow_ctx()).size() == 4);
    Env e{ob(0), ob(1), arr(ob(0), ob(1))};
    CHECK(same(interp_tm(two, *arrow_ctx(), inverse(v("x"), v("y"), v("t")), e), arr(ob(1), ob(0))));
}

TEST_CASE("interpreting contexts") {
    DiscreteModel two(2);
    CHECK(interp_ctx(two, Ctx{}).size() == 1);
    CHECK(interp_ctx(two, Ctx{})[0].empty());
    CHECK(envs(two, ctx({{"x", star()}})) == std::vector<std::string>{"0", "1"});
    CHECK(envs(two, composable()).size() == 2);
    CHECK(interp_ctx(CodiscreteModel(3), composable()).size() == 27);
}

TEST_CASE("interpreting types") {
    CodiscreteModel two(2);
    Env e{ob(0), ob(1), arr(ob(0), ob(1))};
    CHECK(interp_ty(two, *arrow_ctx(), star(), e).is_objects());
    Fiber f = interp_ty(two, *arrow_ctx(), eq(v("x"), v("y")), e);
    CHECK(same(f.src, ob(0)));
    CHECK(same(f.tgt, ob(1)));

    DeclPtr invol = corpus_decl("invol");
    Fiber g = interp_ty(two, *invol->ctx, invol->ty, e);
    CHECK(same(g.src, e[2]));
    CHECK(same(g.tgt, arr(ob(0), ob(1))));
    CHECK(to_string(g) == "Hom([0 -> 1], [0 -> 1])");
}

TEST_CASE("interpreting terms") {
    DiscreteModel two(2);
    Env e{ob(1), ob(1), arr(ob(1), ob(1))};
    CHECK(same(interp_tm(two, *arrow_ctx(), v("y"), e), ob(1)));
    CHECK(same(interp_tm(two, ctx({{"a", star()}}), constant_path(v("a")), {ob(1)}), arr(ob(1), ob(1))));
    CHECK(same(interp_tm(two, *arrow_ctx(), inverse(v("x"), v("y"), v("t")), e), e[2]));
}

TEST_CASE("interpreting morphisms") {
    CodiscreteModel three(3);
    Env e{ob(0), ob(2), arr(ob(0), ob(2))};
    CHECK(interp_mor(three, *arrow_ctx(), {}, e).empty());
    Env id = interp_mor(three, *arrow_ctx(), identity_morphism(*arrow_ctx()), e);
    REQUIRE(id.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(same(id[i], e[i]));

    // The syntactic diagonal (a : *) -> delta lands on towers over a.
    for (const auto& d : corpus()) {
        if (d->kind != DeclKind::Coh) continue;
        CtxMor gamma{v("a")};
        for (std::size_t i = 1; i + 1 < d->ctx->size(); i += 2) {
            Ctx prefix = d->ctx->prefix(i);
            TmPtr u = substitute((*d->ctx)[i + 1].ty->lhs(), gamma, prefix);
            TyPtr ty = substitute((*d->ctx)[i].ty, gamma, prefix);
            gamma.push_back(u);
            gamma.push_back(identity_on(u, ty));
        }
        Env img = interp_mor(three, ctx({{"a", star()}}), gamma, {ob(2)});
        for (std::size_t i = 0; i < img.size(); ++i) {
            CellPtr c = img[i];
            while (!c->is_object()) {
                CHECK(same(c->src(), c->tgt()));
                c = c->src();
            }
            CHECK(c->index() == 2);
        }
    }
}

TEST_CASE("globularity") {
    CHECK(check_globularity(DiscreteModel(3), 5));
    CHECK(check_globularity(CodiscreteModel(3), 4));
}

TEST_CASE("hooks and depth bounds") {
    DiscreteModel two(2);
    try {
        two.coh(*arrow_ctx(), eq(v("y"), v("x")), {}, Fiber{ob(0), ob(1)});
        FAIL("expected HookFailure");
    } catch (const Error& e) {
        CHECK(e.code() == codes::HookFailure);
    }
    Shallow s;
    try {
        interp_tm(s, *arrow_ctx(), inverse(v("x"), v("y"), v("t")), {ob(0), ob(0), arr(ob(0), ob(0))});
        FAIL("expected UnsupportedDepth");
    } catch (const Error& e) {
        CHECK(e.code() == codes::UnsupportedDepth);
    }
    try {
        interp_ctx(s, *corpus_decl("assoc")->ctx);
        interp_ctx(s, ctx({{"x", star()}, {"p", eq(v("x"), constant_path(v("x")))}}));
        FAIL("expected UnsupportedDepth");
    } catch (const Error& e) {
        CHECK(e.code() == codes::UnsupportedDepth);
    }
}

TEST_CASE("semantic lemmas over the corpus") {
    for (const char* m : {"discrete:1", "discrete:2", "codiscrete:2"}) {
        auto g = make_model(m);
        SemanticReport r = check_semantic_lemmas(*g, corpus());
        CHECK_MESSAGE(r.ok(), m);
        CHECK(r.globular);
        CHECK(r.contexts == corpus().size());
        CHECK(r.singleton_checks > 0);
        for (const auto& f : r.failures) MESSAGE(f.lemma, " ", f.decl, " ", f.env, " ", f.detail);
    }
}

TEST_CASE("a wrong substitution is caught") {
    auto g = make_model("codiscrete:2");
    SemanticReport r = check_semantic_lemmas(*g, corpus(), mutated());
    CHECK_FALSE(r.ok());
    bool substitution = false;
    for (const auto& f : r.failures) substitution = substitution || f.lemma == "substitution";
    CHECK(substitution);
}

TEST_CASE("the finite models agree with the normal forms") {
    DiscreteModel one(1);
    for (const auto& d : corpus()) {
        if (d->kind != DeclKind::Coh) continue;
        auto k = mltt::tower_index(mltt::normalize(mltt::MTm::coh_ref(d->ctx, d->ty, mltt::diag(*d->ctx, "a"))));
        REQUIRE(k);
        for (const auto& env : interp_ctx(one, *d->ctx))
            CHECK_MESSAGE(same(interp_tm(one, *d->ctx, d->generic_term(), env), tower_cell(*k)), d->name);
    }
}
