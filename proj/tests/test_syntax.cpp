#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cohcheck/syntax.h"
#include "support/build.h"
#include "support/gen.h"

using namespace cohcheck;
using namespace cohcheck::testing;

namespace {

NameSet names(std::initializer_list<const char*> xs) {
    NameSet out;
    for (auto x : xs) out.insert(x);
    return out;
}

template <class F>
void expect_code(const char* code, F&& f) {
    try {
        f();
        FAIL("expected error ", code);
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("free variables skip coherence subscripts") {
    CHECK(free_vars(inverse(v("y"), v("z"), v("g"))) == names({"y", "z", "g"}));
    CHECK(free_vars(v("x")) == names({"x"}));
    CHECK(free_vars(eq(v("x"), constant_path(v("w")))) == names({"x", "w"}));
    CHECK(free_vars(CtxMor{}).empty());
}

TEST_CASE("substitution replaces variables positionally") {
    Ctx one = ctx({{"x", star()}});
    CHECK(structurally_equal(substitute(v("x"), {v("a")}, one), v("a")));

    TmPtr t = inverse(v("p"), v("q"), v("r"));
    Ctx pqr = ctx({{"p", star()}, {"q", star()}, {"r", eq(v("p"), v("q"))}});
    TmPtr s = substitute(t, {v("u"), v("v"), v("w")}, pqr);
    CHECK(structurally_equal(s, inverse(v("u"), v("v"), v("w"))));
    CHECK(s->ctx() == t->ctx());
    CHECK(s->ty() == t->ty());
    CHECK(to_string(*s->ctx()) == to_string(*t->ctx()));

    expect_code(codes::UnboundVariable, [&] { substitute(v("nope"), {v("a")}, one); });
    expect_code(codes::ArityMismatch, [&] { substitute(v("x"), {v("a"), v("b")}, one); });
}

TEST_CASE("projection is positional lookup") {
    Ctx c = *arrow_ctx();
    CHECK(structurally_equal(project({v("a"), v("b"), v("p")}, c, "y"), v("b")));
    CHECK(structurally_equal(project({v("a")}, ctx({{"x", star()}}), "x"), v("a")));
    expect_code(codes::UnboundVariable, [&] { project({v("a"), v("b"), v("p")}, c, "w"); });
}

TEST_CASE("projection agrees with substitution of a variable") {
    Generator g(11);
    int n = 0;
    for (; n < 100; ++n) {
        Ctx dst = g.contractible(1 + static_cast<int>(g.below(3)));
        Ctx src = g.context();
        CtxMor gamma = g.morphism(src, dst, 1);
        const Name& x = dst[g.below(dst.size())].name;
        CHECK(structurally_equal(project(gamma, dst, x), substitute(v(x), gamma, dst)));
    }
    CHECK(n == 100);
}

TEST_CASE("depth") {
    CHECK(depth(star()) == 0);
    CHECK(depth(v("x")) == 0);
    CHECK(depth(CtxMor{}) == 0);
    CHECK(depth(corpus_decl("invol")->ty) == 1);
    CHECK(depth(inverse(v("a"), v("b"), v("p"))) == 1);
    CHECK(depth(inverse(v("a"), v("b"), inverse(v("b"), v("a"), v("p")))) == 1);
}

TEST_CASE("dim") {
    CHECK(dim(star()) == 0);
    CHECK(dim(eq(v("x"), v("y"))) == 1);
    CHECK(dim(corpus_decl("exchange")->ty) == 3);
    CHECK(dim(corpus_decl("pentagon")->ty) == 3);
}

TEST_CASE("canonical renaming of subscript binders") {
    TmPtr a = Tm::coh(ctx_ptr({{"x", star()}}), eq(v("x"), v("x")), {v("a")});
    TmPtr b = Tm::coh(ctx_ptr({{"w", star()}}), eq(v("w"), v("w")), {v("a")});
    CHECK_FALSE(structurally_equal(a, b));
    CHECK(structurally_equal(alpha_canonicalize(a), alpha_canonicalize(b)));
    CHECK(syntactic_eq(a, b));
    CHECK(structurally_equal(alpha_canonicalize(v("x")), v("x")));
}

TEST_CASE("syntactic equality") {
    CHECK(syntactic_eq(eq(v("x"), v("y")), eq(v("x"), v("y"))));
    CHECK_FALSE(syntactic_eq(eq(v("x"), v("y")), eq(v("y"), v("x"))));
    TmPtr renamed = Tm::coh(arrow_ctx("p", "q", "r"), eq(v("q"), v("p")), {v("a"), v("b"), v("t")});
    CHECK(syntactic_eq(renamed, inverse(v("a"), v("b"), v("t"))));
    CHECK_FALSE(syntactic_eq(renamed, inverse(v("b"), v("a"), v("t"))));
}

TEST_CASE("canonicalization is idempotent on random terms") {
    Generator g(12);
    for (int i = 0; i < 200; ++i) {
        Ctx c = g.context();
        TmPtr t = g.term(c, 2);
        TmPtr once = alpha_canonicalize(t);
        CHECK(structurally_equal(alpha_canonicalize(once), once));
        CHECK(syntactic_eq(once, t));
    }
}

TEST_CASE("substitution keeps subscripts, depth, dim and free variables in check") {
    Generator g(13);
    Kernel k;
    for (int i = 0; i < 200; ++i) {
        Ctx dst = g.contractible(1 + static_cast<int>(g.below(3)));
        Ctx src = g.context();
        CtxMor gamma = g.morphism(src, dst, 1);
        TmPtr t = g.term(dst, 2);
        TmPtr s = substitute(t, gamma, dst);

        if (t->is_coh()) {
            CHECK(s->ctx() == t->ctx());
            CHECK(to_string(*s->ctx()) == to_string(*t->ctx()));
            CHECK(to_string(s->ty()) == to_string(t->ty()));
        }

        NameSet allowed;
        for (const auto& x : free_vars(t)) {
            NameSet fv = free_vars(project(gamma, dst, x));
            allowed.insert(fv.begin(), fv.end());
        }
        for (const auto& x : free_vars(s)) CHECK(allowed.count(x) == 1);

        CHECK(depth(alpha_canonicalize(t)) == depth(t));
        TyPtr ty = k.infer_type(dst, t);
        CHECK(dim(alpha_canonicalize(ty)) == dim(ty));

        // Renaming every variable keeps depth and dim.
        CtxMor renaming;
        for (const auto& e : dst.entries()) renaming.push_back(v(e.name + "_r"));
        CHECK(depth(substitute(t, renaming, dst)) == depth(t));
        CHECK(dim(substitute(ty, renaming, dst)) == dim(ty));
    }
}

TEST_CASE("printing matches the golden file") {
    std::ostringstream os;
    TyPtr xy = eq(v("x"), v("y"));
    TyPtr two = eq(xy, v("p"), v("q"));
    TmPtr inv = inverse(v("a"), v("b"), v("p"));
    os << to_string(xy) << "\n" << to_string(xy, BaseDisplay::Explicit) << "\n";
    os << to_string(two) << "\n" << to_string(two, BaseDisplay::Explicit) << "\n";
    os << to_string(inv) << "\n" << to_string(inv, BaseDisplay::Explicit) << "\n";
    os << to_string(Tm::coh(inv->ctx(), inv->ty(), inv->args(), "inv")) << "\n";
    os << to_string(*arrow_ctx()) << "\n" << to_string(CtxMor{v("a"), v("b")}) << "\n";
    std::ifstream in(COHCHECK_TEST_DATA "/golden/syntax.txt");
    std::ostringstream want;
    want << in.rdbuf();
    CHECK(os.str() == want.str());
}
