#pragma once

// Small constructors for hand-written syntax in tests.

#include <string>
#include <utility>
#include <vector>

#include "cohcheck/checker.h"
#include "cohcheck/parser.h"
#include "cohcheck/syntax.h"
#include "support/gen.h"

namespace cohcheck::testing {

inline TyPtr star() { return Ty::star(); }
inline TmPtr v(const std::string& name) { return Tm::var(name); }
inline TyPtr eq(TmPtr a, TmPtr b) { return Ty::hom(Ty::star(), std::move(a), std::move(b)); }
inline TyPtr eq(TyPtr base, TmPtr a, TmPtr b) { return Ty::hom(std::move(base), std::move(a), std::move(b)); }
inline Ctx ctx(std::vector<Entry> es) { return Ctx(std::move(es)); }
inline CtxPtr ctx_ptr(std::vector<Entry> es) { return std::make_shared<const Ctx>(std::move(es)); }

// (x y : *) (t : x = y)
inline CtxPtr arrow_ctx(const std::string& x = "x", const std::string& y = "y", const std::string& t = "t") {
    return ctx_ptr({{x, star()}, {y, star()}, {t, eq(v(x), v(y))}});
}

// coh[(x y : *) (t : x = y) : y = x](a, b, p)
inline TmPtr inverse(TmPtr a, TmPtr b, TmPtr p) {
    return Tm::coh(arrow_ctx(), eq(v("y"), v("x")), {std::move(a), std::move(b), std::move(p)});
}

// coh[(x : *) : x = x](a)
inline TmPtr constant_path(TmPtr a) {
    return Tm::coh(ctx_ptr({{"x", star()}}), eq(v("x"), v("x")), {std::move(a)});
}

/// Checks one declaration (source text) against the corpus.
inline DeclPtr declare(const std::string& src) {
    Program p = parse_program(src);
    DeclResult r = check_declaration(corpus_table(), p.decls.at(0));
    if (!r.checked) throw Error(r.report.diagnostics.at(0).code, r.report.diagnostics.at(0).message);
    return r.checked;
}

inline DeclPtr corpus_decl(const std::string& name) { return corpus_table().find(name); }

}  // namespace cohcheck::testing
