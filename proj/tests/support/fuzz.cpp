#include "support/fuzz.h"

#include <set>

namespace cohcheck::testing {

namespace {

std::string identifier(Generator& g) {
    static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static const std::string rest = "abcxyz019_'-";
    for (;;) {
        std::string s(1, first[g.below(first.size())]);
        std::size_t n = g.below(6);
        for (std::size_t i = 0; i < n; ++i) s += rest[g.below(rest.size())];
        if (is_identifier(s)) return s;
    }
}

SrcTm random_tm(Generator& g, int fuel) {
    SrcTm t;
    t.head = identifier(g);
    if (fuel > 0 && g.coin(0.4)) {
        t.applied = true;
        std::size_t n = 1 + g.below(3);
        for (std::size_t i = 0; i < n; ++i) t.args.push_back(random_tm(g, fuel - 1));
    }
    return t;
}

SrcTy random_ty(Generator& g, int fuel) {
    SrcTy t;
    if (g.coin(0.3)) return t;
    t.star = false;
    if (fuel > 0 && g.coin(0.3)) t.base = std::make_shared<const SrcTy>(random_ty(g, fuel - 1));
    t.lhs = random_tm(g, 2);
    t.rhs = random_tm(g, 2);
    return t;
}

}  // namespace

Program random_program(Generator& g) {
    Program p;
    std::set<std::string> used;
    std::size_t n = g.below(5);
    while (p.decls.size() < n) {
        SrcDecl d;
        d.name = identifier(g);
        if (!used.insert(d.name).second) continue;
        d.kind = g.coin() ? DeclKind::Coh : DeclKind::Def;
        std::size_t binders = g.below(4);
        for (std::size_t i = 0; i < binders; ++i) {
            SrcBinder b;
            std::size_t names = 1 + g.below(3);
            for (std::size_t j = 0; j < names; ++j) b.names.push_back(identifier(g));
            b.ty = random_ty(g, 2);
            d.tele.push_back(std::move(b));
        }
        d.ty = random_ty(g, 2);
        if (d.kind == DeclKind::Def) d.body = random_tm(g, 3);
        p.decls.push_back(std::move(d));
    }
    return p;
}

std::string random_bytes(Generator& g, std::size_t max_len) {
    static const char* tokens[] = {"coh ", "def ", "(", ")", ":", ":=", "=", "=[", "]", "*", ",", "--", "\n", " ", "x", "y'"};
    std::string s;
    std::size_t n = g.below(max_len + 1);
    while (s.size() < n) {
        if (g.coin()) {
            s += static_cast<char>(g.below(256));
        } else {
            s += tokens[g.below(sizeof tokens / sizeof *tokens)];
        }
    }
    return s;
}

}  // namespace cohcheck::testing
