#pragma once

// Random well-typed material built from the shipped corpus, for property
// tests. Everything produced here is well-typed by construction; callers
// re-check it with the kernel anyway.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cohcheck/checker.h"
#include "cohcheck/syntax.h"

namespace cohcheck::testing {

/// The embedded corpus, parsed and checked once. Aborts if it does not check.
const SymbolTable& corpus_table();

/// Corpus declarations whose context is contractible (all cohs and some defs).
const std::vector<DeclPtr>& corpus_operations();

/// The disk context D_n: a0, b0, a1, b1, ..., b_{n-1}, a_n.
CtxPtr disk(int n);

/// coh[D_n : a_n = a_n] applied to the boundary of `ty` and `v`: the identity on v.
TmPtr identity_on(const TmPtr& v, const TyPtr& ty);

class Generator {
public:
    explicit Generator(std::uint64_t seed);

    std::mt19937_64& rng() { return rng_; }
    std::size_t below(std::size_t n);
    bool coin(double p = 0.5);

    /// A contractible context built from `blocks` random extensions.
    Ctx contractible(int blocks);
    /// The context of a random corpus declaration, or a random contractible one.
    Ctx context();
    /// A random term of `ctx` with coherence nesting bounded by `fuel`.
    TmPtr term(const Ctx& ctx, int fuel);
    /// A random morphism src -> dst; dst must be contractible.
    CtxMor morphism(const Ctx& src, const Ctx& dst, int fuel);
    /// A name not bound in ctx.
    Name fresh(const Ctx& ctx, const std::string& stem);

private:
    struct Typed {
        TmPtr tm;
        TyPtr ty;
    };
    std::vector<Typed> pool(const Ctx& ctx, int fuel);
    TmPtr apply(const DeclPtr& d, const CtxMor& gamma);

    std::mt19937_64 rng_;
    Kernel kernel_;
    int counter_ = 0;
};

}  // namespace cohcheck::testing
