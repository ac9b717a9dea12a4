#pragma once

// Translation of the coherence theory into a fragment of Martin-Löf type
// theory with one base type A, identity types and J, together with a
// normalizer and checks of the diagonal lemmas.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cohcheck/checker.h"
#include "cohcheck/syntax.h"

namespace cohcheck::mltt {

class MTy;
class MTm;
struct Motive;

using MTyPtr = std::shared_ptr<const MTy>;
using MTmPtr = std::shared_ptr<const MTm>;
using MotivePtr = std::shared_ptr<const Motive>;
using MEnv = std::vector<MTmPtr>;

class MTy {
public:
    enum class Kind { Base, Id };

    static MTyPtr base();
    static MTyPtr id(MTyPtr base, MTmPtr lhs, MTmPtr rhs);

    Kind kind() const { return kind_; }
    const MTyPtr& over() const { return over_; }
    const MTmPtr& lhs() const { return lhs_; }
    const MTmPtr& rhs() const { return rhs_; }

private:
    Kind kind_ = Kind::Base;
    MTyPtr over_;
    MTmPtr lhs_;
    MTmPtr rhs_;
};

/// A binder: parameter names and a body that is a type or a term.
struct Motive {
    std::vector<Name> params;
    std::variant<MTyPtr, MTmPtr> body;

    bool is_type() const { return std::holds_alternative<MTyPtr>(body); }
};

class MTm {
public:
    enum class Kind {
        Var,
        Idp,
        J,       // J(base, motive, diag, major, path); motive binds (y, z)
        JDelta,  // J over a contractible context applied to arguments
        CohRef,  // a coherence not yet unfolded
    };

    static MTmPtr var(Name name);
    static MTmPtr idp(MTmPtr arg);
    static MTmPtr j(MTmPtr base, MotivePtr motive, MTmPtr diag, MTmPtr major, MTmPtr path);
    static MTmPtr j_delta(CtxPtr ctx, MotivePtr motive, MotivePtr diag, MEnv args);
    static MTmPtr coh_ref(CtxPtr ctx, TyPtr ty, MEnv args, Name label = {});

    Kind kind() const { return kind_; }
    const Name& name() const { return name_; }
    const MTmPtr& arg() const { return a_; }

    // J
    const MTmPtr& base_point() const { return a_; }
    const MotivePtr& motive() const { return motive_; }
    const MTmPtr& diag() const { return d_; }
    const MTmPtr& major() const { return major_; }
    const MTmPtr& path() const { return path_; }

    // JDelta and CohRef
    const CtxPtr& ctx() const { return ctx_; }
    const TyPtr& ty() const { return ty_; }
    const MotivePtr& diag_motive() const { return diag_motive_; }
    const MEnv& args() const { return args_; }

private:
    Kind kind_ = Kind::Var;
    Name name_;
    MTmPtr a_;
    MotivePtr motive_;
    MTmPtr d_;
    MTmPtr major_;
    MTmPtr path_;
    CtxPtr ctx_;
    TyPtr ty_;
    MotivePtr diag_motive_;
    MEnv args_;
};

/// Simultaneous substitution of terms for variables.
MTmPtr subst(const MTmPtr& t, const std::vector<Name>& names, const MEnv& values);
MTyPtr subst(const MTyPtr& t, const std::vector<Name>& names, const MEnv& values);

/// Instantiates a motive's parameters. Throws std::invalid_argument on arity mismatch.
MTyPtr apply_ty(const Motive& m, const MEnv& args);
MTmPtr apply_tm(const Motive& m, const MEnv& args);

// ---------------------------------------------------------------------------
// Towers and the translation

/// I_n and i_n over the point `a`.
std::pair<MTyPtr, MTmPtr> iterated_tower(const Name& a, int n);

/// id^delta_a. Throws NotContractible.
MEnv diag(const Ctx& delta, const Name& a);

/// The interpretation of a type or term of `ctx` at the values `env`.
MTyPtr elaborate_ty(const Ctx& ctx, const TyPtr& t, const MEnv& env);
MTmPtr elaborate_tm(const Ctx& ctx, const TmPtr& t, const MEnv& env);
MEnv elaborate_mor(const Ctx& src, const CtxMor& gamma, const MEnv& env);

/// The same, abstracted over the variables of `ctx`.
Motive elaborate_ty(const Ctx& ctx, const TyPtr& t);
Motive elaborate_tm(const Ctx& ctx, const TmPtr& t);

/// J_delta(P, d) applied to `args`, unreduced.
MTmPtr j_delta(const CtxPtr& delta, MotivePtr p, MotivePtr d, MEnv args);

// ---------------------------------------------------------------------------
// Normalization

enum class JCorruption {
    None,
    // Test fixture: one J_delta unfolding step passes its last two arguments
    // to J in the wrong order.
    SwapMajorAndPath,
};

struct NormalizeOptions {
    JCorruption corruption = JCorruption::None;
};

MTmPtr normalize(const MTmPtr& t, const NormalizeOptions& opts = {});
MTyPtr normalize(const MTyPtr& t, const NormalizeOptions& opts = {});

/// Equality up to renaming of motive parameters.
bool alpha_eq(const MTmPtr& a, const MTmPtr& b);
bool alpha_eq(const MTyPtr& a, const MTyPtr& b);

/// Every J motive occurring in t (outside other motives' bodies included).
std::vector<MotivePtr> collect_motives(const MTmPtr& t);

std::string to_string(const MTmPtr& t);
std::string to_string(const MTyPtr& t);

/// If t is i_k over a variable, returns k.
std::optional<int> tower_index(const MTmPtr& t);
std::optional<int> tower_index(const MTyPtr& t);

// ---------------------------------------------------------------------------
// The diagonal lemmas

struct LemmaFailure {
    std::string lemma;  // "type", "term" or "morphism"
    std::string subject;
    std::string expected;
    std::string actual;
};

struct LemmaReport {
    int dim = 0;
    std::string term_nf;  // normal form of the coherence at the diagonal
    std::string type_nf;
    std::size_t checks = 0;
    std::vector<LemmaFailure> failures;

    bool ok() const { return failures.empty(); }
};

/// Checks, for a coh declaration, that its type, the coherence itself, every
/// coherence subterm, and every context morphism of a subterm are sent to the
/// towers / the diagonal when evaluated at id^delta_a. Subscripts of nested
/// coherences are checked recursively.
LemmaReport check_diagonal_lemmas(const CheckedDecl& decl, const NormalizeOptions& opts = {});

}  // namespace cohcheck::mltt
