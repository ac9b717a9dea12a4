#pragma once

// Core syntax of the coherence type theory: contexts, types (* and u = v),
// terms (variables and coherence applications) and context morphisms.
//
// All nodes are immutable and shared. The subscript (ctx, ty) of a coherence
// node is a closed package: substitution never enters it, and equality treats
// its binders up to renaming.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohcheck/diagnostics.h"

namespace cohcheck {

using Name = std::string;

class Ty;
class Tm;
class Ctx;

using TyPtr = std::shared_ptr<const Ty>;
using TmPtr = std::shared_ptr<const Tm>;
using CtxPtr = std::shared_ptr<const Ctx>;
using CtxMor = std::vector<TmPtr>;

struct Entry {
    Name name;
    TyPtr ty;
};

class Ctx {
public:
    Ctx() = default;
    // Unchecked construction; duplicates are reported by check_context.
    explicit Ctx(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    const Entry& back() const { return entries_.back(); }

    std::optional<std::size_t> index_of(const Name& name) const;
    bool contains(const Name& name) const { return index_of(name).has_value(); }

    /// Appends an entry; throws DuplicateName if `name` is already bound.
    Ctx extend(Name name, TyPtr ty) const;
    Ctx prefix(std::size_t n) const;

private:
    std::vector<Entry> entries_;
};

class Ty {
public:
    static TyPtr star();
    static TyPtr hom(TyPtr base, TmPtr lhs, TmPtr rhs);

    bool is_star() const { return base_ == nullptr; }
    bool is_hom() const { return base_ != nullptr; }
    const TyPtr& base() const { return base_; }
    const TmPtr& lhs() const { return lhs_; }
    const TmPtr& rhs() const { return rhs_; }

private:
    TyPtr base_;
    TmPtr lhs_;
    TmPtr rhs_;
};

class Tm {
public:
    static TmPtr var(Name name);
    /// coh_{ctx.ty}(args). `label` is a display name only and never affects equality.
    static TmPtr coh(CtxPtr ctx, TyPtr ty, CtxMor args, Name label = {});

    bool is_var() const { return ctx_ == nullptr; }
    bool is_coh() const { return ctx_ != nullptr; }
    const Name& name() const { return name_; }
    const CtxPtr& ctx() const { return ctx_; }
    const TyPtr& ty() const { return ty_; }
    const CtxMor& args() const { return args_; }
    const Name& label() const { return label_; }

    TmPtr with_args(CtxMor args) const;

private:
    Name name_;
    CtxPtr ctx_;
    TyPtr ty_;
    CtxMor args_;
    Name label_;
};

// ---------------------------------------------------------------------------
// Structural operations

using NameSet = std::set<Name>;

/// Names occurring outside every coherence subscript.
NameSet free_vars(const TmPtr& t);
NameSet free_vars(const TyPtr& t);
NameSet free_vars(const CtxMor& m);

/// Simultaneous substitution X[gamma/ctx]. Coherence subscripts are shared,
/// never rebuilt. Throws UnboundVariable / ArityMismatch.
TmPtr substitute(const TmPtr& t, const CtxMor& gamma, const Ctx& ctx);
TyPtr substitute(const TyPtr& t, const CtxMor& gamma, const Ctx& ctx);
CtxMor substitute(const CtxMor& m, const CtxMor& gamma, const Ctx& ctx);

/// pi_x^ctx(gamma): the component of gamma at the position of x.
TmPtr project(const CtxMor& gamma, const Ctx& ctx, const Name& x);

/// Coherence subterms outside every subscript, innermost first, without
/// duplicates (by node identity).
std::vector<TmPtr> coh_subterms(const TmPtr& t);
std::vector<TmPtr> coh_subterms(const TyPtr& t);
void collect_coh_subterms(const TmPtr& t, std::vector<TmPtr>& out);
void collect_coh_subterms(const TyPtr& t, std::vector<TmPtr>& out);

/// The identity morphism (x1, ..., xn) on ctx.
CtxMor identity_morphism(const Ctx& ctx);

int depth(const TmPtr& t);
int depth(const TyPtr& t);
int depth(const CtxMor& m);
int depth(const Ctx& ctx);

/// Number of = layers in a type.
int dim(const TyPtr& t);

/// Renames the binders of every coherence subscript to v0, v1, ...
TmPtr alpha_canonicalize(const TmPtr& t);
TyPtr alpha_canonicalize(const TyPtr& t);
CtxMor alpha_canonicalize(const CtxMor& m);
Ctx alpha_canonicalize(const Ctx& ctx);

/// Exact structural identity, binders included. Labels are ignored.
bool structurally_equal(const TmPtr& a, const TmPtr& b);
bool structurally_equal(const TyPtr& a, const TyPtr& b);
bool structurally_equal(const CtxMor& a, const CtxMor& b);
bool structurally_equal(const Ctx& a, const Ctx& b);

/// Equality up to renaming of subscript binders.
bool syntactic_eq(const TmPtr& a, const TmPtr& b);
bool syntactic_eq(const TyPtr& a, const TyPtr& b);
bool syntactic_eq(const CtxMor& a, const CtxMor& b);
bool syntactic_eq(const Ctx& a, const Ctx& b);

// ---------------------------------------------------------------------------
// Printing

enum class BaseDisplay {
    Inferred,  // u = v
    Explicit,  // u =[T] v
};

/// Coherence nodes with a label print as label(args); unlabelled ones as
/// coh[(ctx) : ty](args).
std::string to_string(const TmPtr& t, BaseDisplay mode = BaseDisplay::Inferred);
std::string to_string(const TyPtr& t, BaseDisplay mode = BaseDisplay::Inferred);
std::string to_string(const Ctx& ctx, BaseDisplay mode = BaseDisplay::Inferred);
std::string to_string(const CtxMor& m, BaseDisplay mode = BaseDisplay::Inferred);

}  // namespace cohcheck
