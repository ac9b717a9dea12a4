#pragma once

// Finite strict globular models with forced coherences, the interpretation
// of contexts, types and terms in them, and exhaustive checks of the
// semantic weakening and substitution equations.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohcheck/checker.h"
#include "cohcheck/syntax.h"

namespace cohcheck::glob {

class Cell;
using CellPtr = std::shared_ptr<const Cell>;

/// A cell is either an object (a carrier index) or an arrow between two
/// parallel cells. Equality is structural.
class Cell {
public:
    static CellPtr object(int index);
    static CellPtr arrow(CellPtr src, CellPtr tgt);

    bool is_object() const { return src_ == nullptr; }
    int index() const { return index_; }
    const CellPtr& src() const { return src_; }
    const CellPtr& tgt() const { return tgt_; }
    int dim() const { return dim_; }

private:
    int index_ = 0;
    int dim_ = 0;
    CellPtr src_;
    CellPtr tgt_;
};

int compare(const Cell& a, const Cell& b);
inline bool operator==(const Cell& a, const Cell& b) { return compare(a, b) == 0; }
bool same(const CellPtr& a, const CellPtr& b);
std::string to_string(const CellPtr& c);

/// The n-fold identity on object 0.
CellPtr tower_cell(int n);

using Env = std::vector<CellPtr>;

/// The cells over a boundary: all objects, or all arrows src -> tgt.
struct Fiber {
    CellPtr src;
    CellPtr tgt;

    bool is_objects() const { return src == nullptr; }
};

bool operator==(const Fiber& a, const Fiber& b);
std::string to_string(const Fiber& f);

class GlobModel {
public:
    virtual ~GlobModel() = default;

    virtual std::string descriptor() const = 0;
    virtual std::vector<CellPtr> objects() const = 0;
    /// Arrows between two parallel cells.
    virtual std::vector<CellPtr> hom(const CellPtr& x, const CellPtr& y) const = 0;
    /// Maximal depth of coherences the model interprets; nullopt for all.
    virtual std::optional<int> supported_depth() const { return std::nullopt; }
    /// Interpretation of coh_{delta.ty} at env. The default returns the
    /// unique cell of the fiber and throws HookFailure otherwise.
    virtual CellPtr coh(const Ctx& delta, const TyPtr& ty, const Env& env, const Fiber& fiber) const;

    std::vector<CellPtr> cells(const Fiber& f) const;
};

class DiscreteModel : public GlobModel {
public:
    explicit DiscreteModel(int size);
    std::string descriptor() const override;
    std::vector<CellPtr> objects() const override;
    std::vector<CellPtr> hom(const CellPtr& x, const CellPtr& y) const override;

private:
    int size_;
};

class CodiscreteModel : public GlobModel {
public:
    explicit CodiscreteModel(int size);
    std::string descriptor() const override;
    std::vector<CellPtr> objects() const override;
    std::vector<CellPtr> hom(const CellPtr& x, const CellPtr& y) const override;

private:
    int size_;
};

/// "discrete:N" or "codiscrete:N" with 1 <= N <= 9. Throws
/// std::invalid_argument on a malformed descriptor and EmptyCarrier for N = 0.
std::unique_ptr<GlobModel> make_model(const std::string& descriptor);

/// Checks s.s = s.t and t.s = t.t on every cell up to dimension `bound`.
bool check_globularity(const GlobModel& g, int bound);

// ---------------------------------------------------------------------------
// Interpretation

std::vector<Env> interp_ctx(const GlobModel& g, const Ctx& ctx);
Fiber interp_ty(const GlobModel& g, const Ctx& ctx, const TyPtr& t, const Env& env);
CellPtr interp_tm(const GlobModel& g, const Ctx& ctx, const TmPtr& t, const Env& env);
Env interp_mor(const GlobModel& g, const Ctx& src, const CtxMor& gamma, const Env& env);

// ---------------------------------------------------------------------------
// Semantic lemmas

struct SemanticOptions {
    // Replaceable so that tests can check that a wrong substitution is caught.
    std::function<TyPtr(const TyPtr&, const CtxMor&, const Ctx&)> substitute_ty;
    std::function<TmPtr(const TmPtr&, const CtxMor&, const Ctx&)> substitute_tm;
};

struct SemanticFailure {
    std::string lemma;  // "variables", "weakening", "substitution", "projection", "singleton"
    std::string decl;
    std::string env;
    std::string detail;
};

struct SemanticReport {
    std::string model;
    std::size_t contexts = 0;
    std::size_t env_checks = 0;
    std::size_t equations = 0;
    std::size_t singleton_checks = 0;
    bool globular = false;
    std::vector<SemanticFailure> failures;

    bool ok() const { return globular && failures.empty(); }
};

SemanticReport check_semantic_lemmas(const GlobModel& g, const std::vector<DeclPtr>& decls,
                                     const SemanticOptions& opts = {});

}  // namespace cohcheck::glob
