#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torsionlab/category.hpp"

namespace torsionlab {

// Additive subcategories are identified with sets of indecomposables, stored
// as bitmasks over the canonical table (a set of indecomposables IS its
// add-closure). Categories with more than 64 indecomposables are refused by
// the mask layer.
using Mask = std::uint64_t;

namespace masks {
inline bool contains(Mask m, int id) { return (m >> id) & 1u; }
inline Mask single(int id) { return Mask{1} << id; }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
int count(Mask m);
std::vector<int> ids(Mask m);
Mask of_ids(const std::vector<int>& ids);
}  // namespace masks

// Ambient exact substructure in which torsion-theoretic operations run:
// either the full abelian module category, or the heart of a pair of nested
// torsion pairs. Kernels in the context are outer-trace-corrected ambient
// kernels; cokernels are inner-quotient-corrected ambient cokernels. The
// full-abelian case is the degenerate one (outer = everything, inner = 0).
struct Context {
    CategoryPtr cat;
    Mask members = 0;     // indecomposables belonging to the context
    Mask outer = 0;       // ambient torsion class C' (kernel correction)
    Mask inner = 0;       // ambient torsion class C  (cokernel correction)
    Mask inner_perp = 0;  // D  = C^perp in the ambient category
    Mask outer_perp = 0;  // D' = C'^perp

    bool is_full() const;
    static Context full(CategoryPtr cat);

    friend bool operator==(const Context& a, const Context& b) {
        return a.cat == b.cat && a.members == b.members && a.outer == b.outer &&
               a.inner == b.inner;
    }
};

Mask all_mask(const ModuleCategory& cat);

std::string mask_str(const Context& ctx, Mask m);  // sorted label list

// Hom-orthogonal complements inside the context.
Mask perp_right(const Context& ctx, Mask s);
Mask perp_left(const Context& ctx, Mask s);

struct TorsionPair {
    Context ctx;
    Mask torsion = 0;
    Mask torsionfree = 0;
};

bool is_torsion_pair(const Context& ctx, Mask t, Mask f);

// Torsion pair generated by a torsion class; throws contract_error if the
// class is not double-perp closed.
TorsionPair make_torsion_pair(const Context& ctx, Mask t);

// All torsion pairs of the context, via double perp over subsets, sorted by
// (size, lexicographic member order).
std::vector<TorsionPair> enumerate_torsion_classes(const Context& ctx);

// Monomorphism into / epimorphism out of an ambient object.
struct SubObject {
    Rep rep;
    RepMor incl;
};
struct QuotObject {
    Rep rep;
    RepMor proj;
};

// Kernel and cokernel of a morphism between context objects, computed in the
// context. For the full abelian context these are the plain ambient ones.
SubObject ctx_kernel(const Context& ctx, const RepMor& f);
QuotObject ctx_cokernel(const Context& ctx, const RepMor& f);

// Largest subobject of m lying in the class with member mask t (sum of
// images, iterated to a fixpoint). The public trace requires t to be a
// torsion class of the context; trace_of_class is the raw construction.
SubRep trace_of_class(const CategoryPtr& cat, Mask t, const Rep& m);
SubRep trace(const Context& ctx, Mask t, const Rep& m);

struct CanonicalSES {
    SubRep sub;     // tM -> M
    QuotRep quot;   // M -> M/tM
};

// 0 -> tM -> M -> M/tM -> 0 with tM in T and M/tM in T^perp; verified.
CanonicalSES canonical_ses(const Context& ctx, Mask t, const Rep& m);

// Closure predicates, stated with context kernels/cokernels (quotients mean
// cokernel maps, subobjects mean kernel maps; in the abelian case these are
// the familiar notions).
bool is_quotient_closed(const Context& ctx, Mask s);
bool is_sub_closed(const Context& ctx, Mask s);
// Pairwise indecomposable-ends extension closure.
bool is_extension_closed(const Context& ctx, Mask s);
// Bounded direct-sum oracle (ends: sums of <= 2 members, multiplicity <= 2).
// Returns diagnostics for closures missed by the pairwise check; empty means
// the two routes agree.
std::vector<std::string> extension_closure_oracle(const Context& ctx, Mask s);

// Torsion classes enumerated by closure checking instead of double perp
// (valid in abelian contexts); used as the independent cross-method oracle.
std::vector<Mask> closure_torsion_classes(const Context& ctx,
                                          std::vector<std::string>* diagnostics = nullptr);

// Membership of m in X * Y: some context subobject of m lies in X with
// quotient in Y. Fast path via the torsion quotient when X is an ambient
// torsion class with Y inside its perp; general path via the subobject
// oracle.
bool star_membership(const Context& ctx, Mask x, Mask y, const Rep& m);

// Universal property certifications against a family of test
// indecomposables: every morphism from (resp. to) a test object that f kills
// must factor uniquely through the candidate.
bool kernel_universal(const Context& ctx, const RepMor& f, const SubObject& k, Mask tests,
                      std::string* diag = nullptr);
bool cokernel_universal(const Context& ctx, const RepMor& f, const QuotObject& q, Mask tests,
                        std::string* diag = nullptr);

struct IntersectionResult {
    Mask members = 0;
    bool certified = false;
    std::vector<std::string> diagnostics;
};

// Intersection of two torsion classes. In an abelian context certifies that
// the intersection is again a torsion class; in a heart certifies that the
// intersection admits kernels and cokernels (universal property against all
// context indecomposables).
IntersectionResult intersect_torsion_classes(const TorsionPair& a, const TorsionPair& b);

}  // namespace torsionlab
