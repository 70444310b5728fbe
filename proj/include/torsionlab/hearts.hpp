#pragma once

#include "torsionlab/subcat.hpp"

namespace torsionlab {

// Nested pair of torsion pairs [(C, D), (C', D')] with C inside C', in the
// full abelian context. Their heart is the additive subcategory C' n D.
struct TwinPair {
    TorsionPair inner;  // (C, D)
    TorsionPair outer;  // (C', D')
};

TwinPair make_twins(const TorsionPair& inner, const TorsionPair& outer);
TwinPair trivial_twins(const Context& full);  // [(0, A), (A, 0)]: heart = A

// The heart as a context usable by every subcat operation.
Context heart(const TwinPair& tw);

// Kernel/cokernel calculus of the heart: outer trace of the ambient kernel,
// inner-torsionfree quotient of the ambient cokernel. Certified by the
// universal property against all heart indecomposables.
SubObject kernel_in_heart(const Context& heart_ctx, const RepMor& f);
QuotObject cokernel_in_heart(const Context& heart_ctx, const RepMor& f);

// True iff (f, g) is a short exact sequence in the heart. Computed two ways
// (ambient exactness, and f = ker(g) with g = coker(f) in the heart) which
// must agree.
bool is_ses_in_heart(const Context& heart_ctx, const RepMor& f, const RepMor& g);

// The torsion pair bijection between the sandwiched interval of ambient
// torsion pairs and the torsion pairs of the heart.
TorsionPair bij_forward(const TwinPair& tw, const TorsionPair& ambient);
TorsionPair bij_backward(const TwinPair& tw, const TorsionPair& heart_pair);

// Member sets of C * T and F * D' for a heart torsion class T / torsionfree
// class F, computed indecomposable by indecomposable via the canonical
// quotient / trace criteria.
Mask star_torsion_members(const TwinPair& tw, Mask t);
Mask star_torsionfree_members(const TwinPair& tw, Mask f);

struct IntervalIso {
    std::vector<TorsionPair> ambient;  // sandwiched pairs, enumeration order
    std::vector<TorsionPair> heart;    // heart pairs, enumeration order
    bool bijective = false;
    bool monotone = false;
    bool lattice_ok = false;  // meets and joins correspond
    std::vector<std::string> diagnostics;
    bool ok() const { return bijective && monotone && lattice_ok; }
};

IntervalIso lattice_interval_iso(const TwinPair& tw);

struct RadicalSwitchReport {
    bool a = false, b = false, c = false, d = false;
    bool ok() const { return a && b && c && d; }
};

// Verifies the four trace/quotient exchange identities for m.
RadicalSwitchReport radical_switch_check(const TwinPair& tw, const Rep& m);

struct ReflectReport {
    Mask lhs = 0, rhs = 0;
    bool ok() const { return lhs == rhs; }
};

// For twin torsion pairs [(T, F), (T', F')] inside the heart of tw, compares
// T' n F with (C * T') n (F * D') as ambient member sets.
ReflectReport reflected_heart(const TwinPair& tw, const TorsionPair& heart_inner,
                              const TorsionPair& heart_outer);

// Multiplicity-graded evaluation approximations: left is m -> sum of members
// receiving all of Hom(m, -), right is the dual. Certified by factoring every
// hom basis element through them.
RepMor left_approximation(const Context& ctx, Mask s, const Rep& m);
RepMor right_approximation(const Context& ctx, Mask s, const Rep& m);
bool certify_left_approximation(const Context& ctx, Mask s, const RepMor& approx,
                                std::string* diag = nullptr);
bool certify_right_approximation(const Context& ctx, Mask s, const RepMor& approx,
                                 std::string* diag = nullptr);

}  // namespace torsionlab
