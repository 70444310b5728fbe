#pragma once

#include "torsionlab/subcat.hpp"

namespace torsionlab {

// The category of monomorphisms of a heart Q: objects are maps f: X0 -> X1
// between context objects with vanishing context kernel, morphisms are
// commutative squares taken modulo homotopy. Zero objects are the invertible
// monos. This is the calculus underlying the left associated abelian
// category; the localization itself is not materialized.
struct MonoObj {
    Context ctx;
    RepMor f;
};

// Validates membership of both ends and vanishing of the context kernel.
MonoObj make_mono_obj(const Context& ctx, const RepMor& f);
MonoObj embed(const Context& ctx, const Rep& x);  // (0 -> x)
bool is_zero_mono_obj(const MonoObj& a);          // f invertible

struct SquareMor {
    MonoObj src, tgt;
    RepMor alpha;  // X0 -> Y0
    RepMor beta;   // X1 -> Y1
};

SquareMor make_square(const MonoObj& src, const MonoObj& tgt, const RepMor& alpha,
                      const RepMor& beta);
SquareMor identity_square(const MonoObj& a);
SquareMor zero_square(const MonoObj& src, const MonoObj& tgt);
SquareMor compose_squares(const SquareMor& g, const SquareMor& f);
SquareMor square_sub(const SquareMor& f, const SquareMor& g);
bool is_iso_square(const SquareMor& m);  // both components invertible

// Null-homotopy: a single linear solvability condition (tgt.f h = beta).
bool is_null_homotopic(const SquareMor& m);

// Hom space between mono objects modulo homotopy.
int hom_square_dim(const MonoObj& a, const MonoObj& b);

struct MonoKernel {
    MonoObj obj;
    SquareMor mor;  // into the source of m (kernel) / out of the target (cokernel)
};

// Kernel via the pullback of (beta, tgt.f); cokernel via the pushout of the
// pullback legs. Certified against the test family {(0 -> Z), (Z = Z)} over
// all context indecomposables; failure throws theorem_violation.
MonoKernel kernel_mono(const SquareMor& m);
MonoKernel cokernel_mono(const SquareMor& m);

// Regular = monic and epic = kernel and cokernel both vanish.
bool is_regular(const SquareMor& m);

struct SquareFactorization {
    SquareMor coker_part;    // f -> u
    SquareMor regular_part;  // u -> p
    SquareMor kernel_part;   // p -> f'
};

// Cokernel-regular-kernel factorization; the composite equals m and the
// middle part passes is_regular.
SquareFactorization factorize(const SquareMor& m);

}  // namespace torsionlab
