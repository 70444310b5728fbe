#pragma once

#include "torsionlab/hearts.hpp"

namespace torsionlab {

// Chain of torsion classes: an order-reversing step function from [0,1] to
// the torsion classes of the context. Stored as its restriction to (0,1):
// classes[k] is the value on [b_k, b_{k+1}) intersected with (0,1); the
// endpoint values are definitional (the whole context at 0, zero at 1), which
// is exactly what makes images of the heart-chain embedding representable.
// Interval classes strictly decrease, so equal neighbours are merged at
// construction and representation is canonical.
struct Chain {
    Context ctx;
    std::vector<Rat> breakpoints;  // 0 = b_0 < b_1 < ... < b_m = 1
    std::vector<Mask> classes;     // size m
};

Chain make_chain(const Context& ctx, std::vector<Rat> breakpoints, std::vector<Mask> classes);

// Step lookups. eta_left is the value just below r (r in (0,1]), eta_right
// just above (r in [0,1)).
Mask eta_left(const Chain& c, const Rat& r);
Mask eta_right(const Chain& c, const Rat& r);

struct Slice {
    Rat r;
    Mask members = 0;
};

// The semistable class at parameter r: everything torsion below r and
// torsionfree above r.
Slice slice(const Chain& c, const Rat& r);

// Extension-closure fixpoint via pairwise middle terms.
Mask filt_closure(const Context& ctx, Mask s);

// Objects torsion below a and torsionfree above b; cross-checked against the
// extension closure of the union of slices in [a, b] (disagreement throws).
Mask interval_heart(const Chain& c, const Rat& a, const Rat& b);

struct HNFiltration {
    std::vector<SubRep> steps;  // M_1 < ... < M_n = M as subobjects of M
    std::vector<Rat> labels;    // strictly decreasing
    std::vector<Rep> factors;   // M_k / M_{k-1}
};

// Greedy peeling of maximal-phase traces; certified against the two defining
// conditions (factors in strictly decreasing slices).
HNFiltration hn_filtration(const Chain& c, const Rep& m);

// Brute-force uniqueness oracle: enumerates every filtration with slice
// factors and strictly decreasing labels through the subobject lattice and
// checks that exactly one exists up to stepwise isomorphism, matching the
// greedy result.
bool hn_unique_check(const Chain& c, const Rep& m);

// Pseudometric on chains: smallest candidate epsilon for which each slice of
// either chain is contained in the other's epsilon-window interval heart.
Rat distance(const Chain& a, const Chain& b);

// Ambient image of a heart chain: interior classes C * T_i.
Chain phi_embed(const TwinPair& tw, const Chain& heart_chain);

struct SlicingReport {
    bool at_zero = false, interior = false, at_one = false;
    std::vector<std::string> diagnostics;
    bool ok() const { return at_zero && interior && at_one; }
};

// Verifies that slices of the embedded chain match the heart slices (star
// completions at the endpoints).
SlicingReport slicing_identity_check(const TwinPair& tw, const Chain& heart_chain);

// Is the ambient chain in the closed image of the heart-chain embedding?
// When exhaustive_witness is set, a negative answer is backed by checking
// positive distance to every heart chain on the same breakpoints.
bool closedness_check(const TwinPair& tw, const Chain& ambient_chain,
                      bool exhaustive_witness = false);

// Torsion pairs induced by a chain at parameter r (union/intersection
// classes); both must satisfy the torsion pair predicate.
bool union_intersection_pairs_ok(const Chain& c, const Rat& r);

}  // namespace torsionlab
