#pragma once

#include <optional>
#include <vector>

#include "torsionlab/matrix.hpp"
#include "torsionlab/quiver.hpp"

namespace torsionlab {

// Finite-dimensional representation of a quiver: one vector space per vertex,
// one matrix per arrow (target-dim x source-dim). Immutable.
class Rep {
  public:
    Rep(QuiverPtr q, Field f, std::vector<int> dims, std::vector<Matrix> maps);
    static Rep zero(QuiverPtr q, Field f);

    const QuiverPtr& quiver() const { return q_; }
    const Field& field() const { return f_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int v) const { return dims_[v]; }
    int total_dim() const;
    const Matrix& map(int arrow) const { return maps_[arrow]; }
    bool is_zero() const { return total_dim() == 0; }

    bool same_shape(const Rep& o) const;  // same quiver and field

    friend bool operator==(const Rep& a, const Rep& b) {
        return *a.q_ == *b.q_ && a.f_ == b.f_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
    }

  private:
    QuiverPtr q_;
    Field f_;
    std::vector<int> dims_;
    std::vector<Matrix> maps_;
};

// Morphism of representations: per-vertex blocks satisfying the commuting
// square constraint over every arrow. Validated at construction.
struct RepMor {
    Rep src, tgt;
    std::vector<Matrix> blocks;  // per vertex: dim tgt_v x dim src_v

    RepMor(Rep s, Rep t, std::vector<Matrix> b);
    const Matrix& block(int v) const { return blocks[v]; }

    friend bool operator==(const RepMor&, const RepMor&) = default;
};

RepMor identity_mor(const Rep& m);
RepMor zero_mor(const Rep& src, const Rep& tgt);
RepMor compose(const RepMor& g, const RepMor& f);  // g after f
RepMor mor_add(const RepMor& f, const RepMor& g);
RepMor mor_sub(const RepMor& f, const RepMor& g);
RepMor mor_scale(const Scalar& c, const RepMor& f);
bool is_zero_mor(const RepMor& f);
bool is_mono(const RepMor& f);  // all blocks injective
bool is_epi(const RepMor& f);
bool is_iso(const RepMor& f);
RepMor inverse_iso(const RepMor& f);

// Basis of Hom(M, N), the solution space of all commuting-square constraints,
// in a deterministic order.
std::vector<RepMor> hom_basis(const Rep& m, const Rep& n);
int hom_dim(const Rep& m, const Rep& n);

// All elements of Hom(M, N) over a finite field (coefficient sweep over the
// hom basis); refused above the cap.
std::vector<RepMor> hom_all(const Rep& m, const Rep& n, long long cap = 1 << 16);

// Coordinates of f in hom_basis(f.src, f.tgt), if the spaces match.
std::optional<std::vector<Scalar>> express_in_basis(const std::vector<RepMor>& basis,
                                                    const RepMor& f);

// Subrepresentation, canonical form: per-vertex RREF row bases closed under
// the arrow maps, together with the subobject as a representation and its
// inclusion.
struct SubRep {
    std::vector<Matrix> bases;  // k_v x d_v, RREF rows
    Rep rep;
    RepMor incl;
};

// Builds the canonical subrepresentation on the given vertex subspaces.
// Throws if the subspaces are not closed under the arrow maps.
SubRep sub_rep(const Rep& m, const std::vector<Matrix>& vertex_bases);
SubRep full_sub(const Rep& m);
SubRep zero_sub(const Rep& m);

struct QuotRep {
    Rep rep;
    RepMor proj;
};

QuotRep quotient_rep(const Rep& m, const std::vector<Matrix>& sub_bases);

SubRep kernel(const RepMor& f);   // subrep of f.src
SubRep image(const RepMor& f);    // subrep of f.tgt
QuotRep cokernel(const RepMor& f);

// Corestriction of f onto a subrepresentation of the target containing im f.
RepMor corestrict(const RepMor& f, const SubRep& sub_of_tgt);

// Induced morphism on subobjects: requires f(U) <= V.
RepMor restrict_mor(const RepMor& f, const SubRep& u_in_src, const SubRep& v_in_tgt);

// Vertex bases of f(U) and of f^{-1}(V).
std::vector<Matrix> image_bases(const RepMor& f, const std::vector<Matrix>& u);
std::vector<Matrix> preimage_bases(const RepMor& f, const std::vector<Matrix>& v);

// U <= V as subspace tuples of the same ambient.
bool sub_contained(const std::vector<Matrix>& u, const std::vector<Matrix>& v);
std::vector<Matrix> sub_sum(const std::vector<Matrix>& u, const std::vector<Matrix>& v);

struct SumRep {
    Rep rep;
    RepMor in1, in2, pr1, pr2;
};
SumRep direct_sum(const Rep& a, const Rep& b);

// Short exact sequence 0 -> A -> B -> C -> 0 given by (mono, epi).
struct SES {
    RepMor mono, epi;
};
bool is_ses(const RepMor& mono, const RepMor& epi);

// Conjugates every arrow map by the given per-vertex invertible matrices; the
// result is isomorphic to m. Test support for basis-independence properties.
Rep transport(const Rep& m, const std::vector<Matrix>& p);

}  // namespace torsionlab
