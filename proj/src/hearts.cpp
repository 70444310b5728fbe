#include "torsionlab/hearts.hpp"

#include <algorithm>

namespace torsionlab {

namespace {

Mask dec_mask(const CategoryPtr& cat, const Rep& r) {
    return masks::of_ids(cat->decompose(r));
}

void require_in_ctx(const Context& ctx, const Rep& r, const char* what) {
    if (!masks::subset(dec_mask(ctx.cat, r), ctx.members))
        throw contract_error(std::string(what) + " does not lie in the context");
}

}  // namespace

TwinPair make_twins(const TorsionPair& inner, const TorsionPair& outer) {
    if (!(inner.ctx == outer.ctx)) throw contract_error("twin pairs in different contexts");
    if (!inner.ctx.is_full())
        throw contract_error("twin torsion pairs live in the full abelian context");
    if (!masks::subset(inner.torsion, outer.torsion))
        throw contract_error("twin pairs require nested torsion classes");
    return {inner, outer};
}

TwinPair trivial_twins(const Context& full) {
    return make_twins(make_torsion_pair(full, 0), make_torsion_pair(full, full.members));
}

Context heart(const TwinPair& tw) {
    const Context& amb = tw.inner.ctx;
    Context h;
    h.cat = amb.cat;
    h.outer = tw.outer.torsion;
    h.inner = tw.inner.torsion;
    h.inner_perp = tw.inner.torsionfree;
    h.outer_perp = tw.outer.torsionfree;
    h.members = tw.outer.torsion & tw.inner.torsionfree;
    return h;
}

SubObject kernel_in_heart(const Context& heart_ctx, const RepMor& f) {
    require_in_ctx(heart_ctx, f.src, "kernel source");
    require_in_ctx(heart_ctx, f.tgt, "kernel target");
    SubObject k = ctx_kernel(heart_ctx, f);
    std::string diag;
    if (!kernel_universal(heart_ctx, f, k, heart_ctx.members, &diag))
        throw theorem_violation("heart kernel certification failed: " + diag);
    return k;
}

QuotObject cokernel_in_heart(const Context& heart_ctx, const RepMor& f) {
    require_in_ctx(heart_ctx, f.src, "cokernel source");
    require_in_ctx(heart_ctx, f.tgt, "cokernel target");
    QuotObject q = ctx_cokernel(heart_ctx, f);
    std::string diag;
    if (!cokernel_universal(heart_ctx, f, q, heart_ctx.members, &diag))
        throw theorem_violation("heart cokernel certification failed: " + diag);
    return q;
}

bool is_ses_in_heart(const Context& heart_ctx, const RepMor& f, const RepMor& g) {
    if (!(f.tgt == g.src)) throw contract_error("morphisms are not composable");
    require_in_ctx(heart_ctx, f.src, "first object");
    require_in_ctx(heart_ctx, f.tgt, "middle object");
    require_in_ctx(heart_ctx, g.tgt, "last object");
    bool ambient = is_ses(f, g);

    bool intrinsic = false;
    if (is_zero_mor(compose(g, f))) {
        SubObject k = ctx_kernel(heart_ctx, g);
        QuotObject q = ctx_cokernel(heart_ctx, f);
        // f is (up to iso) the heart kernel of g, and g the heart cokernel of f
        bool f_is_kernel = false;
        if (k.rep.dims() == f.src.dims()) {
            bool solved = true;
            std::vector<Matrix> blocks;
            for (size_t v = 0; v < f.blocks.size(); ++v) {
                auto x = solve(k.incl.blocks[v], f.blocks[v]);
                if (!x || !(k.incl.blocks[v] * *x == f.blocks[v])) {
                    solved = false;
                    break;
                }
                blocks.push_back(*x);
            }
            if (solved) {
                try {
                    RepMor cmp(f.src, k.rep, blocks);
                    f_is_kernel = is_iso(cmp);
                } catch (const contract_error&) {
                    f_is_kernel = false;
                }
            }
        }
        bool g_is_cokernel = false;
        if (q.rep.dims() == g.tgt.dims()) {
            bool solved = true;
            std::vector<Matrix> blocks;
            for (size_t v = 0; v < g.blocks.size(); ++v) {
                // find c with c * q.proj = g
                auto x = solve(q.proj.blocks[v].transpose(), g.blocks[v].transpose());
                if (!x || !(q.proj.blocks[v].transpose() * *x == g.blocks[v].transpose())) {
                    solved = false;
                    break;
                }
                blocks.push_back(x->transpose());
            }
            if (solved) {
                try {
                    RepMor cmp(q.rep, g.tgt, blocks);
                    g_is_cokernel = is_iso(cmp);
                } catch (const contract_error&) {
                    g_is_cokernel = false;
                }
            }
        }
        intrinsic = f_is_kernel && g_is_cokernel;
    }
    if (ambient != intrinsic)
        throw theorem_violation(
            "heart exactness mismatch: ambient and intrinsic characterizations disagree");
    return ambient;
}

Mask star_torsion_members(const TwinPair& tw, Mask t) {
    const Context& amb = tw.inner.ctx;
    Mask out = 0;
    for (int i : masks::ids(amb.members)) {
        auto ses = canonical_ses(amb, tw.inner.torsion, amb.cat->indec(i));
        if (masks::subset(dec_mask(amb.cat, ses.quot.rep), t)) out |= masks::single(i);
    }
    return out;
}

Mask star_torsionfree_members(const TwinPair& tw, Mask f) {
    const Context& amb = tw.inner.ctx;
    Mask out = 0;
    for (int i : masks::ids(amb.members)) {
        SubRep tr = trace_of_class(amb.cat, tw.outer.torsion, amb.cat->indec(i));
        if (masks::subset(dec_mask(amb.cat, tr.rep), f)) out |= masks::single(i);
    }
    return out;
}

TorsionPair bij_forward(const TwinPair& tw, const TorsionPair& ambient) {
    if (!(ambient.ctx == tw.inner.ctx)) throw contract_error("torsion pair in a different context");
    if (!masks::subset(tw.inner.torsion, ambient.torsion) ||
        !masks::subset(ambient.torsion, tw.outer.torsion))
        throw contract_error("torsion class is not sandwiched between the twin classes");
    Context h = heart(tw);
    Mask t = ambient.torsion & tw.inner.torsionfree;
    Mask f = ambient.torsionfree & tw.outer.torsion;
    if (!is_torsion_pair(h, t, f))
        throw theorem_violation("forward image is not a torsion pair in the heart");
    return {h, t, f};
}

TorsionPair bij_backward(const TwinPair& tw, const TorsionPair& heart_pair) {
    Context h = heart(tw);
    if (!(heart_pair.ctx == h)) throw contract_error("torsion pair not in the heart of the twins");
    Mask x = star_torsion_members(tw, heart_pair.torsion);
    Mask y = star_torsionfree_members(tw, heart_pair.torsionfree);
    const Context& amb = tw.inner.ctx;
    if (!is_torsion_pair(amb, x, y))
        throw theorem_violation("backward image is not an ambient torsion pair");
    if (!masks::subset(tw.inner.torsion, x) || !masks::subset(x, tw.outer.torsion))
        throw theorem_violation("backward image is not sandwiched");
    return {amb, x, y};
}

IntervalIso lattice_interval_iso(const TwinPair& tw) {
    IntervalIso iso;
    const Context& amb = tw.inner.ctx;
    Context h = heart(tw);
    for (const auto& tp : enumerate_torsion_classes(amb))
        if (masks::subset(tw.inner.torsion, tp.torsion) &&
            masks::subset(tp.torsion, tw.outer.torsion))
            iso.ambient.push_back(tp);
    iso.heart = enumerate_torsion_classes(h);

    iso.bijective = iso.ambient.size() == iso.heart.size();
    for (const auto& ap : iso.ambient) {
        TorsionPair fwd = bij_forward(tw, ap);
        TorsionPair back = bij_backward(tw, fwd);
        if (back.torsion != ap.torsion || back.torsionfree != ap.torsionfree) {
            iso.bijective = false;
            iso.diagnostics.push_back("roundtrip failed at " + mask_str(amb, ap.torsion));
        }
    }
    for (const auto& hp : iso.heart) {
        TorsionPair back = bij_backward(tw, hp);
        TorsionPair fwd = bij_forward(tw, back);
        if (fwd.torsion != hp.torsion || fwd.torsionfree != hp.torsionfree) {
            iso.bijective = false;
            iso.diagnostics.push_back("heart roundtrip failed at " + mask_str(h, hp.torsion));
        }
    }

    iso.monotone = true;
    iso.lattice_ok = true;
    for (const auto& a1 : iso.ambient)
        for (const auto& a2 : iso.ambient) {
            Mask f1 = bij_forward(tw, a1).torsion;
            Mask f2 = bij_forward(tw, a2).torsion;
            if (masks::subset(a1.torsion, a2.torsion) != masks::subset(f1, f2))
                iso.monotone = false;
            // meet = intersection, join = double perp of the union, on both sides
            Mask amb_meet = a1.torsion & a2.torsion;
            Mask amb_join = perp_left(amb, perp_right(amb, a1.torsion | a2.torsion));
            Mask h_meet = f1 & f2;
            Mask h_join = perp_left(h, perp_right(h, f1 | f2));
            if (bij_forward(tw, make_torsion_pair(amb, amb_meet)).torsion != h_meet)
                iso.lattice_ok = false;
            if (bij_forward(tw, make_torsion_pair(amb, amb_join)).torsion != h_join)
                iso.lattice_ok = false;
        }
    return iso;
}

namespace {

// trace part and torsionfree quotient of the canonical sequence, as plain reps
Rep trace_part(const Context& amb, Mask t, const Rep& m) {
    return trace_of_class(amb.cat, t, m).rep;
}

Rep quot_part(const Context& amb, Mask t, const Rep& m) {
    SubRep tr = trace_of_class(amb.cat, t, m);
    return quotient_rep(m, tr.bases).rep;
}

}  // namespace

RadicalSwitchReport radical_switch_check(const TwinPair& tw, const Rep& m) {
    const Context& amb = tw.inner.ctx;
    const auto& cat = amb.cat;
    Mask c = tw.inner.torsion, cp = tw.outer.torsion;

    RadicalSwitchReport rep;
    // (a) (C' trace of M) mod C  ~=  C' trace of (M mod C)
    rep.a = cat->is_isomorphic(quot_part(amb, c, trace_part(amb, cp, m)),
                               trace_part(amb, cp, quot_part(amb, c, m)));
    // (b) C trace of (M mod C') ~= 0 ~= (C trace of M) mod C'
    rep.b = trace_part(amb, c, quot_part(amb, cp, m)).is_zero() &&
            quot_part(amb, cp, trace_part(amb, c, m)).is_zero();
    // (c) C trace of C' trace ~= C trace ~= C' trace of C trace
    {
        Rep cm = trace_part(amb, c, m);
        rep.c = cat->is_isomorphic(trace_part(amb, c, trace_part(amb, cp, m)), cm) &&
                cat->is_isomorphic(trace_part(amb, cp, cm), cm);
    }
    // (d) (M mod C) mod C' ~= M mod C' ~= (M mod C') mod C
    {
        Rep md = quot_part(amb, cp, m);
        rep.d = cat->is_isomorphic(quot_part(amb, cp, quot_part(amb, c, m)), md) &&
                cat->is_isomorphic(quot_part(amb, c, md), md);
    }
    return rep;
}

ReflectReport reflected_heart(const TwinPair& tw, const TorsionPair& heart_inner,
                              const TorsionPair& heart_outer) {
    Context h = heart(tw);
    if (!(heart_inner.ctx == h) || !(heart_outer.ctx == h))
        throw contract_error("reflected hearts need torsion pairs of the heart");
    if (!masks::subset(heart_inner.torsion, heart_outer.torsion))
        throw contract_error("heart torsion pairs are not nested");
    ReflectReport r;
    r.lhs = heart_outer.torsion & heart_inner.torsionfree;
    r.rhs = star_torsion_members(tw, heart_outer.torsion) &
            star_torsionfree_members(tw, heart_inner.torsionfree);
    return r;
}

RepMor left_approximation(const Context& ctx, Mask s, const Rep& m) {
    Rep target = Rep::zero(ctx.cat->quiver(), ctx.cat->field());
    std::vector<RepMor> rows;  // morphisms m -> indec copies
    for (int i : masks::ids(s))
        for (const auto& phi : hom_basis(m, ctx.cat->indec(i))) rows.push_back(phi);
    RepMor out = zero_mor(m, target);
    for (const auto& phi : rows) {
        SumRep sum = direct_sum(target, phi.tgt);
        out = mor_add(compose(sum.in1, out), compose(sum.in2, phi));
        target = sum.rep;
    }
    return out;
}

RepMor right_approximation(const Context& ctx, Mask s, const Rep& m) {
    Rep source = Rep::zero(ctx.cat->quiver(), ctx.cat->field());
    std::vector<RepMor> cols;
    for (int i : masks::ids(s))
        for (const auto& phi : hom_basis(ctx.cat->indec(i), m)) cols.push_back(phi);
    RepMor out = zero_mor(source, m);
    for (const auto& phi : cols) {
        SumRep sum = direct_sum(source, phi.src);
        out = mor_add(compose(out, sum.pr1), compose(phi, sum.pr2));
        source = sum.rep;
    }
    return out;
}

bool certify_left_approximation(const Context& ctx, Mask s, const RepMor& approx,
                                std::string* diag) {
    for (int i : masks::ids(s)) {
        std::vector<RepMor> candidates;
        for (const auto& b : hom_basis(approx.tgt, ctx.cat->indec(i)))
            candidates.push_back(compose(b, approx));
        for (const auto& phi : hom_basis(approx.src, ctx.cat->indec(i)))
            if (!express_in_basis(candidates, phi)) {
                if (diag)
                    *diag = "map to " + ctx.cat->label(i) + " does not factor through the "
                            "left approximation";
                return false;
            }
    }
    return true;
}

bool certify_right_approximation(const Context& ctx, Mask s, const RepMor& approx,
                                 std::string* diag) {
    for (int i : masks::ids(s)) {
        std::vector<RepMor> candidates;
        for (const auto& b : hom_basis(ctx.cat->indec(i), approx.src))
            candidates.push_back(compose(approx, b));
        for (const auto& phi : hom_basis(ctx.cat->indec(i), approx.tgt))
            if (!express_in_basis(candidates, phi)) {
                if (diag)
                    *diag = "map from " + ctx.cat->label(i) + " does not factor through the "
                            "right approximation";
                return false;
            }
    }
    return true;
}

}  // namespace torsionlab
