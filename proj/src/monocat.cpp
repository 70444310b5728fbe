#include "torsionlab/monocat.hpp"

namespace torsionlab {

namespace {

Mask dec_mask(const CategoryPtr& cat, const Rep& r) {
    return masks::of_ids(cat->decompose(r));
}

}  // namespace

MonoObj make_mono_obj(const Context& ctx, const RepMor& f) {
    if (!masks::subset(dec_mask(ctx.cat, f.src), ctx.members) ||
        !masks::subset(dec_mask(ctx.cat, f.tgt), ctx.members))
        throw contract_error("mono object endpoints must lie in the context");
    if (ctx_kernel(ctx, f).rep.total_dim() != 0)
        throw contract_error("differential has a nonzero context kernel");
    return {ctx, f};
}

MonoObj embed(const Context& ctx, const Rep& x) {
    Rep z = Rep::zero(x.quiver(), x.field());
    return make_mono_obj(ctx, zero_mor(z, x));
}

bool is_zero_mono_obj(const MonoObj& a) { return is_iso(a.f); }

SquareMor make_square(const MonoObj& src, const MonoObj& tgt, const RepMor& alpha,
                      const RepMor& beta) {
    if (!(alpha.src == src.f.src) || !(alpha.tgt == tgt.f.src) || !(beta.src == src.f.tgt) ||
        !(beta.tgt == tgt.f.tgt))
        throw contract_error("square endpoints mismatch");
    if (!(compose(tgt.f, alpha) == compose(beta, src.f)))
        throw contract_error("square does not commute");
    return {src, tgt, alpha, beta};
}

SquareMor identity_square(const MonoObj& a) {
    return make_square(a, a, identity_mor(a.f.src), identity_mor(a.f.tgt));
}

SquareMor zero_square(const MonoObj& src, const MonoObj& tgt) {
    return make_square(src, tgt, zero_mor(src.f.src, tgt.f.src),
                       zero_mor(src.f.tgt, tgt.f.tgt));
}

SquareMor compose_squares(const SquareMor& g, const SquareMor& f) {
    return make_square(f.src, g.tgt, compose(g.alpha, f.alpha), compose(g.beta, f.beta));
}

SquareMor square_sub(const SquareMor& f, const SquareMor& g) {
    return make_square(f.src, f.tgt, mor_sub(f.alpha, g.alpha), mor_sub(f.beta, g.beta));
}

bool is_iso_square(const SquareMor& m) { return is_iso(m.alpha) && is_iso(m.beta); }

bool is_null_homotopic(const SquareMor& m) {
    // beta in the image of h |-> tgt.f h; alpha is then matched automatically
    std::vector<RepMor> candidates;
    for (const auto& h : hom_basis(m.src.f.tgt, m.tgt.f.src))
        candidates.push_back(compose(m.tgt.f, h));
    return express_in_basis(candidates, m.beta).has_value();
}

namespace {

// Commuting pairs (alpha, beta): W -> V as a coefficient space, plus the
// homotopy subspace, in raw vectorized coordinates.
struct PairSpace {
    std::vector<std::pair<RepMor, RepMor>> basis;
    Matrix vecs;      // one row per basis pair
    Matrix homotopy;  // row space of null-homotopic pairs
    int dim = 0;      // vectorized length
};

int pair_vec_dim(const MonoObj& w, const MonoObj& v) {
    int d = 0;
    const auto& q = *w.f.src.quiver();
    for (int vert = 0; vert < q.vertices(); ++vert) {
        d += v.f.src.dim(vert) * w.f.src.dim(vert);
        d += v.f.tgt.dim(vert) * w.f.tgt.dim(vert);
    }
    return d;
}

Matrix vec_pair(const MonoObj& w, const MonoObj& v, const RepMor& alpha, const RepMor& beta) {
    Matrix out(alpha.src.field(), 1, pair_vec_dim(w, v));
    int k = 0;
    for (const auto& b : alpha.blocks)
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) out.at(0, k++) = b.at(i, j);
    for (const auto& b : beta.blocks)
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) out.at(0, k++) = b.at(i, j);
    return out;
}

PairSpace pair_space(const MonoObj& w, const MonoObj& v) {
    const Field f = w.f.src.field();
    auto ha = hom_basis(w.f.src, v.f.src);
    auto hb = hom_basis(w.f.tgt, v.f.tgt);
    // constraint: v.f alpha = beta w.f in Hom(W0, V1)
    std::vector<RepMor> cols;
    for (const auto& a : ha) cols.push_back(compose(v.f, a));
    for (const auto& b : hb) cols.push_back(mor_scale(-scalar_one(f), compose(b, w.f)));
    int target_dim = 0;
    for (int vert = 0; vert < w.f.src.quiver()->vertices(); ++vert)
        target_dim += v.f.tgt.dim(vert) * w.f.src.dim(vert);
    Matrix sys(f, target_dim, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        int r = 0;
        for (const auto& blk : cols[c].blocks)
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) sys.at(r++, static_cast<int>(c)) = blk.at(i, j);
    }
    Matrix null = kernel_basis(sys);
    PairSpace ps;
    ps.dim = pair_vec_dim(w, v);
    ps.vecs = Matrix(f, 0, ps.dim);
    for (int c = 0; c < null.cols(); ++c) {
        RepMor alpha = zero_mor(w.f.src, v.f.src);
        RepMor beta = zero_mor(w.f.tgt, v.f.tgt);
        for (size_t i = 0; i < ha.size(); ++i)
            if (!null.at(static_cast<int>(i), c).is_zero())
                alpha = mor_add(alpha, mor_scale(null.at(static_cast<int>(i), c), ha[i]));
        for (size_t j = 0; j < hb.size(); ++j)
            if (!null.at(static_cast<int>(ha.size() + j), c).is_zero())
                beta = mor_add(beta, mor_scale(null.at(static_cast<int>(ha.size() + j), c), hb[j]));
        ps.vecs = Matrix::vstack(ps.vecs, vec_pair(w, v, alpha, beta));
        ps.basis.emplace_back(std::move(alpha), std::move(beta));
    }
    Matrix hrows(f, 0, ps.dim);
    for (const auto& t : hom_basis(w.f.tgt, v.f.src))
        hrows = Matrix::vstack(hrows, vec_pair(w, v, compose(t, w.f), compose(v.f, t)));
    ps.homotopy = row_space(hrows);
    return ps;
}

std::vector<MonoObj> test_family(const Context& ctx) {
    std::vector<MonoObj> tests;
    for (int z : masks::ids(ctx.members)) {
        tests.push_back(embed(ctx, ctx.cat->indec(z)));
        tests.push_back(make_mono_obj(ctx, identity_mor(ctx.cat->indec(z))));
    }
    return tests;
}

struct PullbackData {
    Rep a;
    RepMor u;  // a -> Y
    RepMor v;  // a -> X'
    RepMor r;  // X -> a
};

PullbackData square_pullback(const SquareMor& m) {
    const Context& ctx = m.src.ctx;
    const Rep& y = m.src.f.tgt;
    const Rep& xp = m.tgt.f.src;
    SumRep s = direct_sum(y, xp);
    RepMor d = mor_sub(compose(m.beta, s.pr1), compose(m.tgt.f, s.pr2));
    SubObject a = ctx_kernel(ctx, d);
    RepMor u = compose(s.pr1, a.incl);
    RepMor v = compose(s.pr2, a.incl);
    RepMor j = mor_add(compose(s.in1, m.src.f), compose(s.in2, m.alpha));
    std::vector<Matrix> rblocks;
    for (size_t vert = 0; vert < j.blocks.size(); ++vert) {
        auto x = solve(a.incl.blocks[vert], j.blocks[vert]);
        if (!x || !(a.incl.blocks[vert] * *x == j.blocks[vert]))
            throw theorem_violation("pullback factorization failed");
        rblocks.push_back(*x);
    }
    RepMor r(m.src.f.src, a.rep, std::move(rblocks));
    return {a.rep, std::move(u), std::move(v), std::move(r)};
}

struct PushoutData {
    Rep b;
    RepMor q;   // Y -> b
    RepMor p;   // X' -> b
    RepMor s2;  // b -> Y'
};

PushoutData square_pushout(const SquareMor& m, const PullbackData& pb) {
    const Context& ctx = m.src.ctx;
    const Rep& y = m.src.f.tgt;
    const Rep& xp = m.tgt.f.src;
    SumRep s = direct_sum(y, xp);
    RepMor e = mor_sub(compose(s.in1, pb.u), compose(s.in2, pb.v));
    QuotObject b = ctx_cokernel(ctx, e);
    RepMor q = compose(b.proj, s.in1);
    RepMor p = compose(b.proj, s.in2);
    RepMor w = mor_add(compose(m.beta, s.pr1), compose(m.tgt.f, s.pr2));
    std::vector<Matrix> sblocks;
    for (size_t vert = 0; vert < w.blocks.size(); ++vert) {
        auto x = solve(b.proj.blocks[vert].transpose(), w.blocks[vert].transpose());
        if (!x || !(b.proj.blocks[vert].transpose() * *x == w.blocks[vert].transpose()))
            throw theorem_violation("pushout factorization failed");
        sblocks.push_back(x->transpose());
    }
    RepMor s2(b.rep, m.tgt.f.tgt, std::move(sblocks));
    return {b.rep, std::move(q), std::move(p), std::move(s2)};
}

void certify_kernel(const SquareMor& m, const MonoKernel& k) {
    const Context& ctx = m.src.ctx;
    if (!is_null_homotopic(compose_squares(m, k.mor)))
        throw theorem_violation("kernel square does not compose to zero");
    for (const auto& w : test_family(ctx)) {
        PairSpace swa = pair_space(w, m.src);
        if (swa.basis.empty()) continue;
        PairSpace swb = pair_space(w, m.tgt);
        PairSpace swk = pair_space(w, k.obj);
        // coefficient combos phi with m phi null-homotopic
        Matrix cmp(swa.vecs.field(), swb.dim, static_cast<int>(swa.basis.size()));
        for (size_t i = 0; i < swa.basis.size(); ++i) {
            Matrix vec = vec_pair(w, m.tgt, compose(m.alpha, swa.basis[i].first),
                                  compose(m.beta, swa.basis[i].second));
            for (int r = 0; r < swb.dim; ++r) cmp.at(r, static_cast<int>(i)) = vec.at(0, r);
        }
        Matrix qb = row_space_quotient_proj(swb.homotopy, swb.dim);
        Matrix killed = kernel_basis(qb * cmp);
        Matrix reach(swa.vecs.field(), 0, swa.dim);
        for (const auto& pk : swk.basis)
            reach = Matrix::vstack(reach, vec_pair(w, m.src, compose(k.mor.alpha, pk.first),
                                                   compose(k.mor.beta, pk.second)));
        reach = row_space_sum(reach, swa.homotopy);
        for (int c = 0; c < killed.cols(); ++c) {
            Matrix vec(swa.vecs.field(), 1, swa.dim);
            for (int i = 0; i < killed.rows(); ++i)
                if (!killed.at(i, c).is_zero())
                    for (int r = 0; r < swa.dim; ++r)
                        vec.at(0, r) = vec.at(0, r) + killed.at(i, c) * swa.vecs.at(i, r);
            if (!row_space_contains(reach, vec))
                throw theorem_violation("kernel square misses a killed morphism");
        }
        // composition with the kernel square is monic modulo homotopy
        if (!swk.basis.empty()) {
            Matrix cmpk(swa.vecs.field(), swa.dim, static_cast<int>(swk.basis.size()));
            for (size_t i = 0; i < swk.basis.size(); ++i) {
                Matrix vec = vec_pair(w, m.src, compose(k.mor.alpha, swk.basis[i].first),
                                      compose(k.mor.beta, swk.basis[i].second));
                for (int r = 0; r < swa.dim; ++r) cmpk.at(r, static_cast<int>(i)) = vec.at(0, r);
            }
            Matrix qa = row_space_quotient_proj(swa.homotopy, swa.dim);
            Matrix null2 = kernel_basis(qa * cmpk);
            for (int c = 0; c < null2.cols(); ++c) {
                Matrix vec(swa.vecs.field(), 1, swk.dim);
                for (int i = 0; i < null2.rows(); ++i)
                    if (!null2.at(i, c).is_zero())
                        for (int r = 0; r < swk.dim; ++r)
                            vec.at(0, r) = vec.at(0, r) + null2.at(i, c) * swk.vecs.at(i, r);
                if (!row_space_contains(swk.homotopy, vec))
                    throw theorem_violation("kernel square is not monic modulo homotopy");
            }
        }
    }
}

void certify_cokernel(const SquareMor& m, const MonoKernel& c) {
    const Context& ctx = m.src.ctx;
    if (!is_null_homotopic(compose_squares(c.mor, m)))
        throw theorem_violation("cokernel square does not compose to zero");
    for (const auto& w : test_family(ctx)) {
        PairSpace sbw = pair_space(m.tgt, w);
        if (sbw.basis.empty()) continue;
        PairSpace saw = pair_space(m.src, w);
        PairSpace scw = pair_space(c.obj, w);
        Matrix cmp(sbw.vecs.field(), saw.dim, static_cast<int>(sbw.basis.size()));
        for (size_t i = 0; i < sbw.basis.size(); ++i) {
            Matrix vec = vec_pair(m.src, w, compose(sbw.basis[i].first, m.alpha),
                                  compose(sbw.basis[i].second, m.beta));
            for (int r = 0; r < saw.dim; ++r) cmp.at(r, static_cast<int>(i)) = vec.at(0, r);
        }
        Matrix qa = row_space_quotient_proj(saw.homotopy, saw.dim);
        Matrix killed = kernel_basis(qa * cmp);
        Matrix reach(sbw.vecs.field(), 0, sbw.dim);
        for (const auto& pc : scw.basis)
            reach = Matrix::vstack(reach, vec_pair(m.tgt, w, compose(pc.first, c.mor.alpha),
                                                   compose(pc.second, c.mor.beta)));
        reach = row_space_sum(reach, sbw.homotopy);
        for (int col = 0; col < killed.cols(); ++col) {
            Matrix vec(sbw.vecs.field(), 1, sbw.dim);
            for (int i = 0; i < killed.rows(); ++i)
                if (!killed.at(i, col).is_zero())
                    for (int r = 0; r < sbw.dim; ++r)
                        vec.at(0, r) = vec.at(0, r) + killed.at(i, col) * sbw.vecs.at(i, r);
            if (!row_space_contains(reach, vec))
                throw theorem_violation("cokernel square misses a killing morphism");
        }
        if (!scw.basis.empty()) {
            Matrix cmpc(sbw.vecs.field(), sbw.dim, static_cast<int>(scw.basis.size()));
            for (size_t i = 0; i < scw.basis.size(); ++i) {
                Matrix vec = vec_pair(m.tgt, w, compose(scw.basis[i].first, c.mor.alpha),
                                      compose(scw.basis[i].second, c.mor.beta));
                for (int r = 0; r < sbw.dim; ++r) cmpc.at(r, static_cast<int>(i)) = vec.at(0, r);
            }
            Matrix qb = row_space_quotient_proj(sbw.homotopy, sbw.dim);
            Matrix null2 = kernel_basis(qb * cmpc);
            for (int col = 0; col < null2.cols(); ++col) {
                Matrix vec(sbw.vecs.field(), 1, scw.dim);
                for (int i = 0; i < null2.rows(); ++i)
                    if (!null2.at(i, col).is_zero())
                        for (int r = 0; r < scw.dim; ++r)
                            vec.at(0, r) = vec.at(0, r) + null2.at(i, col) * scw.vecs.at(i, r);
                if (!row_space_contains(scw.homotopy, vec))
                    throw theorem_violation("cokernel square is not epic modulo homotopy");
            }
        }
    }
}

}  // namespace

int hom_square_dim(const MonoObj& a, const MonoObj& b) {
    PairSpace ps = pair_space(a, b);
    return rank(ps.vecs) - ps.homotopy.rows();
}

MonoKernel kernel_mono(const SquareMor& m) {
    PullbackData pb = square_pullback(m);
    try {
        MonoObj kobj = make_mono_obj(m.src.ctx, pb.r);
        MonoKernel k{kobj, make_square(kobj, m.src, identity_mor(m.src.f.src), pb.u)};
        certify_kernel(m, k);
        return k;
    } catch (const contract_error& e) {
        throw theorem_violation(std::string("kernel object invalid: ") + e.what());
    }
}

MonoKernel cokernel_mono(const SquareMor& m) {
    PullbackData pb = square_pullback(m);
    PushoutData po = square_pushout(m, pb);
    try {
        MonoObj cobj = make_mono_obj(m.src.ctx, po.s2);
        MonoKernel c{cobj, make_square(m.tgt, cobj, po.p, identity_mor(m.tgt.f.tgt))};
        certify_cokernel(m, c);
        return c;
    } catch (const contract_error& e) {
        throw theorem_violation(std::string("cokernel object invalid: ") + e.what());
    }
}

bool is_regular(const SquareMor& m) {
    return is_zero_mono_obj(kernel_mono(m).obj) && is_zero_mono_obj(cokernel_mono(m).obj);
}

SquareFactorization factorize(const SquareMor& m) {
    const Context& ctx = m.src.ctx;
    PullbackData pb = square_pullback(m);
    PushoutData po = square_pushout(m, pb);
    auto build = [&]() -> std::pair<MonoObj, MonoObj> {
        try {
            return {make_mono_obj(ctx, pb.u), make_mono_obj(ctx, po.p)};
        } catch (const contract_error& e) {
            throw theorem_violation(std::string("factorization object invalid: ") + e.what());
        }
    };
    auto [uobj, pobj] = build();
    SquareFactorization out{
        make_square(m.src, uobj, pb.r, identity_mor(m.src.f.tgt)),
        make_square(uobj, pobj, pb.v, po.q),
        make_square(pobj, m.tgt, identity_mor(m.tgt.f.src), po.s2),
    };
    SquareMor composite =
        compose_squares(out.kernel_part, compose_squares(out.regular_part, out.coker_part));
    if (!is_null_homotopic(square_sub(composite, m)))
        throw theorem_violation("factorization does not recompose the morphism");
    if (!is_regular(out.regular_part))
        throw theorem_violation("middle factor is not regular");
    return out;
}

}  // namespace torsionlab
