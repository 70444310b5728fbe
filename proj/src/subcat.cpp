#include "torsionlab/subcat.hpp"

#include <algorithm>
#include <set>

namespace torsionlab {

namespace masks {

int count(Mask m) { return __builtin_popcountll(m); }

std::vector<int> ids(Mask m) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if (contains(m, i)) out.push_back(i);
    return out;
}

Mask of_ids(const std::vector<int>& ids) {
    Mask m = 0;
    for (int i : ids) m |= single(i);
    return m;
}

}  // namespace masks

Mask all_mask(const ModuleCategory& cat) {
    if (cat.count() > 64) throw size_error("more than 64 indecomposables: masks unavailable");
    return cat.count() == 64 ? ~Mask{0} : (Mask{1} << cat.count()) - 1;
}

bool Context::is_full() const {
    Mask all = all_mask(*cat);
    return members == all && outer == all && inner == 0;
}

Context Context::full(CategoryPtr cat) {
    Mask all = all_mask(*cat);
    return Context{cat, all, all, 0, all, 0};
}

std::string mask_str(const Context& ctx, Mask m) {
    std::string s = "{";
    bool first = true;
    for (int id : masks::ids(m)) {
        if (!first) s += ",";
        s += ctx.cat->label(id);
        first = false;
    }
    return s + "}";
}

Mask perp_right(const Context& ctx, Mask s) {
    Mask out = 0;
    for (int j : masks::ids(ctx.members)) {
        bool ok = true;
        for (int i : masks::ids(s))
            if (ctx.cat->hom_dim(i, j) != 0) {
                ok = false;
                break;
            }
        if (ok) out |= masks::single(j);
    }
    return out;
}

Mask perp_left(const Context& ctx, Mask s) {
    Mask out = 0;
    for (int j : masks::ids(ctx.members)) {
        bool ok = true;
        for (int i : masks::ids(s))
            if (ctx.cat->hom_dim(j, i) != 0) {
                ok = false;
                break;
            }
        if (ok) out |= masks::single(j);
    }
    return out;
}

bool is_torsion_pair(const Context& ctx, Mask t, Mask f) {
    return perp_right(ctx, t) == f && perp_left(ctx, f) == t;
}

TorsionPair make_torsion_pair(const Context& ctx, Mask t) {
    Mask f = perp_right(ctx, t);
    if (perp_left(ctx, f) != t)
        throw contract_error("not a torsion class: " + mask_str(ctx, t) +
                             " (double perp gives " + mask_str(ctx, perp_left(ctx, f)) + ")");
    return {ctx, t, f};
}

std::vector<TorsionPair> enumerate_torsion_classes(const Context& ctx) {
    if (masks::count(ctx.members) > 20)
        throw size_error("torsion class enumeration over more than 2^20 subsets refused");
    std::set<Mask> seen;
    std::vector<TorsionPair> out;
    Mask s = ctx.members;
    while (true) {
        Mask f = perp_right(ctx, s);
        Mask t = perp_left(ctx, f);
        if (seen.insert(t).second) out.push_back({ctx, t, f});
        if (s == 0) break;
        s = (s - 1) & ctx.members;
    }
    auto key = [](Mask m) { return std::make_pair(masks::count(m), masks::ids(m)); };
    std::sort(out.begin(), out.end(),
              [&](const TorsionPair& a, const TorsionPair& b) {
                  return key(a.torsion) < key(b.torsion);
              });
    return out;
}

SubRep trace_of_class(const CategoryPtr& cat, Mask t, const Rep& m) {
    std::vector<Matrix> bases;
    for (int v = 0; v < m.quiver()->vertices(); ++v) bases.emplace_back(m.field(), 0, m.dim(v));
    // Sum of images stabilizes after one pass; the loop bound is the length
    // of m, the longest strictly increasing subobject chain.
    for (int pass = 0; pass <= m.total_dim(); ++pass) {
        std::vector<Matrix> next = bases;
        for (int id : masks::ids(t))
            for (const auto& phi : hom_basis(cat->indec(id), m))
                for (int v = 0; v < m.quiver()->vertices(); ++v)
                    next[v] = row_space_sum(next[v], col_space(phi.blocks[v]));
        if (next == bases) break;
        bases = std::move(next);
    }
    return sub_rep(m, bases);
}

SubRep trace(const Context& ctx, Mask t, const Rep& m) {
    if (!is_torsion_pair(ctx, t, perp_right(ctx, t)))
        throw contract_error("trace requires a torsion class of the context");
    if (!ctx.is_full() && !masks::subset(masks::of_ids(ctx.cat->decompose(m)), ctx.members))
        throw contract_error("trace target lies outside the context");
    return trace_of_class(ctx.cat, t, m);
}

SubObject ctx_kernel(const Context& ctx, const RepMor& f) {
    SubRep amb = kernel(f);
    SubRep corrected = trace_of_class(ctx.cat, ctx.outer, amb.rep);
    return {corrected.rep, compose(amb.incl, corrected.incl)};
}

QuotObject ctx_cokernel(const Context& ctx, const RepMor& f) {
    QuotRep amb = cokernel(f);
    SubRep tr = trace_of_class(ctx.cat, ctx.inner, amb.rep);
    QuotRep corrected = quotient_rep(amb.rep, tr.bases);
    return {corrected.rep, compose(corrected.proj, amb.proj)};
}

CanonicalSES canonical_ses(const Context& ctx, Mask t, const Rep& m) {
    SubRep sub = trace(ctx, t, m);
    QuotRep quot = quotient_rep(m, sub.bases);
    Mask f = perp_right(ctx, t);
    if (!is_ses(sub.incl, quot.proj))
        throw theorem_violation("canonical sequence is not exact");
    if (!masks::subset(masks::of_ids(ctx.cat->decompose(sub.rep)), t))
        throw theorem_violation("canonical sequence: torsion part not in the torsion class");
    if (!masks::subset(masks::of_ids(ctx.cat->decompose(quot.rep)), f))
        throw theorem_violation("canonical sequence: quotient not in the torsionfree class");
    return {std::move(sub), std::move(quot)};
}

namespace {

bool dec_subset(const Context& ctx, const Rep& r, Mask allowed) {
    return masks::subset(masks::of_ids(ctx.cat->decompose(r)), allowed);
}

// Context quotient of a member object by an ambient subobject: ambient
// quotient followed by the inner-torsion quotient.
Rep ctx_quotient_by(const Context& ctx, const Rep& m, const SubRep& u) {
    QuotRep q1 = quotient_rep(m, u.bases);
    SubRep tr = trace_of_class(ctx.cat, ctx.inner, q1.rep);
    return quotient_rep(q1.rep, tr.bases).rep;
}

}  // namespace

bool is_quotient_closed(const Context& ctx, Mask s) {
    for (int id : masks::ids(s)) {
        const Rep& m = ctx.cat->indec(id);
        for (const auto& u : ctx.cat->subobjects(m)) {
            // admissible images of context morphisms into m are exactly the
            // subobjects lying in the outer class
            if (!dec_subset(ctx, u.rep, ctx.outer)) continue;
            if (!dec_subset(ctx, ctx_quotient_by(ctx, m, u), s)) return false;
        }
    }
    return true;
}

bool is_sub_closed(const Context& ctx, Mask s) {
    for (int id : masks::ids(s)) {
        const Rep& m = ctx.cat->indec(id);
        for (const auto& v : ctx.cat->subobjects(m)) {
            // kernels of context morphisms out of m are outer traces of
            // ambient subobjects whose quotient embeds in the context
            if (!dec_subset(ctx, quotient_rep(m, v.bases).rep, ctx.inner_perp)) continue;
            SubRep k = trace_of_class(ctx.cat, ctx.outer, v.rep);
            if (!dec_subset(ctx, k.rep, s)) return false;
        }
    }
    return true;
}

bool is_extension_closed(const Context& ctx, Mask s) {
    for (int a : masks::ids(s))
        for (int c : masks::ids(s))
            for (const auto& mid : ctx.cat->ext_middles(c, a)) {
                Mask mm = masks::of_ids(mid);
                if (!masks::subset(mm, ctx.members)) continue;  // not a context sequence
                if (!masks::subset(mm, s)) return false;
            }
    return true;
}

namespace {

std::vector<std::vector<int>> bounded_multisets(Mask s) {
    std::vector<std::vector<int>> out;
    auto ids = masks::ids(s);
    for (int i : ids) {
        out.push_back({i});
        out.push_back({i, i});
    }
    for (size_t a = 0; a < ids.size(); ++a)
        for (size_t b = a + 1; b < ids.size(); ++b) out.push_back({ids[a], ids[b]});
    return out;
}

}  // namespace

std::vector<std::string> extension_closure_oracle(const Context& ctx, Mask s) {
    std::vector<std::string> diags;
    auto ends = bounded_multisets(s);
    for (const auto& am : ends)
        for (const auto& cm : ends) {
            Rep a = ctx.cat->rep_of_multiset(am);
            Rep c = ctx.cat->rep_of_multiset(cm);
            for (const auto& mid : ctx.cat->ext_middles_rep(c, a)) {
                Mask mm = masks::of_ids(mid);
                if (!masks::subset(mm, ctx.members)) continue;
                if (!masks::subset(mm, s))
                    diags.push_back("extension of summed ends escapes the class: middle " +
                                    mask_str(ctx, mm));
            }
        }
    return diags;
}

std::vector<Mask> closure_torsion_classes(const Context& ctx,
                                          std::vector<std::string>* diagnostics) {
    if (masks::count(ctx.members) > 20)
        throw size_error("closure enumeration over more than 2^20 subsets refused");
    // Per-member tables so the subset loop is pure bit tests:
    // admissible (subobject, context-quotient) id sets, and context middle
    // term id sets per ordered pair.
    std::vector<std::vector<Mask>> quots(64);
    for (int id : masks::ids(ctx.members)) {
        const Rep& m = ctx.cat->indec(id);
        for (const auto& u : ctx.cat->subobjects(m)) {
            if (!masks::subset(masks::of_ids(ctx.cat->decompose(u.rep)), ctx.outer)) continue;
            quots[id].push_back(masks::of_ids(ctx.cat->decompose(ctx_quotient_by(ctx, m, u))));
        }
    }
    std::vector<Mask> out;
    Mask s = ctx.members;
    while (true) {
        bool ok = true;
        for (int id : masks::ids(s)) {
            for (Mask qd : quots[id])
                if (!masks::subset(qd, s)) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) ok = is_extension_closed(ctx, s);
        if (ok) out.push_back(s);
        if (s == 0) break;
        s = (s - 1) & ctx.members;
    }
    // Bounded direct-sum cross-check on the candidates the pairwise test let
    // through; any disagreement is reported and the candidate dropped.
    std::vector<Mask> confirmed;
    for (Mask t : out) {
        auto diags = extension_closure_oracle(ctx, t);
        if (diags.empty()) {
            confirmed.push_back(t);
        } else if (diagnostics) {
            for (auto& d : diags)
                diagnostics->push_back("class " + mask_str(ctx, t) + ": " + d);
        }
    }
    auto key = [](Mask m) { return std::make_pair(masks::count(m), masks::ids(m)); };
    std::sort(confirmed.begin(), confirmed.end(),
              [&](Mask a, Mask b) { return key(a) < key(b); });
    return confirmed;
}

bool star_membership(const Context& ctx, Mask x, Mask y, const Rep& m) {
    if (m.total_dim() == 0) return true;
    if (is_torsion_pair(ctx, x, perp_right(ctx, x)) && masks::subset(y, perp_right(ctx, x))) {
        // the defining sequence must then be the canonical one
        auto ses = canonical_ses(ctx, x, m);
        return dec_subset(ctx, ses.quot.rep, y);
    }
    for (const auto& u : ctx.cat->subobjects(m)) {
        if (!dec_subset(ctx, u.rep, x)) continue;
        if (dec_subset(ctx, quotient_rep(m, u.bases).rep, y)) return true;
    }
    return false;
}

bool kernel_universal(const Context& ctx, const RepMor& f, const SubObject& k, Mask tests,
                      std::string* diag) {
    if (!is_zero_mor(compose(f, k.incl))) {
        if (diag) *diag = "kernel candidate does not compose to zero";
        return false;
    }
    if (!is_mono(k.incl)) {
        if (diag) *diag = "kernel candidate is not a monomorphism";
        return false;
    }
    for (int z : masks::ids(tests)) {
        const Rep& zrep = ctx.cat->indec(z);
        auto basis = hom_basis(zrep, f.src);
        if (basis.empty()) continue;
        // basis of { phi : f phi = 0 } in hom coordinates
        std::vector<RepMor> comps;
        for (const auto& b : basis) comps.push_back(compose(f, b));
        int dim = 0;
        for (const auto& blk : comps[0].blocks) dim += blk.rows() * blk.cols();
        Matrix cmp(f.src.field(), dim, static_cast<int>(comps.size()));
        for (size_t c = 0; c < comps.size(); ++c) {
            int r = 0;
            for (const auto& blk : comps[c].blocks)
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j)
                        cmp.at(r++, static_cast<int>(c)) = blk.at(i, j);
        }
        Matrix null = kernel_basis(cmp);
        std::vector<RepMor> candidates;
        for (const auto& b : hom_basis(zrep, k.rep)) candidates.push_back(compose(k.incl, b));
        for (int c = 0; c < null.cols(); ++c) {
            RepMor phi = zero_mor(zrep, f.src);
            for (int i = 0; i < null.rows(); ++i)
                if (!null.at(i, c).is_zero())
                    phi = mor_add(phi, mor_scale(null.at(i, c), basis[i]));
            if (!express_in_basis(candidates, phi)) {
                if (diag)
                    *diag = "morphism from " + ctx.cat->label(z) +
                            " killed by f does not factor through the kernel candidate";
                return false;
            }
        }
    }
    return true;
}

bool cokernel_universal(const Context& ctx, const RepMor& f, const QuotObject& q, Mask tests,
                        std::string* diag) {
    if (!is_zero_mor(compose(q.proj, f))) {
        if (diag) *diag = "cokernel candidate does not compose to zero";
        return false;
    }
    if (!is_epi(q.proj)) {
        if (diag) *diag = "cokernel candidate is not an epimorphism";
        return false;
    }
    for (int z : masks::ids(tests)) {
        const Rep& zrep = ctx.cat->indec(z);
        auto basis = hom_basis(f.tgt, zrep);
        if (basis.empty()) continue;
        std::vector<RepMor> comps;
        for (const auto& b : basis) comps.push_back(compose(b, f));
        int dim = 0;
        for (const auto& blk : comps[0].blocks) dim += blk.rows() * blk.cols();
        Matrix cmp(f.src.field(), dim, static_cast<int>(comps.size()));
        for (size_t c = 0; c < comps.size(); ++c) {
            int r = 0;
            for (const auto& blk : comps[c].blocks)
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j)
                        cmp.at(r++, static_cast<int>(c)) = blk.at(i, j);
        }
        Matrix null = kernel_basis(cmp);
        std::vector<RepMor> candidates;
        for (const auto& b : hom_basis(q.rep, zrep)) candidates.push_back(compose(b, q.proj));
        for (int c = 0; c < null.cols(); ++c) {
            RepMor psi = zero_mor(f.tgt, zrep);
            for (int i = 0; i < null.rows(); ++i)
                if (!null.at(i, c).is_zero())
                    psi = mor_add(psi, mor_scale(null.at(i, c), basis[i]));
            if (!express_in_basis(candidates, psi)) {
                if (diag)
                    *diag = "morphism to " + ctx.cat->label(z) +
                            " killing f does not factor through the cokernel candidate";
                return false;
            }
        }
    }
    return true;
}

IntersectionResult intersect_torsion_classes(const TorsionPair& a, const TorsionPair& b) {
    if (!(a.ctx == b.ctx)) throw contract_error("intersection across different contexts");
    const Context& ctx = a.ctx;
    IntersectionResult res;
    res.members = a.torsion & b.torsion;
    if (ctx.is_full()) {
        res.certified = is_torsion_pair(ctx, res.members, perp_right(ctx, res.members));
        if (!res.certified)
            res.diagnostics.push_back("intersection is not double-perp closed: " +
                                      mask_str(ctx, res.members));
        return res;
    }
    // Heart context: certify that the intersection admits kernels and
    // cokernels, found as alternating-trace fixpoints of the context ones.
    res.certified = true;
    for (int i : masks::ids(res.members))
        for (int j : masks::ids(res.members))
            for (const auto& f : ctx.cat->homs(i, j)) {
                SubObject k = ctx_kernel(ctx, f);
                for (int pass = 0; pass <= f.src.total_dim(); ++pass) {
                    SubRep t1 = trace_of_class(ctx.cat, a.torsion, k.rep);
                    SubRep t2 = trace_of_class(ctx.cat, b.torsion, t1.rep);
                    Rep next = t2.rep;
                    RepMor incl = compose(k.incl, compose(t1.incl, t2.incl));
                    if (next.total_dim() == k.rep.total_dim()) break;
                    k = {next, incl};
                }
                std::string diag;
                if (!kernel_universal(ctx, f, k, res.members, &diag)) {
                    res.certified = false;
                    res.diagnostics.push_back("kernel in intersection: " + diag);
                }
                // context cokernels of morphisms inside the intersection stay
                // in the intersection (both classes are quotient closed)
                QuotObject q = ctx_cokernel(ctx, f);
                if (!dec_subset(ctx, q.rep, res.members)) {
                    res.certified = false;
                    res.diagnostics.push_back("cokernel left the intersection: " +
                                              mask_str(ctx, masks::of_ids(ctx.cat->decompose(q.rep))));
                }
                std::string diag2;
                if (!cokernel_universal(ctx, f, q, res.members, &diag2)) {
                    res.certified = false;
                    res.diagnostics.push_back("cokernel in intersection: " + diag2);
                }
            }
    return res;
}

}  // namespace torsionlab
