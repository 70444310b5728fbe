#include "torsionlab/hn.hpp"

#include <algorithm>
#include <set>

namespace torsionlab {

namespace {

const Rat kZero{0, 1};
const Rat kOne{1, 1};

Mask dec_mask(const CategoryPtr& cat, const Rep& r) {
    return masks::of_ids(cat->decompose(r));
}

}  // namespace

Chain make_chain(const Context& ctx, std::vector<Rat> breakpoints, std::vector<Mask> classes) {
    if (breakpoints.size() < 2 || breakpoints.front() != kZero || breakpoints.back() != kOne)
        throw contract_error("chain breakpoints must run from 0 to 1");
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw contract_error("chain breakpoints must strictly increase");
    if (classes.size() + 1 != breakpoints.size())
        throw contract_error("chain needs one class per interval");
    for (Mask t : classes)
        if (!is_torsion_pair(ctx, t, perp_right(ctx, t)))
            throw contract_error("chain value is not a torsion class: " + mask_str(ctx, t));
    // canonical form: merge intervals with equal classes
    std::vector<Rat> bps{breakpoints.front()};
    std::vector<Mask> cls;
    for (size_t i = 0; i < classes.size(); ++i) {
        if (!cls.empty() && cls.back() == classes[i]) continue;
        if (!cls.empty() && !masks::subset(classes[i], cls.back()))
            throw contract_error("chain classes must decrease");
        if (!cls.empty()) bps.push_back(breakpoints[i]);
        cls.push_back(classes[i]);
    }
    bps.push_back(kOne);
    return {ctx, std::move(bps), std::move(cls)};
}

Mask eta_left(const Chain& c, const Rat& r) {
    if (!(kZero < r)) throw contract_error("left limit needs r > 0");
    size_t k = 0;
    for (size_t i = 0; i + 1 < c.breakpoints.size(); ++i)
        if (c.breakpoints[i] < r) k = i;
    return c.classes[k];
}

Mask eta_right(const Chain& c, const Rat& r) {
    if (!(r < kOne)) throw contract_error("right limit needs r < 1");
    size_t k = 0;
    for (size_t i = 0; i + 1 < c.breakpoints.size(); ++i)
        if (c.breakpoints[i] <= r) k = i;
    return c.classes[k];
}

Slice slice(const Chain& c, const Rat& r) {
    if (r < kZero || kOne < r) throw contract_error("slice parameter out of [0,1]");
    if (r == kZero) return {r, perp_right(c.ctx, eta_right(c, r))};
    if (r == kOne) return {r, eta_left(c, r)};
    return {r, eta_left(c, r) & perp_right(c.ctx, eta_right(c, r))};
}

Mask filt_closure(const Context& ctx, Mask s) {
    Mask cur = s;
    while (true) {
        Mask next = cur;
        for (int a : masks::ids(cur))
            for (int c : masks::ids(cur))
                for (const auto& mid : ctx.cat->ext_middles(c, a)) {
                    Mask mm = masks::of_ids(mid);
                    if (masks::subset(mm, ctx.members)) next |= mm;
                }
        if (next == cur) return cur;
        cur = next;
    }
}

Mask interval_heart(const Chain& c, const Rat& a, const Rat& b) {
    if (a < kZero || b < a || kOne < b) throw contract_error("bad interval");
    Mask left = (a == kZero) ? c.ctx.members : eta_left(c, a);
    Mask right = (b == kOne) ? c.ctx.members : perp_right(c.ctx, eta_right(c, b));
    Mask fast = left & right;
    // oracle: extension closure of the union of slices inside the window
    Mask uni = 0;
    for (const Rat& bp : c.breakpoints)
        if (!(bp < a) && !(b < bp)) uni |= slice(c, bp).members;
    Mask closed = filt_closure(c.ctx, uni);
    if (closed != fast)
        throw theorem_violation("interval heart disagrees with the slice filtration closure: " +
                                mask_str(c.ctx, fast) + " vs " + mask_str(c.ctx, closed));
    return fast;
}

HNFiltration hn_filtration(const Chain& c, const Rep& m) {
    const Context& ctx = c.ctx;
    if (m.total_dim() != 0 && !masks::subset(dec_mask(ctx.cat, m), ctx.members))
        throw contract_error("object lies outside the chain's context");
    HNFiltration out;
    Rep cur = m;
    // projection M -> current quotient, as accumulated blocks
    RepMor proj = identity_mor(m);
    while (cur.total_dim() != 0) {
        Rat label = kZero;
        std::optional<SubRep> tr;
        for (size_t k = c.breakpoints.size(); k-- > 1;) {
            const Rat& bp = c.breakpoints[k];
            SubRep cand = trace_of_class(ctx.cat, eta_left(c, bp), cur);
            if (cand.rep.total_dim() != 0) {
                label = bp;
                tr = std::move(cand);
                break;
            }
        }
        if (!tr) tr = full_sub(cur);  // label 0: the rest is semistable at the bottom
        std::vector<Matrix> lifted = preimage_bases(proj, tr->bases);
        out.steps.push_back(sub_rep(m, lifted));
        out.labels.push_back(label);
        out.factors.push_back(tr->rep);
        QuotRep q = quotient_rep(cur, tr->bases);
        proj = compose(q.proj, proj);
        cur = q.rep;
    }
    // certification: strictly increasing steps, factors in strictly
    // decreasing slices, recomputed from the steps themselves
    for (size_t k = 0; k < out.steps.size(); ++k) {
        if (k > 0 && !(out.labels[k] < out.labels[k - 1]))
            throw theorem_violation("filtration labels are not strictly decreasing");
        SubRep prev = k == 0 ? zero_sub(m) : out.steps[k - 1];
        if (!sub_contained(prev.bases, out.steps[k].bases))
            throw theorem_violation("filtration steps are not nested");
        SubRep prev_in_step = image(corestrict(prev.incl, out.steps[k]));
        Rep factor = quotient_rep(out.steps[k].rep, prev_in_step.bases).rep;
        if (factor.total_dim() == 0) throw theorem_violation("zero filtration factor");
        if (!ctx.cat->is_isomorphic(factor, out.factors[k]))
            throw theorem_violation("stored factor disagrees with the step quotient");
        if (!masks::subset(dec_mask(ctx.cat, factor), slice(c, out.labels[k]).members))
            throw theorem_violation("filtration factor not in its slice");
    }
    if (!out.steps.empty() && out.steps.back().rep.total_dim() != m.total_dim())
        throw theorem_violation("filtration does not exhaust the object");
    return out;
}

namespace {

struct FiltSignature {
    std::vector<Rat> labels;
    std::vector<std::vector<int>> steps;    // decompositions of M_k
    std::vector<std::vector<int>> factors;  // decompositions of the factors

    bool operator<(const FiltSignature& o) const {
        if (labels != o.labels)
            return std::lexicographical_compare(labels.begin(), labels.end(), o.labels.begin(),
                                                o.labels.end());
        if (steps != o.steps) return steps < o.steps;
        return factors < o.factors;
    }
};

}  // namespace

bool hn_unique_check(const Chain& c, const Rep& m) {
    const Context& ctx = c.ctx;
    if (m.total_dim() == 0) return true;
    auto subs = ctx.cat->subobjects(m);
    std::set<FiltSignature> found;

    // label of a nonzero factor: the unique breakpoint slice containing it
    auto label_of = [&](const Rep& factor) -> std::optional<Rat> {
        std::optional<Rat> out;
        for (const Rat& bp : c.breakpoints) {
            if (masks::subset(dec_mask(ctx.cat, factor), slice(c, bp).members)) {
                if (out) throw theorem_violation("factor lies in two distinct slices");
                out = bp;
            }
        }
        return out;
    };

    struct Frame {
        size_t at;            // index of the current top subobject
        std::vector<size_t> chain;
        std::vector<Rat> labels;
    };
    size_t zero_idx = subs.size(), full_idx = subs.size();
    for (size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].rep.total_dim() == 0) zero_idx = i;
        if (subs[i].rep.total_dim() == m.total_dim()) full_idx = i;
    }
    std::vector<Frame> stack{{zero_idx, {zero_idx}, {}}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.at == full_idx) {
            FiltSignature sig;
            sig.labels = f.labels;
            for (size_t i = 1; i < f.chain.size(); ++i) {
                sig.steps.push_back(ctx.cat->decompose(subs[f.chain[i]].rep));
                const auto& lo = subs[f.chain[i - 1]];
                const auto& hi = subs[f.chain[i]];
                SubRep lo_in_hi = image(corestrict(lo.incl, hi));
                sig.factors.push_back(
                    ctx.cat->decompose(quotient_rep(hi.rep, lo_in_hi.bases).rep));
            }
            found.insert(std::move(sig));
            continue;
        }
        for (size_t j = 0; j < subs.size(); ++j) {
            if (j == f.at) continue;
            if (!sub_contained(subs[f.at].bases, subs[j].bases)) continue;
            if (subs[j].rep.total_dim() <= subs[f.at].rep.total_dim()) continue;
            // factor subs[j] / subs[f.at]
            SubRep lo_in_hi = image(corestrict(subs[f.at].incl, subs[j]));
            Rep factor = quotient_rep(subs[j].rep, lo_in_hi.bases).rep;
            auto lbl = label_of(factor);
            if (!lbl) continue;
            if (!f.labels.empty() && !(*lbl < f.labels.back())) continue;
            Frame nf = f;
            nf.at = j;
            nf.chain.push_back(j);
            nf.labels.push_back(*lbl);
            stack.push_back(std::move(nf));
        }
    }
    if (found.size() != 1) return false;

    HNFiltration greedy = hn_filtration(c, m);
    FiltSignature gs;
    gs.labels = greedy.labels;
    for (const auto& s : greedy.steps) gs.steps.push_back(ctx.cat->decompose(s.rep));
    for (const auto& fct : greedy.factors) gs.factors.push_back(ctx.cat->decompose(fct));
    return found.count(gs) == 1;
}

Rat distance(const Chain& a, const Chain& b) {
    if (!(a.ctx == b.ctx)) throw contract_error("distance requires chains in one context");
    std::vector<Rat> bps;
    bps.insert(bps.end(), a.breakpoints.begin(), a.breakpoints.end());
    bps.insert(bps.end(), b.breakpoints.begin(), b.breakpoints.end());
    struct RatLess {
        bool operator()(const Rat& x, const Rat& y) const { return x < y; }
    };
    std::set<Rat, RatLess> cand{kZero, kOne};
    for (const Rat& x : bps)
        for (const Rat& y : bps) cand.insert((x - y).abs());

    auto window_ok = [&](const Chain& fine, const Chain& coarse, const Rat& eps) {
        for (const Rat& r : fine.breakpoints) {
            Mask sl = slice(fine, r).members;
            if (sl == 0) continue;
            Rat lo = r - eps;
            if (lo < kZero) lo = kZero;
            Rat hi = r + eps;
            if (kOne < hi) hi = kOne;
            if (!masks::subset(sl, interval_heart(coarse, lo, hi))) return false;
        }
        return true;
    };
    for (const Rat& eps : cand)
        if (window_ok(b, a, eps) && window_ok(a, b, eps)) return eps;
    throw theorem_violation("distance condition failed even at epsilon = 1");
}

Chain phi_embed(const TwinPair& tw, const Chain& heart_chain) {
    Context h = heart(tw);
    if (!(heart_chain.ctx == h)) throw contract_error("chain is not in the heart of the twins");
    const Context& amb = tw.inner.ctx;
    std::vector<Mask> classes;
    for (Mask t : heart_chain.classes) classes.push_back(star_torsion_members(tw, t));
    return make_chain(amb, heart_chain.breakpoints, std::move(classes));
}

SlicingReport slicing_identity_check(const TwinPair& tw, const Chain& heart_chain) {
    SlicingReport rep;
    Chain amb = phi_embed(tw, heart_chain);
    const Context& h = heart_chain.ctx;

    Mask lhs0 = slice(amb, kZero).members;
    Mask rhs0 = star_torsionfree_members(tw, slice(heart_chain, kZero).members);
    rep.at_zero = lhs0 == rhs0;
    if (!rep.at_zero)
        rep.diagnostics.push_back("slice at 0: " + mask_str(h, lhs0) + " vs " + mask_str(h, rhs0));

    rep.interior = true;
    std::vector<Rat> interior;
    for (size_t i = 1; i + 1 < heart_chain.breakpoints.size(); ++i)
        interior.push_back(heart_chain.breakpoints[i]);
    // also probe off-breakpoint parameters, where both sides must vanish
    for (size_t i = 0; i + 1 < heart_chain.breakpoints.size(); ++i) {
        Rat sum = heart_chain.breakpoints[i] + heart_chain.breakpoints[i + 1];
        Rat mid(sum.num, sum.den * 2);
        if (kZero < mid && mid < kOne &&
            std::find(heart_chain.breakpoints.begin(), heart_chain.breakpoints.end(), mid) ==
                heart_chain.breakpoints.end())
            interior.push_back(mid);
    }
    for (const Rat& r : interior) {
        Mask lhs = slice(amb, r).members;
        Mask rhs = slice(heart_chain, r).members;
        if (lhs != rhs) {
            rep.interior = false;
            rep.diagnostics.push_back("slice at " + r.str() + ": " + mask_str(h, lhs) + " vs " +
                                      mask_str(h, rhs));
        }
    }

    Mask lhs1 = slice(amb, kOne).members;
    Mask rhs1 = star_torsion_members(tw, slice(heart_chain, kOne).members);
    rep.at_one = lhs1 == rhs1;
    if (!rep.at_one)
        rep.diagnostics.push_back("slice at 1: " + mask_str(h, lhs1) + " vs " + mask_str(h, rhs1));
    return rep;
}

bool closedness_check(const TwinPair& tw, const Chain& ambient_chain, bool exhaustive_witness) {
    const Context& amb = tw.inner.ctx;
    if (!(ambient_chain.ctx == amb)) throw contract_error("chain is not ambient");
    Context h = heart(tw);
    bool sandwiched = true;
    for (Mask x : ambient_chain.classes)
        if (!masks::subset(tw.inner.torsion, x) || !masks::subset(x, tw.outer.torsion))
            sandwiched = false;
    if (sandwiched) {
        std::vector<Mask> hcls;
        for (Mask x : ambient_chain.classes) hcls.push_back(x & tw.inner.torsionfree);
        Chain pulled = make_chain(h, ambient_chain.breakpoints, std::move(hcls));
        if (!(distance(ambient_chain, phi_embed(tw, pulled)) == kZero))
            throw theorem_violation("sandwiched chain is not at distance zero from its image");
        return true;
    }
    if (exhaustive_witness) {
        // every heart chain over these breakpoints stays at positive distance
        auto heart_classes = enumerate_torsion_classes(h);
        size_t m = ambient_chain.classes.size();
        std::vector<size_t> pick(m, 0);
        while (true) {
            bool valid = true;
            for (size_t i = 0; i + 1 < m && valid; ++i) {
                Mask a = heart_classes[pick[i]].torsion, b = heart_classes[pick[i + 1]].torsion;
                if (!(masks::subset(b, a) && a != b)) valid = false;
            }
            if (valid) {
                std::vector<Mask> cls;
                for (size_t i = 0; i < m; ++i) cls.push_back(heart_classes[pick[i]].torsion);
                Chain cand = make_chain(h, ambient_chain.breakpoints, std::move(cls));
                if (distance(ambient_chain, phi_embed(tw, cand)) == kZero)
                    throw theorem_violation("unsandwiched chain at distance zero from the image");
            }
            size_t k = 0;
            while (k < m && pick[k] + 1 == heart_classes.size()) pick[k++] = 0;
            if (k == m) break;
            ++pick[k];
        }
    }
    return false;
}

bool union_intersection_pairs_ok(const Chain& c, const Rat& r) {
    const Context& ctx = c.ctx;
    // (union of T_s above r, intersection of F_s above r)
    Mask up_t = (r == kOne) ? 0 : eta_right(c, r);
    if (!is_torsion_pair(ctx, up_t, perp_right(ctx, up_t))) return false;
    // (intersection of T_s below r, union of F_s below r)
    Mask down_t = (r == kZero) ? ctx.members : eta_left(c, r);
    return is_torsion_pair(ctx, down_t, perp_right(ctx, down_t));
}

}  // namespace torsionlab
