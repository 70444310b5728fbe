#include "torsionlab/category.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace torsionlab {

namespace {

std::string label_of_dims(const std::vector<int>& dims) {
    std::string s;
    bool wide = std::any_of(dims.begin(), dims.end(), [](int d) { return d > 9; });
    for (size_t i = 0; i < dims.size(); ++i) {
        if (wide && i) s += '-';
        s += std::to_string(dims[i]);
    }
    return s;
}

int total_of(const std::vector<int>& dims) {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

bool dims_less(const std::vector<int>& a, const std::vector<int>& b) {
    int ta = total_of(a), tb = total_of(b);
    if (ta != tb) return ta < tb;
    return a < b;
}

// Search for the unique indecomposable with the given root as dimension
// vector, trying {0,1} arrow matrices in lexicographic order. For Dynkin
// quivers an indecomposable is exactly a brick (End of dimension 1), and
// every indecomposable admits a 0/1 realization.
Rep find_indec(const QuiverPtr& q, const Field& f, const std::vector<int>& root) {
    long long entries = 0;
    for (auto [s, t] : q->arrows()) entries += static_cast<long long>(root[s]) * root[t];
    if (entries > 20) throw size_error("indecomposable search space too large");
    std::vector<std::pair<int, int>> pos;  // (arrow, entry index)
    for (size_t a = 0; a < q->arrows().size(); ++a) {
        auto [s, t] = q->arrows()[a];
        for (int k = 0; k < root[t] * root[s]; ++k) pos.emplace_back(static_cast<int>(a), k);
    }
    std::vector<int> bits(pos.size(), 0);
    while (true) {
        std::vector<Matrix> maps;
        for (size_t a = 0; a < q->arrows().size(); ++a) {
            auto [s, t] = q->arrows()[a];
            maps.emplace_back(f, root[t], root[s]);
        }
        for (size_t i = 0; i < pos.size(); ++i) {
            if (!bits[i]) continue;
            auto [a, k] = pos[i];
            auto [s, t] = q->arrows()[a];
            maps[a].at(k / root[s], k % root[s]) = scalar_one(f);
        }
        Rep cand(q, f, root, std::move(maps));
        if (hom_dim(cand, cand) == 1) return cand;
        size_t i = 0;
        while (i < bits.size() && bits[i] == 1) bits[i++] = 0;
        if (i == bits.size()) break;
        bits[i] = 1;
    }
    throw theorem_violation("no indecomposable found for root " + label_of_dims(root));
}

std::string scalar_store(const Scalar& s) { return s.str(); }

}  // namespace

int ModuleCategory::id_by_label(const std::string& label) const {
    for (int i = 0; i < count(); ++i)
        if (labels_[i] == label) return i;
    throw parse_error("unknown indecomposable label: " + label);
}

int ModuleCategory::id_by_dims(const std::vector<int>& dims) const {
    for (int i = 0; i < count(); ++i)
        if (indecs_[i].dims() == dims) return i;
    return -1;
}

std::shared_ptr<const ModuleCategory> ModuleCategory::build(QuiverPtr q, Field f,
                                                            const std::string* cache_path) {
    auto cat = std::shared_ptr<ModuleCategory>(new ModuleCategory());
    cat->q_ = q;
    cat->f_ = f;

    auto roots = q->positive_roots();
    std::sort(roots.begin(), roots.end(), dims_less);

    bool loaded = false;
    if (cache_path) {
        std::ifstream in(*cache_path);
        if (in) {
            try {
                nlohmann::json j;
                in >> j;
                if (j.at("quiver_hash").get<std::string>() == std::to_string(q->hash()) &&
                    j.at("field").get<std::string>() == f.name() &&
                    j.at("indecs").size() == roots.size()) {
                    std::vector<Rep> reps;
                    for (size_t i = 0; i < roots.size(); ++i) {
                        const auto& ji = j.at("indecs").at(i);
                        std::vector<int> dims = ji.at("dims").get<std::vector<int>>();
                        if (dims != roots[i]) throw error("cache root mismatch");
                        std::vector<Matrix> maps;
                        for (size_t a = 0; a < q->arrows().size(); ++a) {
                            auto [s, t] = q->arrows()[a];
                            Matrix m(f, dims[t], dims[s]);
                            const auto& ent = ji.at("maps").at(a);
                            int k = 0;
                            for (int r = 0; r < m.rows(); ++r)
                                for (int c = 0; c < m.cols(); ++c)
                                    m.at(r, c) = Scalar::parse(f, ent.at(k++).get<std::string>());
                            maps.push_back(std::move(m));
                        }
                        Rep r(q, f, dims, std::move(maps));
                        if (hom_dim(r, r) != 1) throw error("cached entry not a brick");
                        reps.push_back(std::move(r));
                    }
                    cat->indecs_ = std::move(reps);
                    loaded = true;
                }
            } catch (...) {
                loaded = false;  // ignore bad caches
            }
        }
    }
    if (!loaded)
        for (const auto& root : roots) cat->indecs_.push_back(find_indec(q, f, root));

    for (const auto& r : cat->indecs_) cat->labels_.push_back(label_of_dims(r.dims()));

    int n = cat->count();
    cat->homdim_.assign(n, std::vector<int>(n, 0));
    cat->hom_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        cat->hom_[i].resize(n);
        for (int j = 0; j < n; ++j) {
            cat->hom_[i][j] = hom_basis(cat->indecs_[i], cat->indecs_[j]);
            cat->homdim_[i][j] = static_cast<int>(cat->hom_[i][j].size());
        }
    }
    cat->ext_.assign(n, {});
    for (int c = 0; c < n; ++c) {
        cat->ext_[c].resize(n);
        for (int a = 0; a < n; ++a)
            cat->ext_[c][a] = cat->compute_ext_middles(cat->indecs_[c], cat->indecs_[a]);
    }

    if (cache_path && !loaded) {
        nlohmann::json j;
        j["quiver_hash"] = std::to_string(q->hash());
        j["field"] = f.name();
        j["indecs"] = nlohmann::json::array();
        for (const auto& r : cat->indecs_) {
            nlohmann::json ji;
            ji["dims"] = r.dims();
            ji["maps"] = nlohmann::json::array();
            for (size_t a = 0; a < q->arrows().size(); ++a) {
                nlohmann::json jm = nlohmann::json::array();
                const Matrix& m = r.map(static_cast<int>(a));
                for (int rr = 0; rr < m.rows(); ++rr)
                    for (int cc = 0; cc < m.cols(); ++cc) jm.push_back(scalar_store(m.at(rr, cc)));
                ji["maps"].push_back(std::move(jm));
            }
            j["indecs"].push_back(std::move(ji));
        }
        std::string tmp = *cache_path + ".tmp";
        std::ofstream out(tmp);
        if (out) {
            out << j.dump(1);
            out.close();
            std::rename(tmp.c_str(), cache_path->c_str());
        }
    }
    return cat;
}

std::vector<Rep> ModuleCategory::split_indec(const Rep& m) const {
    if (m.total_dim() == 0) return {};
    auto ends = hom_basis(m, m);
    if (ends.size() == 1) return {m};  // brick, hence indecomposable

    int big_n = m.total_dim();
    auto fitting_split = [&](const RepMor& e) -> std::optional<std::pair<Rep, Rep>> {
        RepMor p = e;
        for (int k = 1; k < big_n; ++k) p = compose(p, e);
        SubRep ker = kernel(p);
        SubRep im = image(p);
        int dk = ker.rep.total_dim(), di = im.rep.total_dim();
        if (dk == 0 || di == 0) return std::nullopt;
        if (dk + di != m.total_dim()) return std::nullopt;  // not yet stable; skip
        for (int v = 0; v < m.quiver()->vertices(); ++v)
            if (row_space_sum(ker.bases[v], im.bases[v]).rows() != m.dim(v))
                return std::nullopt;
        return std::make_pair(ker.rep, im.rep);
    };

    auto recurse = [&](const std::pair<Rep, Rep>& parts) {
        auto left = split_indec(parts.first);
        auto right = split_indec(parts.second);
        left.insert(left.end(), right.begin(), right.end());
        return left;
    };

    if (f_.is_finite()) {
        long long combos = 1;
        bool full = true;
        for (size_t i = 0; i < ends.size(); ++i) {
            combos *= f_.p;
            if (combos > (1 << 16)) {
                full = false;
                break;
            }
        }
        if (full) {
            auto elems = field_elements(f_);
            std::vector<size_t> idx(ends.size(), 0);
            while (true) {
                size_t k = 0;
                while (k < idx.size() && idx[k] + 1 == elems.size()) idx[k++] = 0;
                if (k == idx.size()) break;
                ++idx[k];
                RepMor e = zero_mor(m, m);
                for (size_t i = 0; i < ends.size(); ++i)
                    if (idx[i] != 0) e = mor_add(e, mor_scale(elems[idx[i]], ends[i]));
                if (auto parts = fitting_split(e)) return recurse(*parts);
            }
            return {m};  // every endomorphism is nilpotent or invertible
        }
        // Partial sweep: single basis elements, then pairwise sums.
        for (const auto& e : ends)
            if (auto parts = fitting_split(e)) return recurse(*parts);
        for (size_t i = 0; i < ends.size(); ++i)
            for (size_t j = i + 1; j < ends.size(); ++j)
                if (auto parts = fitting_split(mor_add(ends[i], ends[j]))) return recurse(*parts);
        throw size_error("endomorphism sweep cap exceeded while decomposing");
    }

    // Rationals: deterministic heuristic sweep over small combinations.
    std::vector<long long> coeffs = {1, -1, 2, 3};
    for (const auto& e : ends)
        if (auto parts = fitting_split(e)) return recurse(*parts);
    for (size_t i = 0; i < ends.size(); ++i)
        for (size_t j = i + 1; j < ends.size(); ++j)
            for (long long ci : coeffs)
                for (long long cj : coeffs) {
                    RepMor e = mor_add(mor_scale(Scalar::of(f_, ci), ends[i]),
                                       mor_scale(Scalar::of(f_, cj), ends[j]));
                    if (auto parts = fitting_split(e)) return recurse(*parts);
                }
    throw undecidable_decomposition(
        "no splitting endomorphism found by the rational heuristics");
}

std::vector<int> ModuleCategory::decompose(const Rep& m) const {
    if (!(*m.quiver() == *q_) || m.field() != f_)
        throw contract_error("representation from a different category");
    auto pieces = split_indec(m);
    std::vector<int> ids;
    for (const auto& p : pieces) {
        int id = id_by_dims(p.dims());
        if (id < 0)
            throw theorem_violation("indecomposable summand has a non-root dimension vector");
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    // partition check: dimension vectors add up
    std::vector<int> sum(q_->vertices(), 0);
    for (int id : ids)
        for (int v = 0; v < q_->vertices(); ++v) sum[v] += indecs_[id].dim(v);
    if (sum != m.dims()) throw theorem_violation("decomposition does not partition dimensions");
    return ids;
}

bool ModuleCategory::is_isomorphic(const Rep& a, const Rep& b) const {
    if (a.dims() != b.dims()) return false;
    return decompose(a) == decompose(b);
}

std::vector<SubRep> ModuleCategory::subobjects(const Rep& m, int bound) const {
    const auto& q = *m.quiver();
    std::vector<std::vector<Matrix>> per_vertex;
    for (int v = 0; v < q.vertices(); ++v)
        per_vertex.push_back(enumerate_subspaces(m.field(), m.dim(v), bound));
    std::vector<SubRep> out;
    std::vector<size_t> idx(q.vertices(), 0);
    while (true) {
        bool closed = true;
        for (size_t a = 0; a < q.arrows().size() && closed; ++a) {
            auto [s, t] = q.arrows()[a];
            Matrix mapped = (m.map(static_cast<int>(a)) * per_vertex[s][idx[s]].transpose())
                                .transpose();
            closed = row_space_contains(per_vertex[t][idx[t]], mapped);
        }
        if (closed) {
            std::vector<Matrix> bases;
            for (int v = 0; v < q.vertices(); ++v) bases.push_back(per_vertex[v][idx[v]]);
            out.push_back(sub_rep(m, bases));
        }
        size_t k = 0;
        while (k < idx.size() && idx[k] + 1 == per_vertex[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
        ++idx[k];
    }
    return out;
}

const std::vector<std::vector<int>>& ModuleCategory::ext_middles(int c, int a) const {
    return ext_[c][a];
}

std::vector<std::vector<int>> ModuleCategory::ext_middles_rep(const Rep& c, const Rep& a) const {
    auto key = std::make_pair(decompose(c), decompose(a));
    {
        std::lock_guard<std::mutex> lock(ext_cache_mu_);
        auto it = ext_cache_.find(key);
        if (it != ext_cache_.end()) return it->second;
    }
    auto result = compute_ext_middles(c, a);
    std::lock_guard<std::mutex> lock(ext_cache_mu_);
    ext_cache_[key] = result;
    return result;
}

Rep ModuleCategory::rep_of_multiset(const std::vector<int>& ids) const {
    Rep r = Rep::zero(q_, f_);
    for (int id : ids) r = direct_sum(r, indecs_[id]).rep;
    return r;
}

ModuleCategory::ProjPres ModuleCategory::projective_presentation(const Rep& c) const {
    const auto& q = *q_;
    const Field f = f_;
    // radical and top of c
    std::vector<Matrix> rad;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix r(f, 0, c.dim(v));
        for (size_t a = 0; a < q.arrows().size(); ++a) {
            auto [s, t] = q.arrows()[a];
            if (t != v) continue;
            r = row_space_sum(r, col_space(c.map(static_cast<int>(a))));
        }
        rad.push_back(std::move(r));
    }
    // greedy top lifts from the standard basis
    std::vector<std::vector<Matrix>> tops(q.vertices());  // column vectors in c_v
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix span = rad[v];
        for (int i = 0; i < c.dim(v); ++i) {
            Matrix e(f, 1, c.dim(v));
            e.at(0, i) = scalar_one(f);
            if (row_space_contains(span, e)) continue;
            span = row_space_sum(span, e);
            tops[v].push_back(e.transpose());
        }
    }
    // P0 = sum over vertices v of P(v)^{#tops[v]}
    std::vector<std::vector<std::vector<int>>> paths(q.vertices());
    for (int v = 0; v < q.vertices(); ++v) paths[v] = q.paths_from(v);
    auto path_end = [&](int v, const std::vector<int>& p) {
        int end = v;
        for (int a : p) end = q.arrows()[a].second;
        return end;
    };
    auto apply_path = [&](const std::vector<int>& p, Matrix vec) {
        for (int a : p) vec = c.map(a) * vec;
        return vec;
    };

    Rep p0 = Rep::zero(q_, f);
    std::vector<Matrix> epi_blocks;
    for (int v = 0; v < q.vertices(); ++v) epi_blocks.emplace_back(f, c.dim(v), 0);

    for (int v = 0; v < q.vertices(); ++v) {
        // projective at v: basis of P(v)_u indexed by paths v ~> u
        std::vector<std::vector<std::vector<int>>> by_end(q.vertices());
        for (const auto& p : paths[v]) by_end[path_end(v, p)].push_back(p);
        std::vector<int> pdims;
        for (int u = 0; u < q.vertices(); ++u) pdims.push_back(static_cast<int>(by_end[u].size()));
        std::vector<Matrix> pmaps;
        for (size_t a = 0; a < q.arrows().size(); ++a) {
            auto [s, t] = q.arrows()[a];
            Matrix m(f, pdims[t], pdims[s]);
            for (size_t i = 0; i < by_end[s].size(); ++i) {
                auto ext = by_end[s][i];
                ext.push_back(static_cast<int>(a));
                auto it = std::find(by_end[t].begin(), by_end[t].end(), ext);
                m.at(static_cast<int>(it - by_end[t].begin()), static_cast<int>(i)) =
                    scalar_one(f);
            }
            pmaps.push_back(std::move(m));
        }
        Rep pv(q_, f, pdims, std::move(pmaps));
        for (const auto& w : tops[v]) {
            // map P(v) -> c sending the trivial path to w
            std::vector<Matrix> blocks;
            for (int u = 0; u < q.vertices(); ++u) {
                Matrix b(f, c.dim(u), pdims[u]);
                for (size_t i = 0; i < by_end[u].size(); ++i) {
                    Matrix img = apply_path(by_end[u][i], w);
                    for (int r = 0; r < c.dim(u); ++r) b.at(r, static_cast<int>(i)) = img.at(r, 0);
                }
                blocks.push_back(std::move(b));
            }
            SumRep s = direct_sum(p0, pv);
            for (int u = 0; u < q.vertices(); ++u)
                epi_blocks[u] = Matrix::hstack(epi_blocks[u], blocks[u]);
            p0 = s.rep;
        }
    }
    RepMor epi(p0, c, std::move(epi_blocks));
    if (!is_epi(epi)) throw theorem_violation("projective presentation is not surjective");
    SubRep k = kernel(epi);
    return {k.rep, p0, k.incl, epi};
}

std::vector<std::vector<int>> ModuleCategory::compute_ext_middles(const Rep& c,
                                                                  const Rep& a) const {
    std::vector<std::vector<int>> out;
    auto add = [&out](std::vector<int> ms) {
        if (std::find(out.begin(), out.end(), ms) == out.end()) out.push_back(std::move(ms));
    };
    // split class
    {
        auto da = decompose(a);
        auto dc = decompose(c);
        da.insert(da.end(), dc.begin(), dc.end());
        std::sort(da.begin(), da.end());
        add(std::move(da));
    }
    if (c.total_dim() != 0 && a.total_dim() != 0) {
        auto pres = projective_presentation(c);
        auto basis1 = hom_basis(pres.p1, a);
        if (!basis1.empty()) {
            // image of restriction Hom(P0, a) -> Hom(P1, a) in basis coordinates
            auto basis0 = hom_basis(pres.p0, a);
            Matrix im(f_, 0, static_cast<int>(basis1.size()));
            for (const auto& phi : basis0) {
                auto coords = express_in_basis(basis1, compose(phi, pres.incl));
                if (!coords) throw theorem_violation("restriction left the hom space");
                Matrix row(f_, 1, static_cast<int>(basis1.size()));
                for (size_t i = 0; i < coords->size(); ++i)
                    row.at(0, static_cast<int>(i)) = (*coords)[i];
                im = row_space_sum(im, row);
            }
            int ext_dim = static_cast<int>(basis1.size()) - im.rows();
            if (ext_dim > 0) {
                if (!f_.is_finite()) throw size_error("ext class sweep requires a finite field");
                long long classes = 1;
                for (int i = 0; i < ext_dim; ++i) {
                    classes *= f_.p;
                    if (classes > (1 << 12)) throw size_error("ext class sweep too large");
                }
                // coset representatives: free coordinates off the image pivots
                RrefResult rr = rref(im);
                std::vector<int> free_coords;
                {
                    size_t pi = 0;
                    for (int cc = 0; cc < static_cast<int>(basis1.size()); ++cc) {
                        if (pi < rr.pivots.size() && rr.pivots[pi] == cc)
                            ++pi;
                        else
                            free_coords.push_back(cc);
                    }
                }
                auto elems = field_elements(f_);
                std::vector<size_t> idx(free_coords.size(), 0);
                while (true) {
                    size_t k = 0;
                    while (k < idx.size() && idx[k] + 1 == elems.size()) idx[k++] = 0;
                    if (k == idx.size()) break;
                    ++idx[k];
                    RepMor phi = zero_mor(pres.p1, a);
                    for (size_t i = 0; i < free_coords.size(); ++i)
                        if (idx[i] != 0)
                            phi = mor_add(phi, mor_scale(elems[idx[i]], basis1[free_coords[i]]));
                    // pushout middle term: coker of (incl, -phi): P1 -> P0 + a
                    SumRep s = direct_sum(pres.p0, a);
                    RepMor psi = mor_sub(compose(s.in1, pres.incl), compose(s.in2, phi));
                    QuotRep b = cokernel(psi);
                    RepMor mono = compose(b.proj, s.in2);
                    // epi: b -> c induced by pres.epi on the first summand
                    std::vector<Matrix> eb;
                    RepMor lift = compose(pres.epi, s.pr1);
                    for (size_t v = 0; v < b.proj.blocks.size(); ++v) {
                        auto x = solve(b.proj.blocks[v].transpose(),
                                       lift.blocks[v].transpose());
                        if (!x) throw theorem_violation("middle term epi construction failed");
                        eb.push_back(x->transpose());
                    }
                    RepMor epi(b.rep, c, std::move(eb));
                    if (!is_ses(mono, epi))
                        throw theorem_violation("extension middle term is not exact");
                    add(decompose(b.rep));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace torsionlab
