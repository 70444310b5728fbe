#include "torsionlab/rep.hpp"

#include <algorithm>

namespace torsionlab {

Rep::Rep(QuiverPtr q, Field f, std::vector<int> dims, std::vector<Matrix> maps)
    : q_(std::move(q)), f_(f), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (static_cast<int>(dims_.size()) != q_->vertices())
        throw contract_error("dimension vector length mismatch");
    if (maps_.size() != q_->arrows().size()) throw contract_error("arrow map count mismatch");
    for (size_t a = 0; a < maps_.size(); ++a) {
        auto [s, t] = q_->arrows()[a];
        if (maps_[a].rows() != dims_[t] || maps_[a].cols() != dims_[s] || maps_[a].field() != f_)
            throw contract_error("arrow map shape/field mismatch");
    }
}

Rep Rep::zero(QuiverPtr q, Field f) {
    std::vector<int> dims(q->vertices(), 0);
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q->arrows().size(); ++a) maps.emplace_back(f, 0, 0);
    return Rep(std::move(q), f, std::move(dims), std::move(maps));
}

int Rep::total_dim() const {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
}

bool Rep::same_shape(const Rep& o) const { return *q_ == *o.q_ && f_ == o.f_; }

RepMor::RepMor(Rep s, Rep t, std::vector<Matrix> b)
    : src(std::move(s)), tgt(std::move(t)), blocks(std::move(b)) {
    if (!src.same_shape(tgt)) throw contract_error("morphism between different quivers/fields");
    const auto& q = *src.quiver();
    if (static_cast<int>(blocks.size()) != q.vertices())
        throw contract_error("morphism block count mismatch");
    for (int v = 0; v < q.vertices(); ++v)
        if (blocks[v].rows() != tgt.dim(v) || blocks[v].cols() != src.dim(v))
            throw contract_error("morphism block shape mismatch");
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [sv, tv] = q.arrows()[a];
        if (!(blocks[tv] * src.map(static_cast<int>(a)) ==
              tgt.map(static_cast<int>(a)) * blocks[sv]))
            throw contract_error("morphism does not commute with arrow maps");
    }
}

RepMor identity_mor(const Rep& m) {
    std::vector<Matrix> blocks;
    for (int v = 0; v < m.quiver()->vertices(); ++v)
        blocks.push_back(Matrix::identity(m.field(), m.dim(v)));
    return RepMor(m, m, std::move(blocks));
}

RepMor zero_mor(const Rep& src, const Rep& tgt) {
    std::vector<Matrix> blocks;
    for (int v = 0; v < src.quiver()->vertices(); ++v)
        blocks.emplace_back(src.field(), tgt.dim(v), src.dim(v));
    return RepMor(src, tgt, std::move(blocks));
}

RepMor compose(const RepMor& g, const RepMor& f) {
    if (!(g.src == f.tgt)) throw contract_error("composition shape mismatch");
    std::vector<Matrix> blocks;
    for (size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(g.blocks[v] * f.blocks[v]);
    return RepMor(f.src, g.tgt, std::move(blocks));
}

RepMor mor_add(const RepMor& f, const RepMor& g) {
    std::vector<Matrix> blocks;
    for (size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(f.blocks[v] + g.blocks[v]);
    return RepMor(f.src, f.tgt, std::move(blocks));
}

RepMor mor_sub(const RepMor& f, const RepMor& g) {
    std::vector<Matrix> blocks;
    for (size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(f.blocks[v] - g.blocks[v]);
    return RepMor(f.src, f.tgt, std::move(blocks));
}

RepMor mor_scale(const Scalar& c, const RepMor& f) {
    std::vector<Matrix> blocks;
    for (auto& b : f.blocks) blocks.push_back(b.scaled(c));
    return RepMor(f.src, f.tgt, std::move(blocks));
}

bool is_zero_mor(const RepMor& f) {
    return std::all_of(f.blocks.begin(), f.blocks.end(),
                       [](const Matrix& b) { return b.is_zero(); });
}

bool is_mono(const RepMor& f) {
    for (const auto& b : f.blocks)
        if (rank(b) != b.cols()) return false;
    return true;
}

bool is_epi(const RepMor& f) {
    for (const auto& b : f.blocks)
        if (rank(b) != b.rows()) return false;
    return true;
}

bool is_iso(const RepMor& f) {
    for (const auto& b : f.blocks)
        if (!is_invertible(b)) return false;
    return true;
}

RepMor inverse_iso(const RepMor& f) {
    std::vector<Matrix> blocks;
    for (const auto& b : f.blocks) blocks.push_back(inverse(b));
    return RepMor(f.tgt, f.src, std::move(blocks));
}

std::vector<RepMor> hom_basis(const Rep& m, const Rep& n) {
    if (!m.same_shape(n)) throw contract_error("hom between different quivers/fields");
    const auto& q = *m.quiver();
    const Field f = m.field();
    // Unknowns: entries of all blocks, vertex-major then row-major.
    std::vector<int> offset(q.vertices() + 1, 0);
    for (int v = 0; v < q.vertices(); ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    int unknowns = offset[q.vertices()];
    int eqs = 0;
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [s, t] = q.arrows()[a];
        eqs += n.dim(t) * m.dim(s);
    }
    Matrix sys(f, eqs, unknowns);
    int row = 0;
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [s, t] = q.arrows()[a];
        const Matrix& ms = m.map(static_cast<int>(a));  // m.dim(t) x m.dim(s)
        const Matrix& nt = n.map(static_cast<int>(a));  // n.dim(t) x n.dim(s)
        // constraint: B_t * ms - nt * B_s = 0, entry (i, j) for i < n.dim(t), j < m.dim(s)
        for (int i = 0; i < n.dim(t); ++i)
            for (int j = 0; j < m.dim(s); ++j) {
                for (int k = 0; k < m.dim(t); ++k)
                    sys.at(row, offset[t] + i * m.dim(t) + k) =
                        sys.at(row, offset[t] + i * m.dim(t) + k) + ms.at(k, j);
                for (int k = 0; k < n.dim(s); ++k)
                    sys.at(row, offset[s] + k * m.dim(s) + j) =
                        sys.at(row, offset[s] + k * m.dim(s) + j) - nt.at(i, k);
                ++row;
            }
    }
    Matrix basis = kernel_basis(sys);
    std::vector<RepMor> out;
    for (int c = 0; c < basis.cols(); ++c) {
        std::vector<Matrix> blocks;
        for (int v = 0; v < q.vertices(); ++v) {
            Matrix b(f, n.dim(v), m.dim(v));
            for (int i = 0; i < n.dim(v); ++i)
                for (int j = 0; j < m.dim(v); ++j)
                    b.at(i, j) = basis.at(offset[v] + i * m.dim(v) + j, c);
            blocks.push_back(std::move(b));
        }
        out.emplace_back(m, n, std::move(blocks));
    }
    return out;
}

int hom_dim(const Rep& m, const Rep& n) { return static_cast<int>(hom_basis(m, n).size()); }

std::vector<RepMor> hom_all(const Rep& m, const Rep& n, long long cap) {
    if (!m.field().is_finite()) throw size_error("hom space sweep requires a finite field");
    auto basis = hom_basis(m, n);
    long long count = 1;
    for (size_t i = 0; i < basis.size(); ++i) {
        count *= m.field().p;
        if (count > cap) throw size_error("hom space sweep exceeds cap");
    }
    auto elems = field_elements(m.field());
    std::vector<RepMor> out;
    std::vector<size_t> idx(basis.size(), 0);
    while (true) {
        RepMor f = zero_mor(m, n);
        for (size_t i = 0; i < basis.size(); ++i)
            if (idx[i] != 0) f = mor_add(f, mor_scale(elems[idx[i]], basis[i]));
        out.push_back(std::move(f));
        size_t k = 0;
        while (k < idx.size() && idx[k] + 1 == elems.size()) idx[k++] = 0;
        if (k == idx.size()) break;
        ++idx[k];
    }
    return out;
}

std::optional<std::vector<Scalar>> express_in_basis(const std::vector<RepMor>& basis,
                                                    const RepMor& f) {
    const Field fld = f.src.field();
    int dim = 0;
    for (const auto& b : f.blocks) dim += b.rows() * b.cols();
    auto vectorize = [&](const RepMor& g) {
        Matrix v(fld, dim, 1);
        int k = 0;
        for (const auto& b : g.blocks)
            for (int i = 0; i < b.rows(); ++i)
                for (int j = 0; j < b.cols(); ++j) v.at(k++, 0) = b.at(i, j);
        return v;
    };
    Matrix sys(fld, dim, static_cast<int>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c) {
        Matrix col = vectorize(basis[c]);
        for (int i = 0; i < dim; ++i) sys.at(i, static_cast<int>(c)) = col.at(i, 0);
    }
    auto sol = solve(sys, vectorize(f));
    if (!sol) return std::nullopt;
    std::vector<Scalar> out;
    for (int i = 0; i < sol->rows(); ++i) out.push_back(sol->at(i, 0));
    return out;
}

SubRep sub_rep(const Rep& m, const std::vector<Matrix>& vertex_bases) {
    const auto& q = *m.quiver();
    const Field f = m.field();
    std::vector<Matrix> bases;
    for (int v = 0; v < q.vertices(); ++v) {
        if (vertex_bases[v].cols() != m.dim(v)) throw contract_error("subspace width mismatch");
        bases.push_back(row_space(vertex_bases[v]));
    }
    std::vector<int> dims;
    for (int v = 0; v < q.vertices(); ++v) dims.push_back(bases[v].rows());
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [s, t] = q.arrows()[a];
        // solve bases[t]^T * X = map_a * bases[s]^T; solvable iff closed under maps
        Matrix rhs = m.map(static_cast<int>(a)) * bases[s].transpose();
        auto x = solve(bases[t].transpose(), rhs);
        if (!x || !(bases[t].transpose() * *x == rhs))
            throw contract_error("vertex subspaces are not closed under arrow maps");
        maps.push_back(*x);
    }
    Rep sub(m.quiver(), f, dims, std::move(maps));
    std::vector<Matrix> incl;
    for (int v = 0; v < q.vertices(); ++v) incl.push_back(bases[v].transpose());
    RepMor im(sub, m, std::move(incl));
    return {std::move(bases), std::move(sub), std::move(im)};
}

SubRep full_sub(const Rep& m) {
    std::vector<Matrix> bases;
    for (int v = 0; v < m.quiver()->vertices(); ++v)
        bases.push_back(Matrix::identity(m.field(), m.dim(v)));
    return sub_rep(m, bases);
}

SubRep zero_sub(const Rep& m) {
    std::vector<Matrix> bases;
    for (int v = 0; v < m.quiver()->vertices(); ++v)
        bases.emplace_back(m.field(), 0, m.dim(v));
    return sub_rep(m, bases);
}

QuotRep quotient_rep(const Rep& m, const std::vector<Matrix>& sub_bases) {
    const auto& q = *m.quiver();
    const Field f = m.field();
    std::vector<Matrix> projs;
    std::vector<int> dims;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix u = row_space(sub_bases[v]);
        RrefResult rr = rref(u);
        std::vector<bool> is_piv(m.dim(v), false);
        for (int p : rr.pivots) is_piv[p] = true;
        std::vector<int> non_piv;
        for (int c = 0; c < m.dim(v); ++c)
            if (!is_piv[c]) non_piv.push_back(c);
        // pi(x) reads the non-pivot coordinates of x reduced modulo the subspace
        Matrix pi(f, static_cast<int>(non_piv.size()), m.dim(v));
        for (size_t i = 0; i < non_piv.size(); ++i) {
            pi.at(static_cast<int>(i), non_piv[i]) = scalar_one(f);
            for (size_t k = 0; k < rr.pivots.size(); ++k)
                pi.at(static_cast<int>(i), rr.pivots[k]) =
                    pi.at(static_cast<int>(i), rr.pivots[k]) -
                    u.at(static_cast<int>(k), non_piv[i]);
        }
        // Row k of u has pivot 1 at pivots[k]; subtracting x_{p_k} * u_k from x
        // zeroes pivot coords, leaving non-pivot coords x_j - sum_k x_{p_k} u_{k j}.
        dims.push_back(pi.rows());
        projs.push_back(std::move(pi));
    }
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [s, t] = q.arrows()[a];
        // solve X * proj_s = proj_t * map_a  (unique; proj_s has full row rank)
        Matrix rhs = (projs[t] * m.map(static_cast<int>(a))).transpose();
        auto x = solve(projs[s].transpose(), rhs);
        if (!x || !(projs[s].transpose() * *x == rhs))
            throw contract_error("quotient construction: subspaces not arrow-closed");
        maps.push_back(x->transpose());
    }
    Rep quot(m.quiver(), f, dims, std::move(maps));
    RepMor pr(m, quot, std::move(projs));
    return {std::move(quot), std::move(pr)};
}

SubRep kernel(const RepMor& f) {
    std::vector<Matrix> bases;
    for (size_t v = 0; v < f.blocks.size(); ++v)
        bases.push_back(kernel_basis(f.blocks[v]).transpose());
    return sub_rep(f.src, bases);
}

SubRep image(const RepMor& f) {
    std::vector<Matrix> bases;
    for (size_t v = 0; v < f.blocks.size(); ++v) bases.push_back(col_space(f.blocks[v]));
    return sub_rep(f.tgt, bases);
}

QuotRep cokernel(const RepMor& f) {
    std::vector<Matrix> bases;
    for (size_t v = 0; v < f.blocks.size(); ++v) bases.push_back(col_space(f.blocks[v]));
    return quotient_rep(f.tgt, bases);
}

RepMor corestrict(const RepMor& f, const SubRep& sub_of_tgt) {
    std::vector<Matrix> blocks;
    for (size_t v = 0; v < f.blocks.size(); ++v) {
        auto x = solve(sub_of_tgt.incl.blocks[v], f.blocks[v]);
        if (!x || !(sub_of_tgt.incl.blocks[v] * *x == f.blocks[v]))
            throw contract_error("corestrict: image not contained in subobject");
        blocks.push_back(*x);
    }
    return RepMor(f.src, sub_of_tgt.rep, std::move(blocks));
}

RepMor restrict_mor(const RepMor& f, const SubRep& u_in_src, const SubRep& v_in_tgt) {
    return corestrict(compose(f, u_in_src.incl), v_in_tgt);
}

std::vector<Matrix> image_bases(const RepMor& f, const std::vector<Matrix>& u) {
    std::vector<Matrix> out;
    for (size_t v = 0; v < f.blocks.size(); ++v)
        out.push_back(col_space(f.blocks[v] * u[v].transpose()));
    return out;
}

std::vector<Matrix> preimage_bases(const RepMor& f, const std::vector<Matrix>& w) {
    // f^{-1}(W) per vertex: kernel of (quotient by W) composed with f
    std::vector<Matrix> out;
    for (size_t v = 0; v < f.blocks.size(); ++v) {
        Matrix u = row_space(w[v]);
        RrefResult rr = rref(u);
        std::vector<bool> is_piv(f.tgt.dim(static_cast<int>(v)), false);
        for (int p : rr.pivots) is_piv[p] = true;
        Matrix pi(f.src.field(), f.tgt.dim(static_cast<int>(v)) - u.rows(),
                  f.tgt.dim(static_cast<int>(v)));
        int r = 0;
        for (int c = 0; c < f.tgt.dim(static_cast<int>(v)); ++c) {
            if (is_piv[c]) continue;
            pi.at(r, c) = scalar_one(f.src.field());
            for (size_t k = 0; k < rr.pivots.size(); ++k)
                pi.at(r, rr.pivots[k]) =
                    pi.at(r, rr.pivots[k]) - u.at(static_cast<int>(k), c);
            ++r;
        }
        out.push_back(kernel_basis(pi * f.blocks[v]).transpose());
    }
    return out;
}

bool sub_contained(const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
    for (size_t i = 0; i < u.size(); ++i)
        if (!row_space_contains(row_space(v[i]), u[i])) return false;
    return true;
}

std::vector<Matrix> sub_sum(const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
    std::vector<Matrix> out;
    for (size_t i = 0; i < u.size(); ++i) out.push_back(row_space_sum(u[i], v[i]));
    return out;
}

SumRep direct_sum(const Rep& a, const Rep& b) {
    if (!a.same_shape(b)) throw contract_error("direct sum of incompatible representations");
    const auto& q = *a.quiver();
    const Field f = a.field();
    std::vector<int> dims;
    for (int v = 0; v < q.vertices(); ++v) dims.push_back(a.dim(v) + b.dim(v));
    std::vector<Matrix> maps;
    for (size_t ar = 0; ar < q.arrows().size(); ++ar) {
        auto [s, t] = q.arrows()[ar];
        Matrix m(f, dims[t], dims[s]);
        for (int i = 0; i < a.dim(t); ++i)
            for (int j = 0; j < a.dim(s); ++j) m.at(i, j) = a.map(static_cast<int>(ar)).at(i, j);
        for (int i = 0; i < b.dim(t); ++i)
            for (int j = 0; j < b.dim(s); ++j)
                m.at(a.dim(t) + i, a.dim(s) + j) = b.map(static_cast<int>(ar)).at(i, j);
        maps.push_back(std::move(m));
    }
    Rep sum(a.quiver(), f, dims, std::move(maps));
    std::vector<Matrix> i1, i2, p1, p2;
    for (int v = 0; v < q.vertices(); ++v) {
        Matrix m1(f, dims[v], a.dim(v)), m2(f, dims[v], b.dim(v));
        Matrix q1(f, a.dim(v), dims[v]), q2(f, b.dim(v), dims[v]);
        for (int i = 0; i < a.dim(v); ++i) {
            m1.at(i, i) = scalar_one(f);
            q1.at(i, i) = scalar_one(f);
        }
        for (int i = 0; i < b.dim(v); ++i) {
            m2.at(a.dim(v) + i, i) = scalar_one(f);
            q2.at(i, a.dim(v) + i) = scalar_one(f);
        }
        i1.push_back(std::move(m1));
        i2.push_back(std::move(m2));
        p1.push_back(std::move(q1));
        p2.push_back(std::move(q2));
    }
    return {sum, RepMor(a, sum, std::move(i1)), RepMor(b, sum, std::move(i2)),
            RepMor(sum, a, std::move(p1)), RepMor(sum, b, std::move(p2))};
}

bool is_ses(const RepMor& mono, const RepMor& epi) {
    if (!(mono.tgt == epi.src)) return false;
    if (!is_mono(mono) || !is_epi(epi)) return false;
    if (!is_zero_mor(compose(epi, mono))) return false;
    // image(mono) == kernel(epi) as subspace tuples
    for (size_t v = 0; v < mono.blocks.size(); ++v) {
        Matrix im = col_space(mono.blocks[v]);
        Matrix ker = row_space(kernel_basis(epi.blocks[v]).transpose());
        if (!(im == ker)) return false;
    }
    return true;
}

Rep transport(const Rep& m, const std::vector<Matrix>& p) {
    const auto& q = *m.quiver();
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q.arrows().size(); ++a) {
        auto [s, t] = q.arrows()[a];
        maps.push_back(p[t] * m.map(static_cast<int>(a)) * inverse(p[s]));
    }
    return Rep(m.quiver(), m.field(), m.dims(), std::move(maps));
}

}  // namespace torsionlab
