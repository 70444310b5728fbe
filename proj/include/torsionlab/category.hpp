#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "torsionlab/rep.hpp"

namespace torsionlab {

// The ambient abelian category of finite-dimensional representations of a
// Dynkin quiver over an exact field: canonical indecomposable table, Hom
// data, decomposition, subobject enumeration and extension middle terms.
//
// Indecomposables are identified with their table index (IndecId), ordered by
// (total dimension, dimension vector lexicographic); by Gabriel's theorem the
// dimension vector alone pins the isomorphism class.
class ModuleCategory {
  public:
    // cache_path: optional JSON cache for the indecomposable table, keyed by
    // (quiver hash, field). Best effort: load failures fall back to a fresh
    // computation, writes are atomic.
    static std::shared_ptr<const ModuleCategory> build(QuiverPtr q, Field f,
                                                       const std::string* cache_path = nullptr);

    const QuiverPtr& quiver() const { return q_; }
    const Field& field() const { return f_; }
    int count() const { return static_cast<int>(indecs_.size()); }
    const Rep& indec(int id) const { return indecs_[id]; }
    const std::string& label(int id) const { return labels_[id]; }
    int id_by_label(const std::string& label) const;       // throws parse_error
    int id_by_dims(const std::vector<int>& dims) const;    // -1 if no such root

    int hom_dim(int i, int j) const { return homdim_[i][j]; }
    const std::vector<RepMor>& homs(int i, int j) const { return hom_[i][j]; }

    // Multiset of indecomposable summands (sorted ids with multiplicity).
    std::vector<int> decompose(const Rep& m) const;
    bool is_isomorphic(const Rep& a, const Rep& b) const;

    // All subrepresentations; per-vertex dimensions must stay within the
    // subspace enumeration bound.
    std::vector<SubRep> subobjects(const Rep& m, int bound = 4) const;

    // Decompositions of the middle terms of all extension classes of indec c
    // by indec a (split class always present). Sorted, deduplicated.
    const std::vector<std::vector<int>>& ext_middles(int c, int a) const;

    // Same for arbitrary representations; memoized by summand multisets.
    std::vector<std::vector<int>> ext_middles_rep(const Rep& c, const Rep& a) const;

    Rep rep_of_multiset(const std::vector<int>& ids) const;

    struct ProjPres {
        Rep p1, p0;
        RepMor incl;  // P1 -> P0
        RepMor epi;   // P0 -> C
    };
    ProjPres projective_presentation(const Rep& c) const;

  private:
    ModuleCategory() = default;

    QuiverPtr q_;
    Field f_;
    std::vector<Rep> indecs_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> homdim_;
    std::vector<std::vector<std::vector<RepMor>>> hom_;
    std::vector<std::vector<std::vector<std::vector<int>>>> ext_;

    mutable std::mutex ext_cache_mu_;
    mutable std::map<std::pair<std::vector<int>, std::vector<int>>,
                     std::vector<std::vector<int>>>
        ext_cache_;

    std::vector<Rep> split_indec(const Rep& m) const;
    std::vector<std::vector<int>> compute_ext_middles(const Rep& c, const Rep& a) const;
};

using CategoryPtr = std::shared_ptr<const ModuleCategory>;

}  // namespace torsionlab
