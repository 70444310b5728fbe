#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab {

enum class DynkinSeries { A, D, E };

// Finite acyclic quiver whose underlying graph is a simply-laced Dynkin
// diagram (the guard that keeps every category in this library
// representation-finite, so all statements are decidable by enumeration).
class Quiver {
  public:
    // Vertices are 0-based internally; construction validates acyclicity and
    // the Dynkin shape and throws contract_error otherwise.
    Quiver(int vertices, std::vector<std::pair<int, int>> arrows);

    static Quiver linear_a(int n);  // 1 -> 2 -> ... -> n

    int vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
    DynkinSeries series() const { return series_; }
    std::string type_name() const;  // "A3", "D4", ...

    // Dimension vectors of the positive roots, i.e. of the indecomposables.
    std::vector<std::vector<int>> positive_roots() const;

    // All directed paths from vertex v, as arrow index sequences; includes the
    // trivial path. Used for projective representations.
    std::vector<std::vector<int>> paths_from(int v) const;

    uint64_t hash() const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

  private:
    int vertices_;
    std::vector<std::pair<int, int>> arrows_;
    DynkinSeries series_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

}  // namespace torsionlab
