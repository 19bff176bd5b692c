#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "drude/errors.hpp"

namespace drude {

/// Uniform periodic box [0,L]^d split into M cells per axis.
struct MeshSpec {
    double length = 1.0; ///< domain edge length L
    int cells = 0;       ///< M, cells per axis
    int dim = 1;         ///< spatial dimension, 1..3
    double h = 0.0;      ///< mesh step, exactly L/M in double precision

    static MeshSpec make(double length, int cells, int dim);

    bool operator==(const MeshSpec&) const = default;
};

enum class NodeCentering : std::uint8_t { Primal, Dual };

/// Per-axis primal/dual tags of a staggered grid. Primal nodes sit at l*h,
/// dual nodes at (l+1/2)*h; a d-dimensional field carries d tags.
class Stagger {
public:
    Stagger() = default;

    static Stagger primal(int dim);
    static Stagger dual(int dim);
    static Stagger of(std::initializer_list<NodeCentering> tags);

    int dim() const { return dim_; }
    NodeCentering axis(int m) const;
    bool is_primal(int m) const { return axis(m) == NodeCentering::Primal; }

    /// Same tags with axis m toggled (what one derivative along m does).
    Stagger flipped(int m) const;

    bool operator==(const Stagger&) const = default;

    std::string describe() const;

private:
    std::array<NodeCentering, 3> tags_{NodeCentering::Primal, NodeCentering::Primal,
                                       NodeCentering::Primal};
    int dim_ = 0;
};

/// One field component on a staggered grid: M values per axis, index M
/// identified with index 0 (periodic storage).
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(const MeshSpec& mesh, const Stagger& stagger);

    const MeshSpec& mesh() const { return mesh_; }
    const Stagger& stagger() const { return stagger_; }
    int extent() const { return mesh_.cells; }
    std::size_t size() const { return values_.size(); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    double& operator()(int i) { return values_[static_cast<std::size_t>(i)]; }
    double operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator()(int i, int j) { return values_[idx(i, j)]; }
    double operator()(int i, int j) const { return values_[idx(i, j)]; }
    double& operator()(int i, int j, int k) { return values_[idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return values_[idx(i, j, k)]; }

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(mesh_.cells) * static_cast<std::size_t>(j);
    }
    std::size_t idx(int i, int j, int k) const {
        const auto m = static_cast<std::size_t>(mesh_.cells);
        return static_cast<std::size_t>(i) + m * (static_cast<std::size_t>(j) + m * static_cast<std::size_t>(k));
    }

    /// Coordinate of index l along axis m, honoring the stagger tag.
    double coordinate(int m, int l) const {
        const double shift = stagger_.is_primal(m) ? 0.0 : 0.5;
        return (static_cast<double>(l) + shift) * mesh_.h;
    }

    bool all_finite() const;

private:
    MeshSpec mesh_;
    Stagger stagger_;
    std::vector<double> values_;
};

inline int wrap_index(int i, int m) {
    i %= m;
    return i < 0 ? i + m : i;
}

void require_same_layout(const GridFunction& u, const GridFunction& v, const char* where);

/// h^d-weighted l2 scalar product (compensated summation).
double inner(const GridFunction& u, const GridFunction& v);

/// sqrt(inner(u,u)).
double norm(const GridFunction& u);

namespace detail {
GridFunction sample_impl(const MeshSpec& mesh, const Stagger& stagger,
                         const std::function<double(double)>& f1,
                         const std::function<double(double, double)>& f2,
                         const std::function<double(double, double, double)>& f3);
} // namespace detail

/// Pointwise sampling of f at the staggered node coordinates.
template <class F>
GridFunction sample(const MeshSpec& mesh, const Stagger& stagger, F&& f) {
    if constexpr (std::is_invocable_r_v<double, F, double>) {
        return detail::sample_impl(mesh, stagger, std::forward<F>(f), nullptr, nullptr);
    } else if constexpr (std::is_invocable_r_v<double, F, double, double>) {
        return detail::sample_impl(mesh, stagger, nullptr, std::forward<F>(f), nullptr);
    } else {
        static_assert(std::is_invocable_r_v<double, F, double, double, double>,
                      "sample() needs a callable of 1, 2 or 3 coordinates");
        return detail::sample_impl(mesh, stagger, nullptr, nullptr, std::forward<F>(f));
    }
}

// Elementwise helpers used throughout the steppers and diagnostics.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);
GridFunction& operator+=(GridFunction& a, const GridFunction& b);
GridFunction& operator-=(GridFunction& a, const GridFunction& b);
GridFunction& operator*=(GridFunction& a, double s);
/// a += s*b
void axpy(GridFunction& a, double s, const GridFunction& b);

} // namespace drude
