#pragma once

#include <array>
#include <vector>

#include "drude/grid.hpp"

namespace drude {

enum class DiffOrder { Second = 2, Fourth = 4 };

/// Which operator family a curl is built from: the forward differences F
/// (primal -> dual along each applied axis) or their duals F* (dual -> primal).
enum class CurlKind { Forward, Dual };

/// Staggered forward difference along axis m: order 2 is (u_{l+1}-u_l)/h,
/// order 4 adds the 9/8, -1/24 wide correction. Input primal on m, output dual.
GridFunction diff_fwd(const GridFunction& u, int axis, DiffOrder order);

/// Staggered dual difference along axis m: order 2 is (u_{l+1/2}-u_{l-1/2})/h.
/// Input dual on m, output primal.
GridFunction diff_dual(const GridFunction& u, int axis, DiffOrder order);

/// 2D scalar curl d_x Ey - d_y Ex; lands on the grid dual to both axes for the
/// standard TE layout (Ex on (dual,primal), Ey on (primal,dual)).
GridFunction curl_2d_scalar(const GridFunction& ex, const GridFunction& ey, CurlKind kind,
                            DiffOrder order);

/// 2D vector curl of a scalar: (d_y K, -d_x K). The Dual family maps the
/// (dual,dual) grid back onto the TE electric-field grids.
std::array<GridFunction, 2> curl_2d_vector(const GridFunction& kz, CurlKind kind,
                                           DiffOrder order);

/// Componentwise 3D curl; each difference must land both of its terms on a
/// common grid (edge -> face for Forward on the usual layout, face -> edge for Dual).
std::array<GridFunction, 3> curl_3d(const std::array<GridFunction, 3>& v, CurlKind kind,
                                    DiffOrder order);

struct DiffStep {
    bool forward = true; ///< true: F along axis; false: F* along axis
    int axis = 0;
    DiffOrder order = DiffOrder::Second;
};

/// A stagger-checked pipeline of difference applications, validated when built.
class OpChain {
public:
    OpChain(const Stagger& input, std::vector<DiffStep> steps);

    GridFunction apply(const GridFunction& u) const;

    const Stagger& input_stagger() const { return input_; }
    const Stagger& output_stagger() const { return output_; }
    std::size_t length() const { return steps_.size(); }

private:
    Stagger input_;
    Stagger output_;
    std::vector<DiffStep> steps_;
};

} // namespace drude
