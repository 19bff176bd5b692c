#include "drude/stencil.hpp"

#include <string>

namespace drude {

namespace {

// Periodic line kernels, n >= 4. Seam points handled explicitly so the
// interior loop carries no wrap arithmetic.

void line_fwd2(const double* u, double* out, int n, double ih) {
    for (int i = 0; i + 1 < n; ++i)
        out[i] = (u[i + 1] - u[i]) * ih;
    out[n - 1] = (u[0] - u[n - 1]) * ih;
}

void line_dual2(const double* u, double* out, int n, double ih) {
    out[0] = (u[0] - u[n - 1]) * ih;
    for (int i = 1; i < n; ++i)
        out[i] = (u[i] - u[i - 1]) * ih;
}

void line_fwd4(const double* u, double* out, int n, double ih) {
    const double a = 1.125 * ih;
    const double b = ih / 24.0;
    for (int i = 1; i + 2 < n; ++i)
        out[i] = a * (u[i + 1] - u[i]) - b * (u[i + 2] - u[i - 1]);
    out[0] = a * (u[1] - u[0]) - b * (u[2] - u[n - 1]);
    out[n - 2] = a * (u[n - 1] - u[n - 2]) - b * (u[0] - u[n - 3]);
    out[n - 1] = a * (u[0] - u[n - 1]) - b * (u[1] - u[n - 2]);
}

void line_dual4(const double* u, double* out, int n, double ih) {
    const double a = 1.125 * ih;
    const double b = ih / 24.0;
    for (int i = 2; i + 1 < n; ++i)
        out[i] = a * (u[i] - u[i - 1]) - b * (u[i + 1] - u[i - 2]);
    out[0] = a * (u[0] - u[n - 1]) - b * (u[1] - u[n - 2]);
    out[1] = a * (u[1] - u[0]) - b * (u[2] - u[n - 1]);
    out[n - 1] = a * (u[n - 1] - u[n - 2]) - b * (u[0] - u[n - 3]);
}

void apply_line(const double* u, double* out, int n, double ih, bool forward, DiffOrder order) {
    if (order == DiffOrder::Second)
        forward ? line_fwd2(u, out, n, ih) : line_dual2(u, out, n, ih);
    else
        forward ? line_fwd4(u, out, n, ih) : line_dual4(u, out, n, ih);
}

// 2D differences along y: per output row, combine wrapped neighbor rows so the
// inner loop stays contiguous.
void rows_2d_axis1(const GridFunction& u, GridFunction& out, double ih, bool forward,
                   DiffOrder order) {
    const int m = u.extent();
    const double a = 1.125 * ih;
    const double b = ih / 24.0;
    const double* src = u.data();
    double* dst = out.data();
    auto row = [&](int j) { return src + static_cast<std::size_t>(wrap_index(j, m)) * m; };
    for (int j = 0; j < m; ++j) {
        double* o = dst + static_cast<std::size_t>(j) * m;
        if (order == DiffOrder::Second) {
            const double* r0 = row(forward ? j : j - 1);
            const double* r1 = row(forward ? j + 1 : j);
            for (int i = 0; i < m; ++i)
                o[i] = (r1[i] - r0[i]) * ih;
        } else {
            const double* rm = row(forward ? j - 1 : j - 2);
            const double* r0 = row(forward ? j : j - 1);
            const double* r1 = row(forward ? j + 1 : j);
            const double* r2 = row(forward ? j + 2 : j + 1);
            for (int i = 0; i < m; ++i)
                o[i] = a * (r1[i] - r0[i]) - b * (r2[i] - rm[i]);
        }
    }
}

void diff_3d(const GridFunction& u, GridFunction& out, int axis, double ih, bool forward,
             DiffOrder order) {
    const int m = u.extent();
    int off[4] = {0, 1, 2, -1}; // {lo, hi, wide_hi, wide_lo} for forward
    if (!forward) {
        off[0] = -1;
        off[1] = 0;
        off[2] = 1;
        off[3] = -2;
    }
    const double a = 1.125 * ih;
    const double b = ih / 24.0;
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                auto at = [&](int d) {
                    int ii = i, jj = j, kk = k;
                    if (axis == 0)
                        ii = wrap_index(i + d, m);
                    else if (axis == 1)
                        jj = wrap_index(j + d, m);
                    else
                        kk = wrap_index(k + d, m);
                    return u(ii, jj, kk);
                };
                if (order == DiffOrder::Second)
                    out(i, j, k) = (at(off[1]) - at(off[0])) * ih;
                else
                    out(i, j, k) = a * (at(off[1]) - at(off[0])) - b * (at(off[2]) - at(off[3]));
            }
}

GridFunction diff_impl(const GridFunction& u, int axis, DiffOrder order, bool forward,
                       const char* name) {
    const int d = u.mesh().dim;
    if (axis < 0 || axis >= d)
        throw ContractViolation(std::string(name) + ": axis " + std::to_string(axis) +
                                " out of range for dim " + std::to_string(d));
    const bool need_primal = forward;
    if (u.stagger().is_primal(axis) != need_primal)
        throw ContractViolation(std::string(name) + ": input must be " +
                                (need_primal ? "primal" : "dual") + " along axis " +
                                std::to_string(axis) + ", got " + u.stagger().describe());
    GridFunction out(u.mesh(), u.stagger().flipped(axis));
    const int m = u.extent();
    const double ih = 1.0 / u.mesh().h;
    switch (d) {
    case 1:
        apply_line(u.data(), out.data(), m, ih, forward, order);
        break;
    case 2:
        if (axis == 0) {
            for (int j = 0; j < m; ++j)
                apply_line(u.data() + static_cast<std::size_t>(j) * m,
                           out.data() + static_cast<std::size_t>(j) * m, m, ih, forward, order);
        } else {
            rows_2d_axis1(u, out, ih, forward, order);
        }
        break;
    default:
        diff_3d(u, out, axis, ih, forward, order);
        break;
    }
    return out;
}

} // namespace

GridFunction diff_fwd(const GridFunction& u, int axis, DiffOrder order) {
    return diff_impl(u, axis, order, true, "diff_fwd");
}

GridFunction diff_dual(const GridFunction& u, int axis, DiffOrder order) {
    return diff_impl(u, axis, order, false, "diff_dual");
}

namespace {
GridFunction diff_family(const GridFunction& u, int axis, CurlKind kind, DiffOrder order) {
    return kind == CurlKind::Forward ? diff_fwd(u, axis, order) : diff_dual(u, axis, order);
}
} // namespace

GridFunction curl_2d_scalar(const GridFunction& ex, const GridFunction& ey, CurlKind kind,
                            DiffOrder order) {
    if (ex.mesh().dim != 2 || !(ex.mesh() == ey.mesh()))
        throw ContractViolation("curl_2d_scalar: components need one 2D mesh");
    GridFunction dx_ey = diff_family(ey, 0, kind, order);
    GridFunction dy_ex = diff_family(ex, 1, kind, order);
    if (!(dx_ey.stagger() == dy_ex.stagger()))
        throw ContractViolation("curl_2d_scalar: stagger mismatch, terms land on " +
                                dx_ey.stagger().describe() + " and " + dy_ex.stagger().describe());
    dx_ey -= dy_ex;
    return dx_ey;
}

std::array<GridFunction, 2> curl_2d_vector(const GridFunction& kz, CurlKind kind,
                                           DiffOrder order) {
    if (kz.mesh().dim != 2)
        throw ContractViolation("curl_2d_vector: needs a 2D field");
    GridFunction cx = diff_family(kz, 1, kind, order);
    GridFunction cy = diff_family(kz, 0, kind, order);
    cy *= -1.0;
    return {std::move(cx), std::move(cy)};
}

std::array<GridFunction, 3> curl_3d(const std::array<GridFunction, 3>& v, CurlKind kind,
                                    DiffOrder order) {
    for (const auto& c : v)
        if (c.mesh().dim != 3 || !(c.mesh() == v[0].mesh()))
            throw ContractViolation("curl_3d: components need one 3D mesh");
    std::array<GridFunction, 3> out;
    for (int c = 0; c < 3; ++c) {
        const int a1 = (c + 1) % 3; // d_{a1} v_{a2} - d_{a2} v_{a1}
        const int a2 = (c + 2) % 3;
        GridFunction t1 = diff_family(v[static_cast<std::size_t>(a2)], a1, kind, order);
        GridFunction t2 = diff_family(v[static_cast<std::size_t>(a1)], a2, kind, order);
        if (!(t1.stagger() == t2.stagger()))
            throw ContractViolation("curl_3d: component " + std::to_string(c) +
                                    " terms land on different grids");
        t1 -= t2;
        out[static_cast<std::size_t>(c)] = std::move(t1);
    }
    return out;
}

OpChain::OpChain(const Stagger& input, std::vector<DiffStep> steps)
    : input_(input), output_(input), steps_(std::move(steps)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const DiffStep& s = steps_[i];
        if (s.axis < 0 || s.axis >= input.dim())
            throw ContractViolation("OpChain: step " + std::to_string(i) + " axis out of range");
        if (output_.is_primal(s.axis) != s.forward)
            throw ContractViolation("OpChain: step " + std::to_string(i) + " expects " +
                                    (s.forward ? "primal" : "dual") + " input along axis " +
                                    std::to_string(s.axis) + " but chain is at " +
                                    output_.describe());
        output_ = output_.flipped(s.axis);
    }
}

GridFunction OpChain::apply(const GridFunction& u) const {
    if (!(u.stagger() == input_))
        throw ContractViolation("OpChain::apply: input stagger " + u.stagger().describe() +
                                " does not match chain input " + input_.describe());
    GridFunction cur = u;
    for (const DiffStep& s : steps_)
        cur = s.forward ? diff_fwd(cur, s.axis, s.order) : diff_dual(cur, s.axis, s.order);
    return cur;
}

} // namespace drude
