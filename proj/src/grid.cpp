#include "drude/grid.hpp"

#include <cmath>

namespace drude {

MeshSpec MeshSpec::make(double length, int cells, int dim) {
    if (!(length > 0.0))
        throw ContractViolation("MeshSpec: length must be positive");
    if (cells < 4)
        throw ContractViolation("MeshSpec: need at least 4 cells per axis, got " +
                                std::to_string(cells));
    if (dim < 1 || dim > 3)
        throw ContractViolation("MeshSpec: dim must be 1, 2 or 3");
    MeshSpec m;
    m.length = length;
    m.cells = cells;
    m.dim = dim;
    m.h = length / static_cast<double>(cells);
    return m;
}

Stagger Stagger::primal(int dim) {
    Stagger s;
    if (dim < 1 || dim > 3)
        throw ContractViolation("Stagger: dim must be 1, 2 or 3");
    s.dim_ = dim;
    return s;
}

Stagger Stagger::dual(int dim) {
    Stagger s = primal(dim);
    for (int m = 0; m < dim; ++m)
        s.tags_[static_cast<std::size_t>(m)] = NodeCentering::Dual;
    return s;
}

Stagger Stagger::of(std::initializer_list<NodeCentering> tags) {
    Stagger s = primal(static_cast<int>(tags.size()));
    int m = 0;
    for (NodeCentering t : tags)
        s.tags_[static_cast<std::size_t>(m++)] = t;
    return s;
}

NodeCentering Stagger::axis(int m) const {
    if (m < 0 || m >= dim_)
        throw ContractViolation("Stagger: axis " + std::to_string(m) + " out of range");
    return tags_[static_cast<std::size_t>(m)];
}

Stagger Stagger::flipped(int m) const {
    Stagger s = *this;
    NodeCentering& t = s.tags_[static_cast<std::size_t>(m)];
    (void)axis(m);
    t = (t == NodeCentering::Primal) ? NodeCentering::Dual : NodeCentering::Primal;
    return s;
}

std::string Stagger::describe() const {
    std::string out = "(";
    for (int m = 0; m < dim_; ++m) {
        out += is_primal(m) ? "primal" : "dual";
        if (m + 1 < dim_)
            out += ",";
    }
    return out + ")";
}

GridFunction::GridFunction(const MeshSpec& mesh, const Stagger& stagger)
    : mesh_(mesh), stagger_(stagger) {
    if (stagger.dim() != mesh.dim)
        throw ContractViolation("GridFunction: stagger dimension " +
                                std::to_string(stagger.dim()) + " does not match mesh dim " +
                                std::to_string(mesh.dim));
    std::size_t n = 1;
    for (int m = 0; m < mesh.dim; ++m)
        n *= static_cast<std::size_t>(mesh.cells);
    values_.assign(n, 0.0);
}

bool GridFunction::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v))
            return false;
    return true;
}

void require_same_layout(const GridFunction& u, const GridFunction& v, const char* where) {
    if (!(u.mesh() == v.mesh()))
        throw ContractViolation(std::string(where) + ": mesh mismatch");
    if (!(u.stagger() == v.stagger()))
        throw ContractViolation(std::string(where) + ": stagger mismatch " +
                                u.stagger().describe() + " vs " + v.stagger().describe());
}

double inner(const GridFunction& u, const GridFunction& v) {
    require_same_layout(u, v, "inner");
    // Kahan summation keeps the result independent of traversal order to ~2 eps,
    // which the mirror-symmetry and adjointness tolerances rely on.
    double sum = 0.0, comp = 0.0;
    const double* a = u.data();
    const double* b = v.data();
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double term = a[i] * b[i] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    double weight = 1.0;
    for (int m = 0; m < u.mesh().dim; ++m)
        weight *= u.mesh().h;
    return weight * sum;
}

double norm(const GridFunction& u) { return std::sqrt(inner(u, u)); }

namespace detail {

GridFunction sample_impl(const MeshSpec& mesh, const Stagger& stagger,
                         const std::function<double(double)>& f1,
                         const std::function<double(double, double)>& f2,
                         const std::function<double(double, double, double)>& f3) {
    GridFunction out(mesh, stagger);
    const int m = mesh.cells;
    switch (mesh.dim) {
    case 1: {
        if (!f1)
            throw ContractViolation("sample: 1D mesh needs a 1-argument function");
        for (int i = 0; i < m; ++i)
            out(i) = f1(out.coordinate(0, i));
        break;
    }
    case 2: {
        if (!f2)
            throw ContractViolation("sample: 2D mesh needs a 2-argument function");
        for (int j = 0; j < m; ++j) {
            const double y = out.coordinate(1, j);
            for (int i = 0; i < m; ++i)
                out(i, j) = f2(out.coordinate(0, i), y);
        }
        break;
    }
    default: {
        if (!f3)
            throw ContractViolation("sample: 3D mesh needs a 3-argument function");
        for (int k = 0; k < m; ++k) {
            const double z = out.coordinate(2, k);
            for (int j = 0; j < m; ++j) {
                const double y = out.coordinate(1, j);
                for (int i = 0; i < m; ++i)
                    out(i, j, k) = f3(out.coordinate(0, i), y, z);
            }
        }
        break;
    }
    }
    return out;
}

} // namespace detail

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    GridFunction r = a;
    r += b;
    return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    GridFunction r = a;
    r -= b;
    return r;
}

GridFunction operator*(double s, const GridFunction& a) {
    GridFunction r = a;
    r *= s;
    return r;
}

GridFunction& operator+=(GridFunction& a, const GridFunction& b) {
    require_same_layout(a, b, "operator+=");
    double* x = a.data();
    const double* y = b.data();
    for (std::size_t i = 0, n = a.size(); i < n; ++i)
        x[i] += y[i];
    return a;
}

GridFunction& operator-=(GridFunction& a, const GridFunction& b) {
    require_same_layout(a, b, "operator-=");
    double* x = a.data();
    const double* y = b.data();
    for (std::size_t i = 0, n = a.size(); i < n; ++i)
        x[i] -= y[i];
    return a;
}

GridFunction& operator*=(GridFunction& a, double s) {
    for (double& v : a.values())
        v *= s;
    return a;
}

void axpy(GridFunction& a, double s, const GridFunction& b) {
    require_same_layout(a, b, "axpy");
    double* x = a.data();
    const double* y = b.data();
    for (std::size_t i = 0, n = a.size(); i < n; ++i)
        x[i] += s * y[i];
}

} // namespace drude
