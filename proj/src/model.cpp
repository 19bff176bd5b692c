#include "drude/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace drude {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<Stagger> primary_staggers(int dim) {
    if (dim == 1)
        return {Stagger::primal(1)};
    if (dim == 2)
        return {Stagger::of({NodeCentering::Dual, NodeCentering::Primal}),
                Stagger::of({NodeCentering::Primal, NodeCentering::Dual})};
    throw ContractViolation("primary_staggers: time stepping supports dim 1 and 2");
}

Stagger aux_stagger(int dim) {
    if (dim == 1)
        return Stagger::dual(1);
    if (dim == 2)
        return Stagger::dual(2);
    throw ContractViolation("aux_stagger: time stepping supports dim 1 and 2");
}

PhysParams PhysParams::make(double eps0, double mu0, double omega_pe, double omega_pm) {
    if (!(eps0 > 0.0) || !(mu0 > 0.0))
        throw DomainError("PhysParams: eps0 and mu0 must be positive");
    if (omega_pe < 0.0 || omega_pm < 0.0)
        throw DomainError("PhysParams: plasma frequencies must be nonnegative");
    PhysParams p;
    p.eps0 = eps0;
    p.mu0 = mu0;
    p.omega_pe = omega_pe;
    p.omega_pm = omega_pm;
    p.c = 1.0 / std::sqrt(eps0 * mu0);
    return p;
}

std::pair<double, double> drude_permittivity(double omega, const PhysParams& p) {
    if (omega == 0.0)
        throw DomainError("drude_permittivity: omega must be nonzero");
    const double w2 = omega * omega;
    return {p.eps0 * (1.0 - p.omega_pe * p.omega_pe / w2),
            p.mu0 * (1.0 - p.omega_pm * p.omega_pm / w2)};
}

DerivedParams1D derive_params_1d(double eps0, double mu0, int k, double omega_pe) {
    if (!(eps0 > static_cast<double>(k)))
        throw DomainError("derive_params_1d: requires eps0 > k, got eps0 = " +
                          std::to_string(eps0) + ", k = " + std::to_string(k));
    const double c2 = 1.0 / (eps0 * mu0);
    const double radicand =
        (omega_pe * omega_pe / (c2 * (eps0 - k)) - k * kPi * kPi) / mu0;
    if (!(radicand > 0.0))
        throw DomainError("derive_params_1d: negative radicand " + std::to_string(radicand) +
                          " for omega_pm");
    DerivedParams1D d;
    d.k = k;
    d.omega = (omega_pe / kPi) * std::sqrt(eps0 / (eps0 - k));
    d.params = PhysParams::make(eps0, mu0, omega_pe, std::sqrt(radicand));
    return d;
}

DerivedParams2D derive_params_2d(double eps0, double mu0, int kx, int ky, double omega_pe) {
    const double c2 = 1.0 / (eps0 * mu0);
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    const double radicand =
        (k2 * kPi * kPi + omega_pe * omega_pe / (c2 * (1.0 + eps0))) / mu0;
    if (!(radicand > 0.0))
        throw DomainError("derive_params_2d: degenerate mode, radicand " +
                          std::to_string(radicand));
    DerivedParams2D d;
    d.kx = kx;
    d.ky = ky;
    d.omega = (omega_pe / kPi) * std::sqrt(eps0 / (1.0 + eps0));
    d.params = PhysParams::make(eps0, mu0, omega_pe, std::sqrt(radicand));
    return d;
}

ManufacturedSolution1D::ManufacturedSolution1D(const DerivedParams1D& dp) : dp_(dp) {
    amp_e_ = 1.0 / dp_.omega;
    amp_k_ = dp_.params.mu0 * dp_.params.omega_pm * dp_.params.omega_pm / (kPi * dp_.omega);
}

double ManufacturedSolution1D::E(double x, double t) const {
    return amp_e_ * std::sin(dp_.omega * kPi * t) * std::sin(dp_.k * kPi * x);
}

double ManufacturedSolution1D::K(double x, double t) const {
    return amp_k_ * std::sin(dp_.omega * kPi * t) * std::cos(dp_.k * kPi * x);
}

double ManufacturedSolution1D::dE_dt(double x, double t) const {
    return amp_e_ * dp_.omega * kPi * std::cos(dp_.omega * kPi * t) * std::sin(dp_.k * kPi * x);
}

double ManufacturedSolution1D::dK_dt(double x, double t) const {
    return amp_k_ * dp_.omega * kPi * std::cos(dp_.omega * kPi * t) * std::cos(dp_.k * kPi * x);
}

double ManufacturedSolution1D::dE_dx(double x, double t) const {
    return amp_e_ * dp_.k * kPi * std::sin(dp_.omega * kPi * t) * std::cos(dp_.k * kPi * x);
}

namespace {

// Per-axis factor tables make the sampling a scaled outer product; the
// 2D error tracker calls this every step.
std::vector<double> axis_table(const MeshSpec& mesh, const Stagger& st, int axis, int k,
                               bool sine) {
    std::vector<double> v(static_cast<std::size_t>(mesh.cells));
    const double shift = st.is_primal(axis) ? 0.0 : 0.5;
    for (int l = 0; l < mesh.cells; ++l) {
        const double x = (l + shift) * mesh.h;
        v[static_cast<std::size_t>(l)] = sine ? std::sin(k * kPi * x) : std::cos(k * kPi * x);
    }
    return v;
}

GridFunction sampled_product_1d(const MeshSpec& mesh, const Stagger& st, double amp, int k,
                                bool sine) {
    GridFunction g(mesh, st);
    const auto tx = axis_table(mesh, st, 0, k, sine);
    for (int i = 0; i < mesh.cells; ++i)
        g(i) = amp * tx[static_cast<std::size_t>(i)];
    return g;
}

GridFunction sampled_product_2d(const MeshSpec& mesh, const Stagger& st, double amp, int kx,
                                bool sine_x, int ky, bool sine_y) {
    GridFunction g(mesh, st);
    const auto tx = axis_table(mesh, st, 0, kx, sine_x);
    const auto ty = axis_table(mesh, st, 1, ky, sine_y);
    // amp * (tx * ty) keeps samples bit-exactly x<->y mirror-symmetric for
    // symmetric wavenumbers; the Ex/Ey error symmetry check relies on it.
    for (int j = 0; j < mesh.cells; ++j) {
        const double ty_j = ty[static_cast<std::size_t>(j)];
        for (int i = 0; i < mesh.cells; ++i)
            g(i, j) = amp * (tx[static_cast<std::size_t>(i)] * ty_j);
    }
    return g;
}

} // namespace

FieldBundle ManufacturedSolution1D::state(const MeshSpec& mesh, double t) const {
    const double tf = std::sin(dp_.omega * kPi * t);
    FieldBundle w;
    w.primary.push_back(sampled_product_1d(mesh, primary_staggers(1)[0], amp_e_ * tf, dp_.k, true));
    w.aux = sampled_product_1d(mesh, aux_stagger(1), amp_k_ * tf, dp_.k, false);
    return w;
}

FieldBundle ManufacturedSolution1D::time_derivative(const MeshSpec& mesh, double t) const {
    const double tf = dp_.omega * kPi * std::cos(dp_.omega * kPi * t);
    FieldBundle w;
    w.primary.push_back(sampled_product_1d(mesh, primary_staggers(1)[0], amp_e_ * tf, dp_.k, true));
    w.aux = sampled_product_1d(mesh, aux_stagger(1), amp_k_ * tf, dp_.k, false);
    return w;
}

ManufacturedSolution2D::ManufacturedSolution2D(const DerivedParams2D& dp) : dp_(dp) {
    amp_k_ = dp_.params.mu0 * dp_.params.omega_pm * dp_.params.omega_pm / (kPi * dp_.omega);
}

double ManufacturedSolution2D::Ex(double x, double y, double t) const {
    return -(dp_.ky / dp_.omega) * std::sin(dp_.omega * kPi * t) * std::sin(dp_.kx * kPi * x) *
           std::cos(dp_.ky * kPi * y);
}

double ManufacturedSolution2D::Ey(double x, double y, double t) const {
    return (dp_.kx / dp_.omega) * std::sin(dp_.omega * kPi * t) * std::cos(dp_.kx * kPi * x) *
           std::sin(dp_.ky * kPi * y);
}

double ManufacturedSolution2D::K(double x, double y, double t) const {
    return amp_k_ * std::sin(dp_.omega * kPi * t) * std::sin(dp_.kx * kPi * x) *
           std::sin(dp_.ky * kPi * y);
}

double ManufacturedSolution2D::dEx_dt(double x, double y, double t) const {
    return -(dp_.ky / dp_.omega) * dp_.omega * kPi * std::cos(dp_.omega * kPi * t) *
           std::sin(dp_.kx * kPi * x) * std::cos(dp_.ky * kPi * y);
}

double ManufacturedSolution2D::dEy_dt(double x, double y, double t) const {
    return (dp_.kx / dp_.omega) * dp_.omega * kPi * std::cos(dp_.omega * kPi * t) *
           std::cos(dp_.kx * kPi * x) * std::sin(dp_.ky * kPi * y);
}

double ManufacturedSolution2D::dK_dt(double x, double y, double t) const {
    return amp_k_ * dp_.omega * kPi * std::cos(dp_.omega * kPi * t) *
           std::sin(dp_.kx * kPi * x) * std::sin(dp_.ky * kPi * y);
}

FieldBundle ManufacturedSolution2D::sample_with_time_factor(const MeshSpec& mesh,
                                                            double tf) const {
    const auto prim = primary_staggers(2);
    FieldBundle w;
    w.primary.push_back(sampled_product_2d(mesh, prim[0], -(dp_.ky / dp_.omega) * tf, dp_.kx,
                                           true, dp_.ky, false));
    w.primary.push_back(sampled_product_2d(mesh, prim[1], (dp_.kx / dp_.omega) * tf, dp_.kx,
                                           false, dp_.ky, true));
    w.aux = sampled_product_2d(mesh, aux_stagger(2), amp_k_ * tf, dp_.kx, true, dp_.ky, true);
    return w;
}

FieldBundle ManufacturedSolution2D::state(const MeshSpec& mesh, double t) const {
    return sample_with_time_factor(mesh, std::sin(dp_.omega * kPi * t));
}

FieldBundle ManufacturedSolution2D::time_derivative(const MeshSpec& mesh, double t) const {
    return sample_with_time_factor(mesh, dp_.omega * kPi * std::cos(dp_.omega * kPi * t));
}

DualHJSolution1D::DualHJSolution1D(const ManufacturedSolution1D& ek) : ek_(ek) {
    const PhysParams& p = ek.params();
    swapped_ = PhysParams::make(p.eps0, p.mu0, p.omega_pm, p.omega_pe);
}

FieldBundle DualHJSolution1D::state(const MeshSpec& mesh, double t) const {
    FieldBundle w = ek_.state(mesh, t);
    w.aux *= -1.0;
    return w;
}

FieldBundle DualHJSolution1D::time_derivative(const MeshSpec& mesh, double t) const {
    FieldBundle w = ek_.time_derivative(mesh, t);
    w.aux *= -1.0;
    return w;
}

double continuous_energy_ek(const ManufacturedSolution1D& sol, double t) {
    const PhysParams& p = sol.params();
    const double w = sol.omega();
    const double k = sol.wavenumber();
    const double s = w * kPi;
    const double cs = std::cos(s * t), sn = std::sin(s * t);
    const double amp_k = p.mu0 * p.omega_pm * p.omega_pm / (kPi * w);
    // ||sin(k pi x)||^2 = ||cos(k pi x)||^2 = 1/2 on [0,1].
    const double dt_e = kPi * cs;                      // amplitude of dE/dt
    const double dt_k = p.mu0 * p.omega_pm * p.omega_pm * cs; // amplitude of dK/dt
    const double t1 = (dt_e * dt_e / (p.c * p.c)) * 0.5;
    const double t2 = (dt_k * dt_k / (p.omega_pm * p.omega_pm)) * 0.5;
    const double t3 = (p.omega_pe * p.omega_pe / (p.c * p.c)) * (sn / w) * (sn / w) * 0.5;
    const double curl_amp = (k * kPi / w + amp_k) * sn; // dE/dx + K share cos(k pi x)
    const double t4 = curl_amp * curl_amp * 0.5;
    return 0.5 * (t1 + t2 + t3 + t4);
}

double continuous_energy_ek(const ManufacturedSolution2D& sol, double t) {
    const PhysParams& p = sol.params();
    const double w = sol.omega();
    const double s = w * kPi;
    const double cs = std::cos(s * t), sn = std::sin(s * t);
    const double k2 = static_cast<double>(sol.kx()) * sol.kx() +
                      static_cast<double>(sol.ky()) * sol.ky();
    const double amp_k = p.mu0 * p.omega_pm * p.omega_pm / (kPi * w);
    // Products of two unit trig modes integrate to 1/4 over [0,1]^2.
    const double t1 = (k2 * kPi * kPi * cs * cs / (p.c * p.c)) * 0.25;
    const double dt_k = p.mu0 * p.omega_pm * p.omega_pm * cs;
    const double t2 = (dt_k * dt_k / (p.omega_pm * p.omega_pm)) * 0.25;
    const double t3 = (p.omega_pe * p.omega_pe / (p.c * p.c)) * (k2 / (w * w)) * sn * sn * 0.25;
    const double curl_amp = (amp_k - k2 * kPi / w) * sn; // curl E and K share sin*sin
    const double t4 = curl_amp * curl_amp * 0.25;
    return 0.5 * (t1 + t2 + t3 + t4);
}

double continuous_energy_hj(const DualHJSolution1D& sol, double t) {
    // With H = E, J = -K and the plasma frequencies swapped, every term of
    // E_HJ maps onto the corresponding E_EK term of the generating mode
    // (in particular ||curl H - J|| = ||curl E + K||).
    return continuous_energy_ek(sol.generator(), t);
}

FieldBundle exact_state(const ExactSolution& sol, const MeshSpec& mesh, double t) {
    if (mesh.dim != sol.dim())
        throw ContractViolation("exact_state: mesh dim does not match solution dim");
    return sol.state(mesh, t);
}

} // namespace drude
