#include "drude/stepper.hpp"

#include <cmath>

#include "drude/errors.hpp"

namespace drude {

std::string scheme_label(SchemeOrder s) {
    switch (s) {
    case SchemeOrder::S22:
        return "22";
    case SchemeOrder::S24:
        return "24";
    default:
        return "44";
    }
}

SchemeOrder scheme_from_label(const std::string& s) {
    if (s == "22")
        return SchemeOrder::S22;
    if (s == "24")
        return SchemeOrder::S24;
    if (s == "44")
        return SchemeOrder::S44;
    throw ConfigError("unknown scheme '" + s + "', expected 22, 24 or 44");
}

std::vector<std::string> field_names(FieldPair pair, int dim) {
    if (dim == 1)
        return pair == FieldPair::EK ? std::vector<std::string>{"E", "K"}
                                     : std::vector<std::string>{"H", "J"};
    return {"Ex", "Ey", "K"};
}

SchemeSpec SchemeSpec::make(SchemeOrder order, int dim, FieldPair pair, const PhysParams& p,
                            const MeshSpec& mesh, double dt, double final_time) {
    if (dim != 1 && dim != 2)
        throw ContractViolation("SchemeSpec: time stepping supports dim 1 and 2");
    if (mesh.dim != dim)
        throw ContractViolation("SchemeSpec: mesh dim does not match scheme dim");
    if (pair == FieldPair::HJ && dim == 2)
        throw ContractViolation(
            "SchemeSpec: the (H,J) pair is 1D only; the 2D TE reduction is (E,K)");
    if (!(dt > 0.0) || !(final_time > 0.0))
        throw ContractViolation("SchemeSpec: dt and T must be positive");
    SchemeSpec s;
    s.order = order;
    s.dim = dim;
    s.pair = pair;
    s.mesh = mesh;
    s.dt = dt;
    s.final_time = final_time;
    s.steps = std::lround(final_time / dt);
    if (s.steps < 1 || std::abs(static_cast<double>(s.steps) * dt - final_time) >
                           1e-12 * std::max(1.0, final_time))
        throw ContractViolation("SchemeSpec: T = " + std::to_string(final_time) +
                                " is not an integer multiple of dt = " + std::to_string(dt));
    s.nu = p.c * dt / mesh.h;
    return s;
}

MeshSpec mesh_for_courant(double nu, double dt, const PhysParams& p, double length, int dim) {
    if (!(nu > 0.0) || !(dt > 0.0))
        throw ContractViolation("mesh_for_courant: nu and dt must be positive");
    const long cells = std::lround(length * nu / (p.c * dt));
    return MeshSpec::make(length, static_cast<int>(cells), dim);
}

Stepper::Stepper(const SchemeSpec& scheme, const PhysParams& params, double correction_scale)
    : scheme_(scheme), params_(params), corr_(correction_scale) {
    const double wpe2 = params.omega_pe * params.omega_pe;
    const double wpm2 = params.omega_pm * params.omega_pm;
    if (scheme.pair == FieldPair::EK) {
        alpha_ = wpe2;
        beta_ = wpm2;
        sigma_ = 1.0;
    } else {
        alpha_ = wpm2;
        beta_ = wpe2;
        sigma_ = -1.0;
    }
}

GridFunction Stepper::curl_fwd(const std::vector<GridFunction>& primary, DiffOrder order) const {
    if (scheme_.dim == 1) {
        GridFunction g = diff_fwd(primary.at(0), 0, order);
        if (sigma_ < 0.0)
            g *= -1.0;
        return g;
    }
    return curl_2d_scalar(primary.at(0), primary.at(1), CurlKind::Forward, order);
}

std::vector<GridFunction> Stepper::curl_dual(const GridFunction& aux, DiffOrder order) const {
    if (scheme_.dim == 1) {
        GridFunction g = diff_dual(aux, 0, order);
        g *= -sigma_; // -sigma F* is the adjoint of sigma F under the periodic product
        return {std::move(g)};
    }
    auto pair = curl_2d_vector(aux, CurlKind::Dual, order);
    return {std::move(pair[0]), std::move(pair[1])};
}

FieldBundle Stepper::apply_a1(const FieldBundle& w) const {
    const DiffOrder order = scheme_.space_order();
    const double a_over_c2 = alpha_ / (params_.c * params_.c);
    // A1 W = ( C*(C u + v) + (alpha/c^2) u ,  C u + v )
    GridFunction g = curl_fwd(w.primary, order);
    g += w.aux;
    FieldBundle out;
    out.primary = curl_dual(g, order);
    for (std::size_t i = 0; i < out.primary.size(); ++i)
        axpy(out.primary[i], a_over_c2, w.primary[i]);
    out.aux = std::move(g);
    return out;
}

FieldBundle Stepper::apply_a2(const FieldBundle& w) const {
    const DiffOrder o2 = DiffOrder::Second;
    const double c2 = params_.c * params_.c;
    const double c4 = c2 * c2;
    // All entries assembled from the order-2 pair C, C*:
    //   a11 = (C*C)^2 + (2a+b)C*C/c^2 + a^2/c^4     on u
    //   a12 = C*CC* + (a+b)C*/c^2                   on v
    //   a21 = CC*C + (a+b)C/c^2                     on u
    //   a22 = CC* + b/c^2                           on v
    GridFunction cu = curl_fwd(w.primary, o2);
    std::vector<GridFunction> du = curl_dual(cu, o2); // C*C u
    GridFunction cdu = curl_fwd(du, o2);              // CC*C u
    std::vector<GridFunction> ddu = curl_dual(cdu, o2); // (C*C)^2 u

    std::vector<GridFunction> sv = curl_dual(w.aux, o2); // C* v
    GridFunction csv = curl_fwd(sv, o2);                 // CC* v
    std::vector<GridFunction> scsv = curl_dual(csv, o2); // C*CC* v

    FieldBundle out;
    out.primary.reserve(w.primary.size());
    for (std::size_t i = 0; i < w.primary.size(); ++i) {
        GridFunction r = std::move(ddu[i]);
        axpy(r, (2.0 * alpha_ + beta_) / c2, du[i]);
        axpy(r, alpha_ * alpha_ / c4, w.primary[i]);
        r += scsv[i];
        axpy(r, (alpha_ + beta_) / c2, sv[i]);
        out.primary.push_back(std::move(r));
    }
    out.aux = std::move(cdu);
    axpy(out.aux, (alpha_ + beta_) / c2, cu);
    out.aux += csv;
    axpy(out.aux, beta_ / c2, w.aux);
    return out;
}

StatePair Stepper::initialize(const ExactSolution& sol) const {
    StatePair s;
    s.prev = sol.state(scheme_.mesh, 0.0);
    s.curr = sol.state(scheme_.mesh, scheme_.dt);
    s.n = 1;
    return s;
}

StatePair Stepper::taylor_start(const FieldBundle& w0, const FieldBundle& v0) const {
    const double dt = scheme_.dt;
    const double c2 = params_.c * params_.c;

    FieldBundle w1 = w0;
    for (std::size_t i = 0; i < w1.primary.size(); ++i)
        axpy(w1.primary[i], dt, v0.primary[i]);
    axpy(w1.aux, dt, v0.aux);

    // d2W/dt2 = -P^{-1} A1 W with P^{-1} = diag(c^2, beta)
    FieldBundle a1w = apply_a1(w0);
    for (std::size_t i = 0; i < w1.primary.size(); ++i)
        axpy(w1.primary[i], -0.5 * dt * dt * c2, a1w.primary[i]);
    axpy(w1.aux, -0.5 * dt * dt * beta_, a1w.aux);

    if (scheme_.fourth_order_time()) {
        FieldBundle a1v = apply_a1(v0); // d3W/dt3 = -P^{-1} A1 dW/dt
        const double c3 = dt * dt * dt / 6.0;
        for (std::size_t i = 0; i < w1.primary.size(); ++i)
            axpy(w1.primary[i], -c3 * c2, a1v.primary[i]);
        axpy(w1.aux, -c3 * beta_, a1v.aux);

        FieldBundle a2w = apply_a2(w0); // d4W/dt4 = c^2 P^{-1} A2 W
        const double c4 = dt * dt * dt * dt / 24.0;
        for (std::size_t i = 0; i < w1.primary.size(); ++i)
            axpy(w1.primary[i], c4 * c2 * c2, a2w.primary[i]);
        axpy(w1.aux, c4 * c2 * beta_, a2w.aux);
    }

    StatePair s;
    s.prev = w0;
    s.curr = std::move(w1);
    s.n = 1;
    return s;
}

StatePair Stepper::initialize_taylor(const ExactSolution& sol, double t0) const {
    return taylor_start(sol.state(scheme_.mesh, t0), sol.time_derivative(scheme_.mesh, t0));
}

StatePair Stepper::initialize_taylor(const InitialData& data) const {
    if (!data.value)
        throw ContractViolation("initialize_taylor: missing initial value closure");
    if (!data.time_derivative)
        throw ContractViolation(
            "initialize_taylor: general-mode start needs the time-derivative closure");
    return taylor_start(data.value(scheme_.mesh), data.time_derivative(scheme_.mesh));
}

void Stepper::step(StatePair& state) const {
    const double dt = scheme_.dt;
    const double c2 = params_.c * params_.c;
    const FieldBundle& w = state.curr;

    FieldBundle upd = apply_a1(w);
    if (scheme_.fourth_order_time()) {
        const FieldBundle a2w = apply_a2(w);
        const double coef = corr_ * dt * dt * c2 / 12.0;
        for (std::size_t i = 0; i < upd.primary.size(); ++i)
            axpy(upd.primary[i], -coef, a2w.primary[i]);
        axpy(upd.aux, -coef, a2w.aux);
    }

    // W^{n+1} = 2W^n - W^{n-1} - dt^2 P^{-1} upd, reusing prev as storage.
    FieldBundle& next = state.prev;
    for (std::size_t i = 0; i < next.primary.size(); ++i) {
        double* out = next.primary[i].data();
        const double* cur = w.primary[i].data();
        const double* u = upd.primary[i].data();
        const double s = dt * dt * c2;
        for (std::size_t q = 0, nq = next.primary[i].size(); q < nq; ++q)
            out[q] = 2.0 * cur[q] - out[q] - s * u[q];
    }
    {
        double* out = next.aux.data();
        const double* cur = w.aux.data();
        const double* u = upd.aux.data();
        const double s = dt * dt * beta_;
        for (std::size_t q = 0, nq = next.aux.size(); q < nq; ++q)
            out[q] = 2.0 * cur[q] - out[q] - s * u[q];
    }
    std::swap(state.curr, state.prev);
    state.n += 1;
    if (!state.curr.all_finite())
        throw InstabilityError(state.n, "non-finite field values at step " +
                                            std::to_string(state.n) +
                                            " (CFL violation or blow-up)");
}

StatePair Stepper::run(const ExactSolution& sol,
                       const std::function<void(const StatePair&)>& observer) const {
    StatePair s = initialize(sol);
    if (observer)
        observer(s);
    for (long n = 1; n < scheme_.steps; ++n) {
        step(s);
        if (observer)
            observer(s);
    }
    return s;
}

} // namespace drude
