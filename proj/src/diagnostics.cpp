#include "drude/diagnostics.hpp"

#include <cmath>

#include "drude/errors.hpp"

namespace drude {

double bundle_inner(const FieldBundle& a, const FieldBundle& b) {
    if (a.primary.size() != b.primary.size())
        throw ContractViolation("bundle_inner: component count mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.primary.size(); ++i)
        s += inner(a.primary[i], b.primary[i]);
    s += inner(a.aux, b.aux);
    return s;
}

namespace {

double kinetic_part(const Stepper& st, const FieldBundle& newer, const FieldBundle& older) {
    const double dt = st.scheme().dt;
    const double c2 = st.params().c * st.params().c;
    if (st.beta() <= 0.0)
        throw DomainError("discrete_energy: auxiliary plasma frequency must be positive");
    double s = 0.0;
    for (std::size_t i = 0; i < newer.primary.size(); ++i) {
        GridFunction d = newer.primary[i] - older.primary[i];
        d *= 1.0 / dt;
        s += inner(d, d) / c2;
    }
    GridFunction d = newer.aux - older.aux;
    d *= 1.0 / dt;
    s += inner(d, d) / st.beta();
    return s;
}

} // namespace

double discrete_energy_a1_form(const Stepper& st, const FieldBundle& newer,
                               const FieldBundle& older) {
    const double dt = st.scheme().dt;
    const double c2 = st.params().c * st.params().c;
    double pot = bundle_inner(st.apply_a1(newer), older);
    if (st.scheme().fourth_order_time())
        pot -= dt * dt * c2 / 12.0 * bundle_inner(st.apply_a2(newer), older);
    return 0.5 * (kinetic_part(st, newer, older) + pot);
}

double discrete_energy(const Stepper& st, const FieldBundle& newer, const FieldBundle& older) {
    if (st.scheme().order != SchemeOrder::S22)
        return discrete_energy_a1_form(st, newer, older);
    // (2,2) form: <C u' + v', C u + v> + (alpha/c^2) <u', u> plus the kinetic part.
    const double c2 = st.params().c * st.params().c;
    GridFunction g_new = st.curl_fwd(newer.primary, DiffOrder::Second);
    g_new += newer.aux;
    GridFunction g_old = st.curl_fwd(older.primary, DiffOrder::Second);
    g_old += older.aux;
    double pot = inner(g_new, g_old);
    for (std::size_t i = 0; i < newer.primary.size(); ++i)
        pot += st.alpha() / c2 * inner(newer.primary[i], older.primary[i]);
    return 0.5 * (kinetic_part(st, newer, older) + pot);
}

double relative_energy_error(double energy, double reference) {
    if (reference == 0.0)
        throw DomainError("relative_energy_error: reference must be nonzero");
    return std::abs(energy - reference) / std::abs(reference);
}

SolutionErrorTracker::SolutionErrorTracker(const ExactSolution& sol, const SchemeSpec& scheme)
    : sol_(&sol), scheme_(scheme), names_(field_names(scheme.pair, scheme.dim)),
      errors_(names_.size(), 0.0) {}

void SolutionErrorTracker::observe(const FieldBundle& w, double t) {
    const FieldBundle exact = sol_->state(scheme_.mesh, t);
    for (std::size_t i = 0; i < w.primary.size(); ++i) {
        const double e = norm(w.primary[i] - exact.primary[i]);
        errors_[i] = std::max(errors_[i], e);
    }
    const double e = norm(w.aux - exact.aux);
    errors_.back() = std::max(errors_.back(), e);
}

void SolutionErrorTracker::observe_state(const StatePair& s) {
    if (s.n == 1)
        observe(s.prev, 0.0);
    observe(s.curr, s.time(scheme_.dt));
}

EnergyTracker::EnergyTracker(const Stepper& stepper, double reference, long stride)
    : stepper_(&stepper), reference_(reference), stride_(stride < 1 ? 1 : stride) {
    if (reference_ == 0.0)
        throw DomainError("EnergyTracker: zero reference energy");
}

EnergyTracker EnergyTracker::self_referenced(const Stepper& stepper, long stride) {
    EnergyTracker t(stepper, 1.0, stride);
    t.self_ref_ = true;
    return t;
}

void EnergyTracker::observe_state(const StatePair& s) {
    if ((s.n - 1) % stride_ != 0)
        return;
    const double e = discrete_energy(*stepper_, s.curr, s.prev);
    if (self_ref_ && !have_first_) {
        if (e == 0.0)
            throw DomainError("EnergyTracker: zero initial energy cannot serve as reference");
        reference_ = e;
    }
    EnergyRecord rec;
    rec.n = s.n;
    rec.t = (static_cast<double>(s.n) - 0.5) * stepper_->scheme().dt;
    rec.energy = e;
    rec.theta = relative_energy_error(e, reference_);
    if (!have_first_) {
        have_first_ = true;
        e_first_ = e;
        e_prev_ = e;
        theta_first_ = rec.theta;
        e_min_ = e;
    }
    rec.theta_drift = rec.theta - theta_first_;
    rec.delta = e - e_prev_;
    e_prev_ = e;
    e_min_ = std::min(e_min_, e);
    max_drift_ = std::max(max_drift_, std::abs(e - e_first_));
    records_.push_back(rec);
}

double EnergyTracker::max_theta_drift() const { return max_drift_ / std::abs(reference_); }

void compute_rates(std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (double e : rows[i].err)
            if (!(e > 0.0))
                throw DomainError("compute_rates: errors must be positive");
        rows[i].rate.clear();
        if (i == 0)
            continue;
        if (rows[i].err.size() != rows[i - 1].err.size())
            throw ContractViolation("compute_rates: ragged rows");
        for (std::size_t f = 0; f < rows[i].err.size(); ++f)
            rows[i].rate.push_back(std::log2(rows[i].err[f] / rows[i - 1].err[f]));
    }
}

} // namespace drude
