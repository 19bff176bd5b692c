#pragma once

#include <string>
#include <vector>

#include "drude/stepper.hpp"

namespace drude {

/// Sum of the componentwise discrete inner products of two bundles.
double bundle_inner(const FieldBundle& a, const FieldBundle& b);

/// Scheme-matched conserved quantity E_h^{n+1/2} built from the two levels
/// (newer = W^{n+1}, older = W^n): the (4,4) form keeps the correction term,
/// (2,4) drops it, (2,2) uses the rearranged cross-term expression.
double discrete_energy(const Stepper& stepper, const FieldBundle& newer,
                       const FieldBundle& older);

/// The <A1 W^{n+1}, W^n> form at the stepper's space order (plus the
/// correction term for (4,4)); equals discrete_energy except for (2,2),
/// where it is the algebraic rearrangement of the same quadratic form.
double discrete_energy_a1_form(const Stepper& stepper, const FieldBundle& newer,
                               const FieldBundle& older);

/// |energy - reference| / |reference|; reference must be nonzero.
double relative_energy_error(double energy, double reference);

/// Running max-in-time discrete L2 error per field against the exact solution.
class SolutionErrorTracker {
public:
    SolutionErrorTracker(const ExactSolution& sol, const SchemeSpec& scheme);

    /// Feed one leapfrog state; the first (n = 1) also accounts for W^0.
    void observe_state(const StatePair& s);
    void observe(const FieldBundle& w, double t);

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<double>& errors() const { return errors_; }

private:
    const ExactSolution* sol_;
    SchemeSpec scheme_;
    std::vector<std::string> names_;
    std::vector<double> errors_;
};

struct EnergyRecord {
    long n = 0;              ///< such that energy = E_h^{n-1/2}
    double t = 0.0;          ///< (n - 1/2) dt
    double energy = 0.0;
    double theta = 0.0;      ///< |E_h - ref| / ref
    double theta_drift = 0.0;///< theta - theta at the first record
    double delta = 0.0;      ///< energy - previously recorded energy (0 for the first)
};

/// Energy series plus the conservation summary of one run.
class EnergyTracker {
public:
    /// reference: the Theta denominator (continuous energy, or the initial
    /// discrete energy when none exists). stride: compute every stride-th step.
    EnergyTracker(const Stepper& stepper, double reference, long stride = 1);

    /// Use the first observed discrete energy as the Theta reference
    /// ((H,J) runs, where no continuous value is quoted).
    static EnergyTracker self_referenced(const Stepper& stepper, long stride = 1);

    void observe_state(const StatePair& s);

    const std::vector<EnergyRecord>& records() const { return records_; }
    double initial_energy() const { return e_first_; }
    double max_drift() const { return max_drift_; } ///< max |E - E_first|
    double min_energy() const { return e_min_; }
    double reference() const { return reference_; }
    /// max_n |E^{n+1/2} - E^{1/2}| / reference — the Table-1 conservation measure.
    double max_theta_drift() const;

private:
    const Stepper* stepper_;
    double reference_;
    long stride_;
    bool self_ref_ = false;
    bool have_first_ = false;
    double e_first_ = 0.0;
    double e_prev_ = 0.0;
    double theta_first_ = 0.0;
    double max_drift_ = 0.0;
    double e_min_ = 0.0;
    std::vector<EnergyRecord> records_;
};

struct ConvergenceRow {
    double dt = 0.0;
    double dx = 0.0;
    std::vector<double> err;  ///< one entry per field
    std::vector<double> rate; ///< empty for the first row
};

/// rate_i = log2(err_i / err_{i-1}) for each field (negative when errors
/// shrink, matching the tables' sign convention). Errors must be positive.
void compute_rates(std::vector<ConvergenceRow>& rows);

} // namespace drude
