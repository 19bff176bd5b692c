#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drude/fields.hpp"
#include "drude/model.hpp"
#include "drude/stencil.hpp"

namespace drude {

enum class SchemeOrder { S22, S24, S44 }; ///< (time, space) order pairs

enum class FieldPair { EK, HJ }; ///< which second-order pair is stepped

std::string scheme_label(SchemeOrder s);   ///< "22", "24", "44"
SchemeOrder scheme_from_label(const std::string& s);

/// Display names of the bundle components: {E,K}, {H,J} or {Ex,Ey,K}.
std::vector<std::string> field_names(FieldPair pair, int dim);

/// Fully resolved discretization of one run.
struct SchemeSpec {
    SchemeOrder order = SchemeOrder::S44;
    int dim = 1;
    FieldPair pair = FieldPair::EK;
    MeshSpec mesh;
    double dt = 0.0;
    double nu = 0.0;         ///< Courant number c*dt/h
    double final_time = 0.0; ///< T
    long steps = 0;          ///< N = round(T/dt), with N*dt = T enforced

    static SchemeSpec make(SchemeOrder order, int dim, FieldPair pair, const PhysParams& p,
                           const MeshSpec& mesh, double dt, double final_time);

    DiffOrder space_order() const {
        return order == SchemeOrder::S22 ? DiffOrder::Second : DiffOrder::Fourth;
    }
    bool fourth_order_time() const { return order == SchemeOrder::S44; }
};

/// Cells per axis hit by the Courant relation h = c*dt/nu on [0,L]^d.
MeshSpec mesh_for_courant(double nu, double dt, const PhysParams& p, double length, int dim);

/// The two live time levels of the three-level leapfrog.
struct StatePair {
    FieldBundle curr; ///< W^n
    FieldBundle prev; ///< W^{n-1}
    long n = 0;       ///< index of curr

    double time(double dt) const { return static_cast<double>(n) * dt; }
};

/// General-mode initial data at t = 0: sampled value and time derivative.
struct InitialData {
    std::function<FieldBundle(const MeshSpec&)> value;
    std::function<FieldBundle(const MeshSpec&)> time_derivative;
};

/// Three-level leapfrog integrator for one (E,K)/(H,J) pair, with the
/// modified-equation correction supplying fourth order in time.
class Stepper {
public:
    Stepper(const SchemeSpec& scheme, const PhysParams& params, double correction_scale = 1.0);

    const SchemeSpec& scheme() const { return scheme_; }
    const PhysParams& params() const { return params_; }

    /// Coupling operator of the pair: lands on the auxiliary grid.
    GridFunction curl_fwd(const std::vector<GridFunction>& primary, DiffOrder order) const;
    /// Its adjoint, back onto the primary grids: <curl_fwd u, v> = <u, curl_dual v>.
    std::vector<GridFunction> curl_dual(const GridFunction& aux, DiffOrder order) const;

    /// Stiffness operator of the semi-discretization, at the scheme's space order.
    FieldBundle apply_a1(const FieldBundle& w) const;
    /// Modified-equation correction operator; always order-2 differences.
    FieldBundle apply_a2(const FieldBundle& w) const;

    /// Verification start: both levels sampled from the exact solution.
    StatePair initialize(const ExactSolution& sol) const;
    /// General start: degree-matched Taylor expansion from (W, dW/dt) at t0.
    StatePair initialize_taylor(const ExactSolution& sol, double t0) const;
    StatePair initialize_taylor(const InitialData& data) const;

    /// One leapfrog update; throws InstabilityError when values go non-finite.
    void step(StatePair& state) const;

    /// initialize + N-1 steps, invoking the observer on every state
    /// (first at n = 1, then after each step). Deterministic.
    StatePair run(const ExactSolution& sol,
                  const std::function<void(const StatePair&)>& observer) const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    StatePair taylor_start(const FieldBundle& w0, const FieldBundle& v0) const;

    SchemeSpec scheme_;
    PhysParams params_;
    double alpha_ = 0.0;  ///< frequency^2 on the primary field
    double beta_ = 0.0;   ///< frequency^2 on the auxiliary field
    double sigma_ = 1.0;  ///< 1D coupling sign (+1 EK, -1 HJ)
    double corr_ = 1.0;   ///< scale on the dt^2 c^2/12 correction (test hook)
};

} // namespace drude
