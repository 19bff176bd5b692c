#pragma once

#include <memory>
#include <utility>

#include "drude/fields.hpp"
#include "drude/grid.hpp"

namespace drude {

/// Nondimensional material constants of the Maxwell-Drude model.
struct PhysParams {
    double eps0 = 1.0;     ///< vacuum permittivity
    double mu0 = 1.0;      ///< vacuum permeability
    double omega_pe = 0.0; ///< electric plasma frequency
    double omega_pm = 0.0; ///< magnetic plasma frequency
    double c = 1.0;        ///< light speed, 1/sqrt(eps0*mu0)

    static PhysParams make(double eps0, double mu0, double omega_pe, double omega_pm);
};

/// Drude dispersion: eps0(1 - wpe^2/w^2), mu0(1 - wpm^2/w^2). Throws on w = 0.
std::pair<double, double> drude_permittivity(double omega, const PhysParams& p);

struct DerivedParams1D {
    PhysParams params;
    int k = 0;          ///< spatial wavenumber (integer)
    double omega = 0.0; ///< temporal factor is sin(omega*pi*t)
};

struct DerivedParams2D {
    PhysParams params;
    int kx = 0;
    int ky = 0;
    double omega = 0.0;
};

/// omega_pm and omega making the 1D traveling-mode solution exact.
/// Requires eps0 > k and a positive radicand.
DerivedParams1D derive_params_1d(double eps0, double mu0, int k, double omega_pe);

/// 2D TE analogue; positive physical inputs always admit a solution.
DerivedParams2D derive_params_2d(double eps0, double mu0, int kx, int ky, double omega_pe);

/// Closures a solver consumes: sampled state and sampled time derivative at t.
class ExactSolution {
public:
    virtual ~ExactSolution() = default;
    virtual int dim() const = 0;
    virtual const PhysParams& params() const = 0;
    virtual FieldBundle state(const MeshSpec& mesh, double t) const = 0;
    virtual FieldBundle time_derivative(const MeshSpec& mesh, double t) const = 0;
};

/// 1D (E,K) mode: E = (1/w) sin(w pi t) sin(k pi x), K = (mu0 wpm^2/(pi w)) sin(w pi t) cos(k pi x).
class ManufacturedSolution1D final : public ExactSolution {
public:
    explicit ManufacturedSolution1D(const DerivedParams1D& dp);

    double E(double x, double t) const;
    double K(double x, double t) const;
    double dE_dt(double x, double t) const;
    double dK_dt(double x, double t) const;
    double dE_dx(double x, double t) const;

    int dim() const override { return 1; }
    const PhysParams& params() const override { return dp_.params; }
    FieldBundle state(const MeshSpec& mesh, double t) const override;
    FieldBundle time_derivative(const MeshSpec& mesh, double t) const override;

    double omega() const { return dp_.omega; }
    int wavenumber() const { return dp_.k; }

private:
    DerivedParams1D dp_;
    double amp_e_;
    double amp_k_;
};

/// 2D TE (Ex,Ey,K) mode of the same family.
class ManufacturedSolution2D final : public ExactSolution {
public:
    explicit ManufacturedSolution2D(const DerivedParams2D& dp);

    double Ex(double x, double y, double t) const;
    double Ey(double x, double y, double t) const;
    double K(double x, double y, double t) const;
    double dEx_dt(double x, double y, double t) const;
    double dEy_dt(double x, double y, double t) const;
    double dK_dt(double x, double y, double t) const;

    int dim() const override { return 2; }
    const PhysParams& params() const override { return dp_.params; }
    FieldBundle state(const MeshSpec& mesh, double t) const override;
    FieldBundle time_derivative(const MeshSpec& mesh, double t) const override;

    double omega() const { return dp_.omega; }
    int kx() const { return dp_.kx; }
    int ky() const { return dp_.ky; }

private:
    DerivedParams2D dp_;
    double amp_k_;
    FieldBundle sample_with_time_factor(const MeshSpec& mesh, double tf) const;
};

/// (H,J) oracle built from the (E,K) mode: H = E, J = -K solves the (H,J)
/// system whose plasma frequencies are the (E,K) ones swapped.
class DualHJSolution1D final : public ExactSolution {
public:
    explicit DualHJSolution1D(const ManufacturedSolution1D& ek);

    double H(double x, double t) const { return ek_.E(x, t); }
    double J(double x, double t) const { return -ek_.K(x, t); }
    double dH_dt(double x, double t) const { return ek_.dE_dt(x, t); }
    double dJ_dt(double x, double t) const { return -ek_.dK_dt(x, t); }
    double dH_dx(double x, double t) const { return ek_.dE_dx(x, t); }

    int dim() const override { return 1; }
    const PhysParams& params() const override { return swapped_; }
    FieldBundle state(const MeshSpec& mesh, double t) const override;
    FieldBundle time_derivative(const MeshSpec& mesh, double t) const override;

    double omega() const { return ek_.omega(); }
    const ManufacturedSolution1D& generator() const { return ek_; }

private:
    ManufacturedSolution1D ek_;
    PhysParams swapped_;
};

/// Continuous conserved energy of the (E,K) pair, evaluated in closed form
/// (the L2 integrals of the trig modes are exact). Time independent.
double continuous_energy_ek(const ManufacturedSolution1D& sol, double t);
double continuous_energy_ek(const ManufacturedSolution2D& sol, double t);

/// Energy of the dual-constructed (H,J) mode; equals the (E,K) energy of the
/// generating solution.
double continuous_energy_hj(const DualHJSolution1D& sol, double t);

/// Grid sampling of the solution at time t (verification-mode states).
FieldBundle exact_state(const ExactSolution& sol, const MeshSpec& mesh, double t);

} // namespace drude
