#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "drude/stencil.hpp"

using namespace drude;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction random_field(const MeshSpec& mesh, const Stagger& st, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFunction g(mesh, st);
    for (double& v : g.values())
        v = dist(rng);
    return g;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

double rel(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a + b) / scale;
}

// max-norm error of the staggered derivative of sin(2 pi x) along one axis
double fwd_error(int m, DiffOrder order) {
    const MeshSpec mesh = MeshSpec::make(1.0, m, 1);
    const GridFunction u =
        sample(mesh, Stagger::primal(1), [](double x) { return std::sin(2.0 * kPi * x); });
    const GridFunction d = diff_fwd(u, 0, order);
    const GridFunction exact =
        sample(mesh, Stagger::dual(1), [](double x) { return 2.0 * kPi * std::cos(2.0 * kPi * x); });
    return max_abs_diff(d, exact);
}

double dual_error(int m, DiffOrder order) {
    const MeshSpec mesh = MeshSpec::make(1.0, m, 1);
    const GridFunction u =
        sample(mesh, Stagger::dual(1), [](double x) { return std::cos(2.0 * kPi * x); });
    const GridFunction d = diff_dual(u, 0, order);
    const GridFunction exact = sample(mesh, Stagger::primal(1),
                                      [](double x) { return -2.0 * kPi * std::sin(2.0 * kPi * x); });
    return max_abs_diff(d, exact);
}

} // namespace

TEST_CASE("differences annihilate constants") {
    const MeshSpec m = MeshSpec::make(1.0, 12, 1);
    const GridFunction cp = sample(m, Stagger::primal(1), [](double) { return 3.25; });
    const GridFunction cd = sample(m, Stagger::dual(1), [](double) { return -1.5; });
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction df = diff_fwd(cp, 0, o);
        for (double v : df.values())
            CHECK(v == 0.0);
        const GridFunction dd = diff_dual(cd, 0, o);
        for (double v : dd.values())
            CHECK(v == 0.0);
    }
}

TEST_CASE("differences are exact on linear data away from the seam") {
    const MeshSpec m = MeshSpec::make(1.0, 16, 1);
    const GridFunction xp = sample(m, Stagger::primal(1), [](double x) { return x; });
    const GridFunction xd = sample(m, Stagger::dual(1), [](double x) { return x; });
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction df = diff_fwd(xp, 0, o);
        const GridFunction dd = diff_dual(xd, 0, o);
        for (int i = 2; i < m.cells - 3; ++i) {
            CHECK(df(i) == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(dd(i) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("stagger preconditions") {
    const MeshSpec m = MeshSpec::make(1.0, 8, 1);
    const GridFunction p(m, Stagger::primal(1));
    const GridFunction d(m, Stagger::dual(1));
    CHECK_THROWS_AS((void)diff_fwd(d, 0, DiffOrder::Second), ContractViolation);
    CHECK_THROWS_AS((void)diff_dual(p, 0, DiffOrder::Second), ContractViolation);
    CHECK_THROWS_AS((void)diff_fwd(p, 1, DiffOrder::Second), ContractViolation);
}

TEST_CASE("refinement: error ratios 4 (order 2) and 16 (order 4) from M 32 to 64") {
    CHECK(fwd_error(32, DiffOrder::Second) / fwd_error(64, DiffOrder::Second) ==
          doctest::Approx(4.0).epsilon(0.05));
    CHECK(fwd_error(32, DiffOrder::Fourth) / fwd_error(64, DiffOrder::Fourth) ==
          doctest::Approx(16.0).epsilon(0.05));
    CHECK(dual_error(32, DiffOrder::Fourth) / dual_error(64, DiffOrder::Fourth) ==
          doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("observed order of accuracy within 0.1 of nominal over M = 16..128") {
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const double nominal = o == DiffOrder::Second ? 2.0 : 4.0;
        int m = 16;
        double prev = fwd_error(m, o);
        for (int lvl = 0; lvl < 3; ++lvl) {
            m *= 2;
            const double cur = fwd_error(m, o);
            const double rate = std::log2(prev / cur);
            CHECK(rate == doctest::Approx(nominal).epsilon(0.1 / nominal));
            prev = cur;
        }
    }
}

TEST_CASE("summation by parts over dims, axes and orders") {
    for (int dim = 1; dim <= 3; ++dim) {
        for (int m : {8, 16}) {
            const MeshSpec mesh = MeshSpec::make(1.0, m, dim);
            for (int axis = 0; axis < dim; ++axis) {
                for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
                    for (unsigned rep = 0; rep < 4; ++rep) {
                        const Stagger sp = Stagger::primal(dim);
                        const GridFunction v = random_field(mesh, sp, 17 * rep + axis + 1);
                        const GridFunction u =
                            random_field(mesh, sp.flipped(axis), 91 * rep + axis + 2);
                        const double a = inner(diff_fwd(v, axis, o), u);
                        const double b = inner(v, diff_dual(u, axis, o));
                        CHECK(rel(a, b) < 1e-13);
                    }
                }
            }
        }
    }
    // one larger 1D case
    const MeshSpec mesh = MeshSpec::make(1.0, 64, 1);
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction v = random_field(mesh, Stagger::primal(1), 5);
        const GridFunction u = random_field(mesh, Stagger::dual(1), 6);
        CHECK(rel(inner(diff_fwd(v, 0, o), u), inner(v, diff_dual(u, 0, o))) < 1e-13);
    }
}

TEST_CASE("F*F and (F*F)^2 are self-adjoint") {
    const MeshSpec mesh = MeshSpec::make(1.0, 32, 1);
    auto lap = [&](const GridFunction& g, DiffOrder o) { return diff_dual(diff_fwd(g, 0, o), 0, o); };
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction u = random_field(mesh, Stagger::primal(1), 21);
        const GridFunction v = random_field(mesh, Stagger::primal(1), 22);
        CHECK(rel(inner(lap(u, o), v), -inner(u, lap(v, o))) < 1e-13); // equal values
        CHECK(inner(lap(u, o), v) == doctest::Approx(inner(u, lap(v, o))).epsilon(1e-13));
        CHECK(inner(lap(lap(u, o), o), v) ==
              doctest::Approx(inner(u, lap(lap(v, o), o))).epsilon(1e-13));
    }
}

namespace {
// TE layout grids
const Stagger kExSt = Stagger::of({NodeCentering::Dual, NodeCentering::Primal});
const Stagger kEySt = Stagger::of({NodeCentering::Primal, NodeCentering::Dual});
const Stagger kKSt = Stagger::dual(2);
} // namespace

TEST_CASE("2d scalar curl: zero, linears, gradient decay") {
    const MeshSpec mesh = MeshSpec::make(1.0, 32, 2);

    const GridFunction zx(mesh, kExSt), zy(mesh, kEySt);
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction cz = curl_2d_scalar(zx, zy, CurlKind::Forward, o);
        for (double v : cz.values())
            CHECK(v == 0.0);
    }

    // E = (0, x): curl = d_x Ey = 1, exactly, away from the x seam
    const GridFunction ey = sample(mesh, kEySt, [](double x, double) { return x; });
    const GridFunction c = curl_2d_scalar(zx, ey, CurlKind::Forward, DiffOrder::Fourth);
    for (int j = 0; j < mesh.cells; ++j)
        for (int i = 2; i < mesh.cells - 3; ++i)
            CHECK(c(i, j) == doctest::Approx(1.0).epsilon(1e-12));

    // curl of a sampled gradient decays at the stencil order; phi must mix
    // wavenumbers, else the two stencil errors cancel exactly by symmetry
    auto grad_curl_err = [](int m, DiffOrder o) {
        const MeshSpec mm = MeshSpec::make(1.0, m, 2);
        const GridFunction gx = sample(mm, kExSt, [](double x, double y) {
            return 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(4.0 * kPi * y);
        });
        const GridFunction gy = sample(mm, kEySt, [](double x, double y) {
            return 4.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(4.0 * kPi * y);
        });
        const GridFunction cc = curl_2d_scalar(gx, gy, CurlKind::Forward, o);
        double mx = 0.0;
        for (double v : cc.values())
            mx = std::max(mx, std::abs(v));
        return mx;
    };
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const double nominal = o == DiffOrder::Second ? 2.0 : 4.0;
        const double r = std::log2(grad_curl_err(32, o) / grad_curl_err(64, o));
        CHECK(r == doctest::Approx(nominal).epsilon(0.1 / nominal));
    }
    // with equal wavenumbers the sampled-gradient curl vanishes to roundoff
    {
        const MeshSpec mm = MeshSpec::make(1.0, 32, 2);
        const GridFunction gx = sample(mm, kExSt, [](double x, double y) {
            return 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
        });
        const GridFunction gy = sample(mm, kEySt, [](double x, double y) {
            return 2.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y);
        });
        const GridFunction cc = curl_2d_scalar(gx, gy, CurlKind::Forward, DiffOrder::Second);
        for (double v : cc.values())
            CHECK(std::abs(v) < 1e-11);
    }
}

TEST_CASE("2d vector curl: constants, analytic derivative, adjointness") {
    const MeshSpec mesh = MeshSpec::make(1.0, 32, 2);
    const GridFunction ck = sample(mesh, kKSt, [](double, double) { return 2.5; });
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const auto cv = curl_2d_vector(ck, CurlKind::Dual, o);
        for (double v : cv[0].values())
            CHECK(v == 0.0);
        for (double v : cv[1].values())
            CHECK(v == 0.0);
    }

    // K = sin sin: curl_vec K = (2 pi sin cos, -2 pi cos sin), ratio 16 under refinement
    auto vec_err = [](int m) {
        const MeshSpec mm = MeshSpec::make(1.0, m, 2);
        const GridFunction k = sample(mm, kKSt, [](double x, double y) {
            return std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
        });
        const auto cv = curl_2d_vector(k, CurlKind::Dual, DiffOrder::Fourth);
        const GridFunction ex = sample(mm, kExSt, [](double x, double y) {
            return 2.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y);
        });
        const GridFunction ey = sample(mm, kEySt, [](double x, double y) {
            return -2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
        });
        return std::max(max_abs_diff(cv[0], ex), max_abs_diff(cv[1], ey));
    };
    CHECK(vec_err(32) / vec_err(64) == doctest::Approx(16.0).epsilon(0.05));

    // <curl_scal E, K> = <E, curl_vec_dual K>: the two per-axis SBP minus signs cancel
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const GridFunction ex = random_field(mesh, kExSt, 31);
        const GridFunction ey = random_field(mesh, kEySt, 32);
        const GridFunction kk = random_field(mesh, kKSt, 33);
        const double lhs = inner(curl_2d_scalar(ex, ey, CurlKind::Forward, o), kk);
        const auto cv = curl_2d_vector(kk, CurlKind::Dual, o);
        const double rhs = inner(ex, cv[0]) + inner(ey, cv[1]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

namespace {
// Yee layout: component m dual along m (edge grids) / primal along m (face grids)
std::array<GridFunction, 3> edge_fields(const MeshSpec& mesh, unsigned seed) {
    std::array<GridFunction, 3> v{
        random_field(mesh, Stagger::of({NodeCentering::Dual, NodeCentering::Primal, NodeCentering::Primal}), seed),
        random_field(mesh, Stagger::of({NodeCentering::Primal, NodeCentering::Dual, NodeCentering::Primal}), seed + 1),
        random_field(mesh, Stagger::of({NodeCentering::Primal, NodeCentering::Primal, NodeCentering::Dual}), seed + 2)};
    return v;
}
std::array<GridFunction, 3> face_fields(const MeshSpec& mesh, unsigned seed) {
    std::array<GridFunction, 3> v{
        random_field(mesh, Stagger::of({NodeCentering::Primal, NodeCentering::Dual, NodeCentering::Dual}), seed),
        random_field(mesh, Stagger::of({NodeCentering::Dual, NodeCentering::Primal, NodeCentering::Dual}), seed + 1),
        random_field(mesh, Stagger::of({NodeCentering::Dual, NodeCentering::Dual, NodeCentering::Primal}), seed + 2)};
    return v;
}
} // namespace

TEST_CASE("3d curl: constants and adjointness of the pair") {
    const MeshSpec mesh = MeshSpec::make(1.0, 8, 3);
    auto ones = edge_fields(mesh, 40);
    for (auto& g : ones)
        for (double& v : g.values())
            v = 1.75;
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth})
        for (const auto& comp : curl_3d(ones, CurlKind::Forward, o))
            for (double v : comp.values())
                CHECK(v == 0.0);

    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        for (unsigned rep = 0; rep < 3; ++rep) {
            const auto v = edge_fields(mesh, 50 + 7 * rep);
            const auto u = face_fields(mesh, 80 + 7 * rep);
            const auto cv = curl_3d(v, CurlKind::Forward, o);
            const auto cu = curl_3d(u, CurlKind::Dual, o);
            double lhs = 0.0, rhs = 0.0;
            for (int cidx = 0; cidx < 3; ++cidx) {
                lhs += inner(cv[static_cast<std::size_t>(cidx)], u[static_cast<std::size_t>(cidx)]);
                rhs += inner(v[static_cast<std::size_t>(cidx)], cu[static_cast<std::size_t>(cidx)]);
            }
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("3d curl of a sampled gradient decays at the stencil order") {
    // phi = sin(2 pi x) sin(4 pi y) sin(2 pi z): mixed wavenumbers keep the
    // per-component truncation errors from cancelling
    auto grad_err = [](int m, DiffOrder o) {
        const MeshSpec mesh = MeshSpec::make(1.0, m, 3);
        auto dx = [&](double x, double y, double z) {
            return 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(4.0 * kPi * y) *
                   std::sin(2.0 * kPi * z);
        };
        auto dy = [&](double x, double y, double z) {
            return 4.0 * kPi * std::sin(2.0 * kPi * x) * std::cos(4.0 * kPi * y) *
                   std::sin(2.0 * kPi * z);
        };
        auto dz = [&](double x, double y, double z) {
            return 2.0 * kPi * std::sin(2.0 * kPi * x) * std::sin(4.0 * kPi * y) *
                   std::cos(2.0 * kPi * z);
        };
        std::array<GridFunction, 3> g{
            sample(mesh, Stagger::of({NodeCentering::Dual, NodeCentering::Primal, NodeCentering::Primal}), dx),
            sample(mesh, Stagger::of({NodeCentering::Primal, NodeCentering::Dual, NodeCentering::Primal}), dy),
            sample(mesh, Stagger::of({NodeCentering::Primal, NodeCentering::Primal, NodeCentering::Dual}), dz)};
        double mx = 0.0;
        for (const auto& comp : curl_3d(g, CurlKind::Forward, o))
            for (double v : comp.values())
                mx = std::max(mx, std::abs(v));
        return mx;
    };
    for (DiffOrder o : {DiffOrder::Second, DiffOrder::Fourth}) {
        const double nominal = o == DiffOrder::Second ? 2.0 : 4.0;
        const double r = std::log2(grad_err(16, o) / grad_err(32, o));
        CHECK(r == doctest::Approx(nominal).epsilon(0.12 / nominal));
    }
}

TEST_CASE("op chains: identity, laplacian, biharmonic, validation") {
    const MeshSpec mesh = MeshSpec::make(1.0, 64, 1);
    const GridFunction s =
        sample(mesh, Stagger::primal(1), [](double x) { return std::sin(2.0 * kPi * x); });

    const OpChain id(Stagger::primal(1), {});
    CHECK(max_abs_diff(id.apply(s), s) == 0.0);

    // F then F* approximates d^2/dx^2: sin -> -(2 pi)^2 sin at O(h^2)
    auto lap_err = [](int m) {
        const MeshSpec mm = MeshSpec::make(1.0, m, 1);
        const GridFunction u =
            sample(mm, Stagger::primal(1), [](double x) { return std::sin(2.0 * kPi * x); });
        const OpChain chain(Stagger::primal(1), {{true, 0, DiffOrder::Second},
                                                 {false, 0, DiffOrder::Second}});
        const GridFunction got = chain.apply(u);
        const GridFunction want = sample(mm, Stagger::primal(1), [](double x) {
            return -(2.0 * kPi) * (2.0 * kPi) * std::sin(2.0 * kPi * x);
        });
        return max_abs_diff(got, want);
    };
    CHECK(std::log2(lap_err(32) / lap_err(64)) == doctest::Approx(2.0).epsilon(0.05));

    auto biharm_err = [](int m) {
        const MeshSpec mm = MeshSpec::make(1.0, m, 1);
        const GridFunction u =
            sample(mm, Stagger::primal(1), [](double x) { return std::sin(2.0 * kPi * x); });
        const OpChain chain(Stagger::primal(1), {{true, 0, DiffOrder::Second},
                                                 {false, 0, DiffOrder::Second},
                                                 {true, 0, DiffOrder::Second},
                                                 {false, 0, DiffOrder::Second}});
        const GridFunction got = chain.apply(u);
        const double w4 = std::pow(2.0 * kPi, 4);
        const GridFunction want =
            sample(mm, Stagger::primal(1), [&](double x) { return w4 * std::sin(2.0 * kPi * x); });
        return max_abs_diff(got, want);
    };
    CHECK(std::log2(biharm_err(64) / biharm_err(128)) == doctest::Approx(2.0).epsilon(0.05));

    // inconsistent chain rejected at construction
    CHECK_THROWS_AS(OpChain(Stagger::primal(1), {{true, 0, DiffOrder::Second},
                                                 {true, 0, DiffOrder::Second}}),
                    ContractViolation);
    // applying to the wrong stagger rejected
    const OpChain fwd(Stagger::primal(1), {{true, 0, DiffOrder::Second}});
    const GridFunction d(mesh, Stagger::dual(1));
    CHECK_THROWS_AS((void)fwd.apply(d), ContractViolation);
}
