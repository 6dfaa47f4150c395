#pragma once

#include "orlicz/domain.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/test_function.hpp"

namespace orlicz {

enum class Region { domain_x_domain, full_space };

struct ModularOptions {
    double tol_rel = 1e-6;   // 1e-4 is the default for 2-D double integrals
    double tol_abs = 1e-300;
    int max_shells = 220;
    bool full_sum_debug = false; // integrate both (x,y) orders instead of 2x ordered pairs
    bool light = false; // skip breakpoint seeding; for loose-tolerance search loops
    double scale_hint = 0; // expected magnitude; skips the internal pilot pass when > 0
};

/// M_{L^A(D)}(f) = Int_D A(|f|) dx over D cap supp f.
QuadResult modular_la(const NFunction& nf, const Domain& D, const TestFunction& f,
                      ModularOptions opt = {.tol_rel = 1e-8});

/// Int_D A(|f(x)| / delta_x^s) dx with geometric panel grading toward the
/// boundary. Divergence (shell sums that stop decaying) is reported as a
/// +inf marker with converged = false.
QuadResult modular_hardy(const NFunction& nf, const Domain& D, double s, const TestFunction& f,
                         ModularOptions opt = {});

/// The Gagliardo-type modular
///   Int Int A(|f(x)-f(y)| / |x-y|^s) dx dy / |x-y|^N
/// over D x D, or over R^N x R^N with f extended by zero (full_space).
QuadResult modular_wsa(const NFunction& nf, const Domain& D, double s, const TestFunction& f,
                       Region region, ModularOptions opt = {});

/// Both sides of the polar change-of-variables identity in N = 2:
/// lhs = 2 * modular_wsa(D x D), rhs = angular quadrature over n_angles
/// directions of the nested line-section seminorms. Computed by independent
/// discretizations (Cartesian difference shells vs. section decomposition).
std::pair<QuadResult, QuadResult> polar_identity_check(const NFunction& nf, const Domain& D,
                                                       double s, const TestFunction& f,
                                                       int n_angles,
                                                       ModularOptions opt = {.tol_rel = 1e-4});

/// 1-D seminorm core over an explicit interval union; exposed for the
/// variational module and the polar identity sections.
QuadResult wsa_1d(const NFunction& nf, const IntervalUnion& U, double s, const TestFunction& f,
                  Region region, const ModularOptions& opt);

} // namespace orlicz
