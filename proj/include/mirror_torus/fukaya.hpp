#pragma once

#include "mirror_torus/qseries.hpp"
#include "mirror_torus/sheaf.hpp"

#include <array>
#include <vector>

namespace mtorus {

using RatPoint = std::array<Rat, 2>;

/// Rational-slope geodesic on the torus with grading and monodromy data.
/// dir = (px, py) is primitive with the canonical sign (px > 0, or px = 0 and
/// py > 0); the grading is alpha = alpha0(dir) + grade_shift with alpha0 in
/// (-1/2, 1/2]. cyclic > 1 marks a pushed-forward system whose monodromy is
/// the cyclic block operator of e^{-2 pi i b} e^N (rank cyclic * ls.rank).
struct LagrangianObject {
    long px = 1, py = 0;
    RatPoint base{Rat(0), Rat(0)};
    int grade_shift = 0;
    LocalSystemData ls;
    long cyclic = 1;

    static LagrangianObject line(long px, long py, const RatPoint& base, int grade_shift = 0,
                                 LocalSystemData ls = LocalSystemData::trivial());

    void canonicalize();
    void validate() const;
    long system_rank() const { return cyclic * ls.rank; }

    bool meridian() const { return px == 0; }
    /// Exact comparison of alpha0(dir) within (-1/2, 1/2].
    bool alpha0_less(const LagrangianObject& o) const;
    bool alpha0_equal(const LagrangianObject& o) const;
};

LagrangianObject shift_A(const LagrangianObject& l, int k = 1);

bool same_support(const LagrangianObject& l0, const LagrangianObject& l1);
bool on_support(const LagrangianObject& l, const RatPoint& p);

/// alpha1 - alpha0 in [0, 1) (the distinct-support Hom window).
bool alpha_in_hom_window(const LagrangianObject& l0, const LagrangianObject& l1);
/// alpha1 - alpha0 == j exactly (requires equal direction classes).
bool alpha_diff_is(const LagrangianObject& l0, const LagrangianObject& l1, int j);
bool alpha_less(const LagrangianObject& l0, const LagrangianObject& l1);
/// alpha0 < alpha1 < alpha2 < alpha0 + 1 (transverse positive triple).
bool positive_triple(const LagrangianObject& l0, const LagrangianObject& l1,
                     const LagrangianObject& l2);

/// Exactly |det(dir0, dir1)| points for transverse pairs, sorted; empty for
/// parallel (use same_support to distinguish equal supports).
std::vector<RatPoint> intersections(const LagrangianObject& l0, const LagrangianObject& l1);

enum class FukHomCase { Zero, Transverse, EqualSupportH0, EqualSupportH1 };

struct FukHom {
    FukHomCase kind = FukHomCase::Zero;
    long dim = 0;
    std::vector<RatPoint> points;  // Transverse: basis points (one rank block each)
    long block = 1;                // per-point Hom dimension
    std::vector<RatMatrix> reps;   // equal-support basis representatives
};

FukHom hom_space(const LagrangianObject& l0, const LagrangianObject& l1);
long hom_space_dim(const LagrangianObject& l0, const LagrangianObject& l1);

struct TriangleContribution {
    Rat area;
    Complex holonomy;  // ordered product of the three boundary transports
};

/// Lattice triangles with vertices over (x0, x1, x2) on lifts of the three
/// lines, one per equivalence class, with area <= area_cutoff. Completeness
/// follows from the exact quadratic growth of area in the translate index.
/// flip_orientation inverts the signed-area test (negative-control hook).
std::vector<TriangleContribution> enumerate_triangles(const LagrangianObject& l0,
                                                      const LagrangianObject& l1,
                                                      const LagrangianObject& l2, const RatPoint& x0,
                                                      const RatPoint& x1, const RatPoint& x2,
                                                      const Rat& area_cutoff,
                                                      bool flip_orientation = false);

/// q-series coefficient of the composition at the target point x2 for basis
/// morphisms at x0, x1 (rank-1 systems): sum of q^{area} * holonomy.
QSeries compose_A_basis(const LagrangianObject& l0, const LagrangianObject& l1,
                        const LagrangianObject& l2, const RatPoint& x0, const RatPoint& x1,
                        const RatPoint& x2, const Rat& cutoff, bool flip_orientation = false);

struct AStructureConstants {
    std::vector<QSeries> coords;  // over the target FukHom basis
};

/// Composition for the supported branches: transverse positive triples
/// (triangle-weighted), the all-equal-support branch (plain composition of
/// intertwiners), and the zero branch alpha2 > alpha0 + 1. The
/// alpha2 = alpha0 + 1 branch is routed through serre_pairing_A and rejected
/// here.
AStructureConstants compose_A(const LagrangianObject& l0, const LagrangianObject& l1,
                              const LagrangianObject& l2, const std::vector<Complex>& v,
                              const std::vector<Complex>& u, const Rat& cutoff,
                              bool flip_orientation = false);

struct SerrePairingA {
    RatMatrix matrix;  // Hom(L0, L1) x Hom(L1, L0[1]) in the canonical bases
    bool full_rank = false;
};

/// Canonical pairing: intersection points pair with themselves via the trace
/// form; equal-support case pairs H^0 intertwiners with H^1 classes.
SerrePairingA serre_pairing_A(const LagrangianObject& l0, const LagrangianObject& l1);

/// p_r(x, y) = (r x, y) on objects: direction (r p, q) made primitive, base
/// scaled, cyclic degree multiplied by the covering degree gcd(r p, q).
LagrangianObject pushforward_obj(long r, const LagrangianObject& l);
/// Components of the preimage, each with monodromy M^d for d = r / #components.
std::vector<LagrangianObject> pullback_obj(long r, const LagrangianObject& l);

}  // namespace mtorus
