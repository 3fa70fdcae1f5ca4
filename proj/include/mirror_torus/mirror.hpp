#pragma once

#include "mirror_torus/fukaya.hpp"
#include "mirror_torus/sheaf.hpp"

#include <optional>
#include <string>

namespace mtorus {

/// Scalar of the form q^{q_exp} * e^{2 pi i phase_turns} attached to a
/// Hom-space identification.
struct NormalizationScalar {
    Rat q_exp = 0;
    Rat phase_turns = 0;
};

/// Mirror dictionary on objects: line bundles of degree n at x = a tau + b go
/// to slope-n lines through (a, (n-1)a) with monodromy e^{-2 pi i b} e^N;
/// torsion sheaves at x go to meridians at -a with grading 1/2 and monodromy
/// e^{2 pi i b + N}; isogeny pushforwards go through p_{r*}.
LagrangianObject mirror_object(const SheafObject& e);

struct MorphismBasis {
    /// e_k = ((a1-a0+k)/d, (n0 a1 - n1 a0 + n0 k)/d) reduced mod 1, k = 0..d-1.
    std::vector<RatPoint> points;
    /// Scalar the mirror functor attaches to the whole Hom space.
    NormalizationScalar scale;
};

/// Bijection {theta index k} -> {intersection point e_k} for line bundles with
/// n1 > n0. Throws if the printed formula image differs from the computed
/// intersection set (hard failure).
MorphismBasis mirror_morphism_basis(const SheafObject& e0, const SheafObject& e1);

/// Normalization forced by functoriality on line-bundle pairs:
/// q^{d a01^2 / 2} e^{2 pi i d a01 b01} with d = n1 - n0, x01 = (x1-x0)/d.
NormalizationScalar line_hom_normalization(const SheafObject& e0, const SheafObject& e1);
/// The printed prefactor for a line bundle source and torsion target,
/// implemented verbatim: q^{-(n at^2 + 2 a at)/2} e^{-2 pi i (at b + a bt + n at bt)}.
NormalizationScalar torsion_hom_normalization(const SheafObject& e0, const SheafObject& t);

enum class MirrorVerdict { Pass, NormalizationDiscrepancy, Fail };

struct MirrorElementReport {
    long k1 = 0, k2 = 0, k = 0;   // source basis indices and target basis index
    QSeries a_side;               // E(v) o E(u) coefficient at e_k
    QSeries b_side;               // E(v o u) coefficient at e_k
    double max_dev = 0.0;
    Rat compared_upto = 0;
};

struct MirrorReport {
    MirrorVerdict verdict = MirrorVerdict::Fail;
    std::vector<MirrorElementReport> elements;
    Rat cutoff = 0;
    double tolerance = 0.0;
    double max_dev = 0.0;
    /// First mismatching exponent and the two coefficients there, when failing.
    std::optional<Rat> first_mismatch_exp;
    Complex first_mismatch_a, first_mismatch_b;
    /// Per-target-element ratio constants when a constant rescaling explains
    /// the mismatch (normalization discrepancy).
    std::vector<Complex> ratio_constants;
    std::string note;

    bool passed() const { return verdict == MirrorVerdict::Pass; }
};

/// Compares E(v) o E(u) (triangle enumeration) against E(v o u) (theta-product
/// expansion) per target basis element for all basis pairs (k1, k2), over
/// exponents <= cutoff. Scope: scalar trivial systems with strictly increasing
/// degrees, or a torsion target. flip_orientation feeds the A-side
/// negative-control hook.
MirrorReport verify_functoriality(const SheafObject& e0, const SheafObject& e1,
                                  const SheafObject& e2, const Rat& cutoff, double tolerance,
                                  bool flip_orientation = false);

/// hom_dim(E0, E1, k) == dim Hom(mirror E0, mirror E1 [k]) for k in {-1,0,1,2}.
bool verify_dimensions(const SheafObject& e0, const SheafObject& e1);

}  // namespace mtorus
