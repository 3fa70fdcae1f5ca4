#pragma once

#include "mirror_torus/qseries.hpp"
#include "mirror_torus/rat_matrix.hpp"

#include <vector>

namespace mtorus {

/// Flat local-system data: monodromy M = e^{-2 pi i b} e^N with N strictly
/// upper triangular (so N^rank = 0 holds by shape).
struct LocalSystemData {
    int rank = 1;
    Rat b = 0;
    RatMatrix N = RatMatrix(1, 1);

    static LocalSystemData trivial(int rank = 1);

    void validate() const;
    bool is_scalar_trivial() const { return rank == 1 && N.is_zero(); }
    /// e^N as an exact rational matrix (finite sum).
    RatMatrix unipotent() const;
    bool nilpotent_cyclic() const;
};

/// Monodromy block: scalar phase e^{-2 pi i b} times a unipotent with the
/// given nilpotent logarithm.
struct MonodromyBlock {
    Rat b;
    RatMatrix N;
};

/// Block decomposition of a (possibly cyclically pushed-forward) monodromy:
/// cyclic degree d splits into d blocks with phases (b + j)/d.
std::vector<MonodromyBlock> monodromy_blocks(const LocalSystemData& ls, long cyclic);

/// dim{f : N1 f = f N0} over Q (exact nullspace computation).
long nilpotent_intertwiner_dim(const RatMatrix& n0, const RatMatrix& n1);
/// dim H^0 of Hom between two block-decomposed monodromies on a circle;
/// H^1 has the same dimension.
long monodromy_hom_dim(const std::vector<MonodromyBlock>& m0, const std::vector<MonodromyBlock>& m1);

enum class SheafKind { Line, Torsion, Pushforward };

/// Descriptor of an indecomposable coherent sheaf on the elliptic curve:
/// a line bundle of degree n at point x = a tau + b tensored with a unipotent
/// system; a torsion sheaf at x; or an isogeny pushforward of a line-bundle
/// kind living on the r-fold cover (inner data in cover coordinates,
/// gcd(r, n) = 1 so the result is indecomposable).
struct SheafObject {
    SheafKind kind = SheafKind::Line;
    long n = 0;
    Rat a = 0, b = 0;
    LocalSystemData ls;
    long r = 1;
    int shift = 0;

    static SheafObject line_bundle(long n, const Rat& a, const Rat& b,
                                   LocalSystemData ls = LocalSystemData::trivial());
    static SheafObject torsion(const Rat& a, const Rat& b,
                               LocalSystemData ls = LocalSystemData::trivial());
    static SheafObject pushforward(long r, long n, const Rat& a, const Rat& b,
                                   LocalSystemData ls = LocalSystemData::trivial());

    void validate() const;
    SheafObject shifted(int k) const;

    bool is_bundle() const { return kind != SheafKind::Torsion; }
    long sheaf_rank() const;
    long sheaf_degree() const;
    Rat slope() const;  // degree/rank for bundles
};

/// dim Ext^k(E0, E1) for k in {0, 1}; 0 for any other k. Serre duality gives
/// the k = 1 case as dim Hom(E1, E0).
long hom_dim(const SheafObject& e0, const SheafObject& e1, int k);

/// Theta basis of Hom(E0, E1) for line bundles with n1 > n0 and scalar
/// trivial systems: theta_basis_section(n1-n0, k, a01, b01) with
/// x01 = (x1 - x0)/(n1 - n0) componentwise.
std::vector<FourierQSeries> hom_basis(const SheafObject& e0, const SheafObject& e1, const Rat& cutoff);

struct StructureConstants {
    std::vector<QSeries> coords;  // over the canonical target basis
    double residual = 0.0;
};

/// Composition Hom(E1,E2) x Hom(E0,E1) -> Hom(E0,E2) on theta basis elements
/// (section multiplication + coset expansion). Scope: scalar trivial systems,
/// strictly increasing degrees.
StructureConstants compose_basis_B(const SheafObject& e0, const SheafObject& e1,
                                   const SheafObject& e2, long k1, long k2, const Rat& cutoff);
/// Bilinear extension to coefficient vectors u (over Hom(E0,E1) basis) and
/// v (over Hom(E1,E2) basis).
StructureConstants compose_B(const SheafObject& e0, const SheafObject& e1, const SheafObject& e2,
                             const std::vector<Complex>& v, const std::vector<Complex>& u,
                             const Rat& cutoff);

/// Composition with a torsion target: the basis element k1 of Hom(E0,E1)
/// evaluated at the torsion support point (canonical lift z = a tau + b with
/// the stored representatives), times the evaluation functional of Hom(E1,T).
QSeries compose_torsion_basis_B(const SheafObject& e0, const SheafObject& e1,
                                const SheafObject& t, long k1, const Rat& cutoff);
StructureConstants compose_torsion_B(const SheafObject& e0, const SheafObject& e1,
                                     const SheafObject& t, Complex v,
                                     const std::vector<Complex>& u, const Rat& cutoff);

struct SerrePairingB {
    std::vector<std::vector<QSeries>> matrix;  // Hom(E0,E1) x Ext^1(E1,E0)
    bool full_rank = false;
};

/// Yoneda pairing Hom(E0,E1) x Ext^1(E1,E0) -> Ext^1(E0,E0) = C, realized by
/// reflecting E0 across E1 (Ext^1(E1,E0) = Hom(E1, 2E1-E0) via Serre duality)
/// and reading the composite's coefficient on the diagonal target coset.
SerrePairingB serre_pairing_B(const SheafObject& e0, const SheafObject& e1, const Rat& cutoff);

/// Determinant of a small matrix of truncated series (Leibniz expansion).
QSeries series_det(const std::vector<std::vector<QSeries>>& m, const Rat& cutoff);

}  // namespace mtorus
