#include "mirror_torus/mirror.hpp"

#include <algorithm>

namespace mtorus {

LagrangianObject mirror_object(const SheafObject& e) {
    e.validate();
    LagrangianObject l;
    switch (e.kind) {
        case SheafKind::Line: {
            l = LagrangianObject::line(1, e.n, {e.a, Rat(e.n - 1) * e.a});
            l.ls.rank = e.ls.rank;
            l.ls.b = rat_frac(e.b);
            l.ls.N = e.ls.N;
            break;
        }
        case SheafKind::Pushforward: {
            // Mirror on the r-fold cover pushed forward along p_r.
            SheafObject inner = SheafObject::line_bundle(e.n, e.a, e.b, e.ls);
            l = pushforward_obj(e.r, mirror_object(inner));
            break;
        }
        case SheafKind::Torsion: {
            l = LagrangianObject::line(0, 1, {rat_frac(-e.a), Rat(0)});
            l.ls.rank = e.ls.rank;
            l.ls.b = rat_frac(-e.b);  // monodromy e^{+2 pi i b} e^N
            l.ls.N = e.ls.N;
            break;
        }
    }
    l.grade_shift += e.shift;
    l.validate();
    return l;
}

NormalizationScalar line_hom_normalization(const SheafObject& e0, const SheafObject& e1) {
    long d = e1.n - e0.n;
    if (e0.kind != SheafKind::Line || e1.kind != SheafKind::Line || d <= 0)
        throw std::invalid_argument("line_hom_normalization: increasing-degree line bundles only");
    Rat a01 = (e1.a - e0.a) / d, b01 = (e1.b - e0.b) / d;
    return {Rat(d) * a01 * a01 / 2, Rat(d) * a01 * b01};
}

NormalizationScalar torsion_hom_normalization(const SheafObject& e0, const SheafObject& t) {
    if (e0.kind != SheafKind::Line || t.kind != SheafKind::Torsion)
        throw std::invalid_argument("torsion_hom_normalization: line source and torsion target");
    const Rat &at = t.a, &bt = t.b;
    Rat q_exp = -(Rat(e0.n) * at * at + 2 * e0.a * at) / 2;
    Rat turns = -(at * e0.b + e0.a * bt + Rat(e0.n) * at * bt);
    return {q_exp, turns};
}

MorphismBasis mirror_morphism_basis(const SheafObject& e0, const SheafObject& e1) {
    if (e0.kind == SheafKind::Line && e1.kind == SheafKind::Torsion) {
        // Single intersection of the slope-n line with the meridian at -a_t.
        LagrangianObject l0 = mirror_object(e0), lt = mirror_object(e1);
        std::vector<RatPoint> pts = intersections(l0, lt);
        if (pts.size() != 1) throw std::logic_error("mirror_morphism_basis: torsion pair not single-point");
        return {pts, torsion_hom_normalization(e0, e1)};
    }
    long d = e1.n - e0.n;
    if (e0.kind != SheafKind::Line || e1.kind != SheafKind::Line || d <= 0)
        throw std::invalid_argument("mirror_morphism_basis: increasing-degree line bundles only");
    MorphismBasis out;
    for (long k = 0; k < d; ++k) {
        Rat x = (e1.a - e0.a + k) / d;
        Rat y = (Rat(e0.n) * e1.a - Rat(e1.n) * e0.a + Rat(e0.n) * k) / d;
        out.points.push_back({rat_frac(x), rat_frac(y)});
    }
    // The printed formula must reproduce the intersection set exactly.
    std::vector<RatPoint> expect = intersections(mirror_object(e0), mirror_object(e1));
    std::vector<RatPoint> got = out.points;
    std::sort(got.begin(), got.end());
    if (got != expect)
        throw std::logic_error("mirror_morphism_basis: formula image differs from intersections");
    out.scale = line_hom_normalization(e0, e1);
    return out;
}

namespace {

QSeries apply_scale(const QSeries& s, const NormalizationScalar& n) {
    return s.shifted(n.q_exp).scaled(unit_phase(n.phase_turns));
}

struct ElementCompare {
    double max_dev = 0.0;
    std::optional<Rat> first_mismatch;
    Complex at_a, at_b;
};

ElementCompare compare_series(const QSeries& a, const QSeries& b, const Rat& upto, double tol) {
    ElementCompare out;
    std::vector<Rat> exps;
    for (const QTerm& t : a.terms())
        if (t.exp <= upto) exps.push_back(t.exp);
    for (const QTerm& t : b.terms())
        if (t.exp <= upto) exps.push_back(t.exp);
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    for (const Rat& e : exps) {
        double dev = std::abs(a.coeff_at(e) - b.coeff_at(e));
        out.max_dev = std::max(out.max_dev, dev);
        if (dev >= tol && !out.first_mismatch) {
            out.first_mismatch = e;
            out.at_a = a.coeff_at(e);
            out.at_b = b.coeff_at(e);
        }
    }
    return out;
}

/// Constant c with a = c * b coefficientwise, if one exists within tolerance.
std::optional<Complex> constant_ratio(const QSeries& a, const QSeries& b, const Rat& upto, double tol) {
    Complex c{0.0, 0.0};
    bool have = false;
    for (const QTerm& t : b.terms()) {
        if (t.exp > upto) break;
        if (std::abs(t.coeff) < 1e-6) continue;
        c = a.coeff_at(t.exp) / t.coeff;
        have = true;
        break;
    }
    if (!have) return a.max_abs_coeff() < tol ? std::optional<Complex>{Complex{0.0, 0.0}} : std::nullopt;
    ElementCompare cmp = compare_series(a, b.scaled(c), upto, tol);
    if (cmp.max_dev < tol) return c;
    return std::nullopt;
}

}  // namespace

MirrorReport verify_functoriality(const SheafObject& e0, const SheafObject& e1,
                                  const SheafObject& e2, const Rat& cutoff, double tolerance,
                                  bool flip_orientation) {
    MirrorReport rep;
    rep.cutoff = cutoff;
    rep.tolerance = tolerance;
    if (tolerance <= 0) throw std::invalid_argument("verify_functoriality: tolerance must be positive");

    bool torsion_target = e2.kind == SheafKind::Torsion;
    if (e0.kind != SheafKind::Line || e1.kind != SheafKind::Line ||
        (!torsion_target && e2.kind != SheafKind::Line))
        throw std::invalid_argument(
            "verify_functoriality: scope is line-bundle triples or a torsion target");
    for (const SheafObject* e : {&e0, &e1, &e2})
        if (!e->ls.is_scalar_trivial() || e->shift != 0)
            throw std::invalid_argument("verify_functoriality: scalar trivial systems at shift 0 only");
    if (e1.n <= e0.n || (!torsion_target && e2.n <= e1.n))
        throw std::invalid_argument("verify_functoriality: strictly increasing degrees required");

    LagrangianObject l0 = mirror_object(e0), l1 = mirror_object(e1), l2 = mirror_object(e2);
    MorphismBasis m01 = mirror_morphism_basis(e0, e1);
    MorphismBasis m12 = mirror_morphism_basis(e1, e2);
    MorphismBasis m02 = mirror_morphism_basis(e0, e2);

    NormalizationScalar lhs_scale{m01.scale.q_exp + m12.scale.q_exp,
                                  m01.scale.phase_turns + m12.scale.phase_turns};
    // Enumerate far enough that both scaled sides are complete to the cutoff.
    Rat a_cut = cutoff - std::min(Rat(0), lhs_scale.q_exp) + 1;
    Rat b_cut = cutoff - std::min(Rat(0), m02.scale.q_exp) + 1;

    long d01 = e1.n - e0.n;
    long d12 = torsion_target ? 1 : e2.n - e1.n;
    long d02 = torsion_target ? 1 : e2.n - e0.n;
    for (long k1 = 0; k1 < d01; ++k1) {
        for (long k2 = 0; k2 < d12; ++k2) {
            std::vector<QSeries> b_coords;
            double residual = 0.0;
            if (torsion_target) {
                b_coords.push_back(compose_torsion_basis_B(e0, e1, e2, k1, b_cut));
            } else {
                StructureConstants sc = compose_basis_B(e0, e1, e2, k1, k2, b_cut);
                b_coords = std::move(sc.coords);
                residual = sc.residual;
            }
            if (residual > 1e-9) {
                rep.verdict = MirrorVerdict::Fail;
                rep.note = "theta expansion residual above threshold";
                return rep;
            }
            for (long k = 0; k < d02; ++k) {
                MirrorElementReport el;
                el.k1 = k1;
                el.k2 = k2;
                el.k = k;
                QSeries a_bare = compose_A_basis(l0, l1, l2, m01.points[k1], m12.points[k2],
                                                 m02.points[k], a_cut, flip_orientation);
                el.a_side = apply_scale(a_bare, lhs_scale).truncated(cutoff);
                el.b_side = apply_scale(b_coords[k], m02.scale).truncated(cutoff);
                if (el.a_side.cutoff() < cutoff || el.b_side.cutoff() < cutoff)
                    throw std::logic_error("verify_functoriality: comparison window too small");
                ElementCompare cmp = compare_series(el.a_side, el.b_side, cutoff, tolerance);
                el.max_dev = cmp.max_dev;
                el.compared_upto = cutoff;
                rep.max_dev = std::max(rep.max_dev, cmp.max_dev);
                if (cmp.first_mismatch && !rep.first_mismatch_exp) {
                    rep.first_mismatch_exp = cmp.first_mismatch;
                    rep.first_mismatch_a = cmp.at_a;
                    rep.first_mismatch_b = cmp.at_b;
                }
                rep.elements.push_back(std::move(el));
            }
        }
    }

    if (rep.max_dev < tolerance) {
        rep.verdict = MirrorVerdict::Pass;
        return rep;
    }
    // Raw mismatch: check for a consistent nonzero rescaling per target element.
    bool all_const = true;
    std::vector<Complex> ratios;
    for (const MirrorElementReport& el : rep.elements) {
        auto c = constant_ratio(el.a_side, el.b_side, cutoff, tolerance);
        if (!c) {
            all_const = false;
            break;
        }
        ratios.push_back(*c);
    }
    if (all_const) {
        rep.verdict = MirrorVerdict::NormalizationDiscrepancy;
        rep.ratio_constants = std::move(ratios);
        rep.note = "per-element constant rescaling explains the mismatch";
    } else {
        rep.verdict = MirrorVerdict::Fail;
    }
    return rep;
}

bool verify_dimensions(const SheafObject& e0, const SheafObject& e1) {
    LagrangianObject l0 = mirror_object(e0), l1 = mirror_object(e1);
    for (int k = -1; k <= 2; ++k) {
        long b_side = hom_dim(e0, e1, k);
        long a_side = hom_space_dim(l0, shift_A(l1, k));
        if (b_side != a_side) return false;
    }
    return true;
}

}  // namespace mtorus
