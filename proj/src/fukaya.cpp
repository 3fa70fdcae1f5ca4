#include "mirror_torus/fukaya.hpp"

#include <algorithm>
#include <numeric>

namespace mtorus {

namespace {

Rat det2(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) { return ax * by - ay * bx; }

RatPoint sub(const RatPoint& p, const RatPoint& q) { return {p[0] - q[0], p[1] - q[1]}; }

RatPoint reduce_point(const RatPoint& p) { return {rat_frac(p[0]), rat_frac(p[1])}; }

bool is_lattice(const RatPoint& p) { return is_integer(p[0]) && is_integer(p[1]); }

/// Intersection of p + t u and q + s v for non-parallel directions.
RatPoint line_intersect(const RatPoint& p, const RatPoint& u, const RatPoint& q, const RatPoint& v) {
    Rat den = det2(u[0], u[1], v[0], v[1]);
    if (den == 0) throw std::invalid_argument("line_intersect: parallel directions");
    RatPoint d = sub(q, p);
    Rat t = det2(d[0], d[1], v[0], v[1]) / den;
    return {p[0] + t * u[0], p[1] + t * u[1]};
}

/// Component of w along dir for w parallel to dir (period units).
Rat along(const RatPoint& w, long px, long py) {
    if (px != 0) return w[0] / px;
    return w[1] / py;
}

/// Integer vector w with px * wy - py * wx = 1 (gcd(px, py) = 1).
std::pair<long, long> transversal_vector(long px, long py) {
    long old_r = px, r = py, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
        std::tie(old_t, t) = std::pair{t, old_t - q * t};
    }
    // old_s * px + old_t * py = old_r = +-1; want det((px,py),(wx,wy)) = 1.
    long sign = old_r > 0 ? 1 : -1;
    long wy = sign * old_s, wx = -sign * old_t;
    if (px * wy - py * wx != 1) throw std::logic_error("transversal_vector: gcd failure");
    return {wx, wy};
}

}  // namespace

LagrangianObject LagrangianObject::line(long px, long py, const RatPoint& base, int grade_shift,
                                        LocalSystemData ls) {
    LagrangianObject l;
    l.px = px;
    l.py = py;
    l.base = base;
    l.grade_shift = grade_shift;
    l.ls = std::move(ls);
    l.canonicalize();
    l.validate();
    return l;
}

void LagrangianObject::canonicalize() {
    long g = std::gcd(px < 0 ? -px : px, py < 0 ? -py : py);
    if (g > 1) {
        px /= g;
        py /= g;
    }
    if (px < 0 || (px == 0 && py < 0)) {
        px = -px;
        py = -py;
    }
    base = reduce_point(base);
}

void LagrangianObject::validate() const {
    if (px == 0 && py == 0) throw std::invalid_argument("LagrangianObject: zero direction");
    long g = std::gcd(px < 0 ? -px : px, py < 0 ? -py : py);
    if (g != 1 || px < 0 || (px == 0 && py != 1))
        throw std::invalid_argument("LagrangianObject: direction not canonical primitive");
    if (cyclic < 1) throw std::invalid_argument("LagrangianObject: cyclic degree must be positive");
    ls.validate();
}

bool LagrangianObject::alpha0_less(const LagrangianObject& o) const {
    if (meridian()) return false;          // 1/2 is the maximum of (-1/2, 1/2]
    if (o.meridian()) return true;
    return Rat(py, px) < Rat(o.py, o.px);  // atan is monotone on slopes
}

bool LagrangianObject::alpha0_equal(const LagrangianObject& o) const {
    return px == o.px && py == o.py;
}

LagrangianObject shift_A(const LagrangianObject& l, int k) {
    LagrangianObject r = l;
    r.grade_shift += k;
    return r;
}

bool same_support(const LagrangianObject& l0, const LagrangianObject& l1) {
    if (!(l0.px == l1.px && l0.py == l1.py)) return false;
    RatPoint d = sub(l1.base, l0.base);
    return is_integer(det2(Rat(l0.px), Rat(l0.py), d[0], d[1]));
}

bool on_support(const LagrangianObject& l, const RatPoint& p) {
    RatPoint d = sub(p, l.base);
    return is_integer(det2(Rat(l.px), Rat(l.py), d[0], d[1]));
}

bool alpha_in_hom_window(const LagrangianObject& l0, const LagrangianObject& l1) {
    int dk = l1.grade_shift - l0.grade_shift;
    if (dk == 0) return !l1.alpha0_less(l0);  // alpha0 diff >= 0
    if (dk == 1) return l1.alpha0_less(l0);   // alpha0 diff < 0
    return false;
}

bool alpha_diff_is(const LagrangianObject& l0, const LagrangianObject& l1, int j) {
    return l0.alpha0_equal(l1) && l1.grade_shift - l0.grade_shift == j;
}

bool alpha_less(const LagrangianObject& l0, const LagrangianObject& l1) {
    if (l0.grade_shift != l1.grade_shift) return l0.grade_shift < l1.grade_shift;
    return l0.alpha0_less(l1);
}

bool positive_triple(const LagrangianObject& l0, const LagrangianObject& l1,
                     const LagrangianObject& l2) {
    return alpha_less(l0, l1) && alpha_less(l1, l2) && alpha_less(l2, shift_A(l0, 1));
}

std::vector<RatPoint> intersections(const LagrangianObject& l0, const LagrangianObject& l1) {
    std::vector<RatPoint> out;
    Rat d = det2(Rat(l0.px), Rat(l0.py), Rat(l1.px), Rat(l1.py));
    if (d == 0) return out;  // parallel: empty (equal supports handled elsewhere)
    long n = rat_num(d < 0 ? -d : d).convert_to<long>();
    RatPoint delta = sub(l1.base, l0.base);
    Rat sigma = det2(delta[0], delta[1], Rat(l1.px), Rat(l1.py));
    for (long j = 0; j < n; ++j) {
        Rat t0 = (sigma + j) / d;
        out.push_back(reduce_point({l0.base[0] + t0 * l0.px, l0.base[1] + t0 * l0.py}));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (static_cast<long>(out.size()) != n) throw std::logic_error("intersections: count mismatch");
    return out;
}

namespace {

/// Rational coordinates of an intertwiner composite over the target basis.
std::vector<Rat> expand_over_reps(const RatMatrix& m, const std::vector<RatMatrix>& reps) {
    if (reps.empty()) {
        if (!m.is_zero()) throw std::logic_error("expand_over_reps: nonzero outside empty span");
        return {};
    }
    int rows = reps[0].rows(), cols = reps[0].cols();
    RatMatrix sys(rows * cols, static_cast<int>(reps.size()));
    RatMatrix rhs(rows * cols, 1);
    for (int c = 0; c < sys.cols(); ++c)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) sys.at(j * rows + i, c) = reps[c].at(i, j);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) rhs.at(j * rows + i, 0) = m.at(i, j);
    RatMatrix sol;
    if (!sys.solve(rhs, sol)) throw std::logic_error("expand_over_reps: not in span");
    std::vector<Rat> out(reps.size());
    for (size_t c = 0; c < reps.size(); ++c) out[c] = sol.at(static_cast<int>(c), 0);
    return out;
}

}  // namespace

FukHom hom_space(const LagrangianObject& l0, const LagrangianObject& l1) {
    l0.validate();
    l1.validate();
    FukHom h;
    if (!same_support(l0, l1)) {
        if (!alpha_in_hom_window(l0, l1)) return h;
        h.points = intersections(l0, l1);
        if (h.points.empty()) return h;  // parallel distinct supports
        h.kind = FukHomCase::Transverse;
        h.block = l0.system_rank() * l1.system_rank();
        h.dim = static_cast<long>(h.points.size()) * h.block;
        return h;
    }
    // Equal supports: only alpha differences 0 and 1 give nonzero spaces.
    bool h0 = alpha_diff_is(l0, l1, 0), h1 = alpha_diff_is(l0, l1, 1);
    if (!h0 && !h1) return h;
    h.kind = h0 ? FukHomCase::EqualSupportH0 : FukHomCase::EqualSupportH1;
    h.dim = monodromy_hom_dim(monodromy_blocks(l0.ls, l0.cyclic), monodromy_blocks(l1.ls, l1.cyclic));
    if (h.dim == 0) return h;
    if (l0.cyclic == 1 && l1.cyclic == 1 && rat_frac(l1.ls.b - l0.ls.b) == 0) {
        RatMatrix u0 = l0.ls.unipotent(), u1 = l1.ls.unipotent();
        int r0 = l0.ls.rank, r1 = l1.ls.rank;
        int total = r0 * r1;
        if (h.kind == FukHomCase::EqualSupportH0) {
            // H^0 = ker(f -> U1 f - f U0).
            auto var = [&](int i, int j) { return j * r1 + i; };
            std::vector<std::vector<Rat>> rows;
            for (int i = 0; i < r1; ++i)
                for (int j = 0; j < r0; ++j) {
                    std::vector<Rat> row(total);
                    for (int l = 0; l < r1; ++l) row[var(l, j)] += u1.at(i, l);
                    for (int l = 0; l < r0; ++l) row[var(i, l)] -= u0.at(l, j);
                    rows.push_back(std::move(row));
                }
            RatMatrix basis = RatMatrix::from_rows(rows).nullspace();
            for (int c = 0; c < basis.cols(); ++c) {
                RatMatrix f(r1, r0);
                for (int i = 0; i < r1; ++i)
                    for (int j = 0; j < r0; ++j) f.at(i, j) = basis.at(var(i, j), c);
                h.reps.push_back(std::move(f));
            }
        } else {
            // H^1 = coker(g -> g - U0 g U1^{-1}); representatives complete the image.
            LocalSystemData inv1;
            inv1.rank = r1;
            inv1.N = -l1.ls.N;
            RatMatrix u1inv = inv1.unipotent();
            RatMatrix im(total, total);
            for (int j = 0; j < r1; ++j)
                for (int i = 0; i < r0; ++i) {
                    RatMatrix g(r0, r1);
                    g.at(i, j) = 1;
                    RatMatrix w = g - u0 * g * u1inv;
                    int col = j * r0 + i;
                    for (int ii = 0; ii < r0; ++ii)
                        for (int jj = 0; jj < r1; ++jj) im.at(jj * r0 + ii, col) = w.at(ii, jj);
                }
            RatMatrix id = RatMatrix::identity(total);
            for (int c : id.independent_columns_over(im)) {
                RatMatrix g(r0, r1);
                g.at(c % r0, c / r0) = 1;
                h.reps.push_back(std::move(g));
            }
        }
        if (static_cast<long>(h.reps.size()) != h.dim)
            throw std::logic_error("hom_space: representative count mismatch");
    }
    return h;
}

long hom_space_dim(const LagrangianObject& l0, const LagrangianObject& l1) {
    return hom_space(l0, l1).dim;
}

std::vector<TriangleContribution> enumerate_triangles(const LagrangianObject& l0,
                                                      const LagrangianObject& l1,
                                                      const LagrangianObject& l2, const RatPoint& x0,
                                                      const RatPoint& x1, const RatPoint& x2,
                                                      const Rat& area_cutoff, bool flip_orientation) {
    if (!positive_triple(l0, l1, l2))
        throw std::invalid_argument("enumerate_triangles: not a transverse positive triple");
    if (!on_support(l0, x0) || !on_support(l1, x0) || !on_support(l1, x1) || !on_support(l2, x1) ||
        !on_support(l0, x2) || !on_support(l2, x2))
        throw std::invalid_argument("enumerate_triangles: marked point off its lines");
    if (l0.system_rank() != 1 || l1.system_rank() != 1 || l2.system_rank() != 1)
        throw std::invalid_argument("enumerate_triangles: rank-1 holonomy scope");

    RatPoint dir0{Rat(l0.px), Rat(l0.py)}, dir1{Rat(l1.px), Rat(l1.py)}, dir2{Rat(l2.px), Rat(l2.py)};
    auto [wx, wy] = transversal_vector(l1.px, l1.py);

    // Lifts: target vertex fixed at x2; line-1 lifts indexed by j.
    const RatPoint& c = x2;
    auto vertex_a = [&](long j) {
        RatPoint b1{l1.base[0] + j * Rat(wx), l1.base[1] + j * Rat(wy)};
        return line_intersect(c, dir0, b1, dir1);
    };
    auto vertex_b = [&](long j) {
        RatPoint b1{l1.base[0] + j * Rat(wx), l1.base[1] + j * Rat(wy)};
        return line_intersect(b1, dir1, c, dir2);
    };
    // Contribution test: the boundary x2 -> x1 -> x0 must run counterclockwise,
    // i.e. det(B - C, A - C) > 0; the B-side composition fixes this convention.
    auto signed_area2 = [&](long j) {
        RatPoint a = vertex_a(j), b = vertex_b(j);
        Rat s = det2(b[0] - c[0], b[1] - c[1], a[0] - c[0], a[1] - c[1]);
        return flip_orientation ? Rat(-s) : s;
    };

    // s(j) is an exact quadratic in j.
    Rat s0 = signed_area2(0), s1 = signed_area2(1), sm1 = signed_area2(-1);
    Rat qa = (s1 + sm1 - 2 * s0) / 2;
    Rat qb = (s1 - sm1) / 2;
    if (qa == 0) throw std::logic_error("enumerate_triangles: degenerate area quadratic");
    long jv = rat_floor(-qb / (2 * qa)).convert_to<long>();

    std::vector<TriangleContribution> out;
    auto try_contribute = [&](long j, const Rat& s) {
        if (s < 0 || s > 2 * area_cutoff) return;
        RatPoint a = vertex_a(j), b = vertex_b(j);
        if (!is_lattice(sub(a, x0)) || !is_lattice(sub(b, x1))) return;  // wrong fibers
        if (s == 0 && !(a == b && b == c)) return;  // collinear non-point configuration
        Rat dt0 = along(sub(a, c), l0.px, l0.py);
        Rat dt1 = along(sub(b, a), l1.px, l1.py);
        Rat dt2 = along(sub(c, b), l2.px, l2.py);
        Rat turns = -(l0.ls.b * dt0 + l1.ls.b * dt1 + l2.ls.b * dt2);
        out.push_back({s / 2, unit_phase(turns)});
    };
    // Scan outward from the vertex of the quadratic; for qa > 0 stop once the
    // window s <= 2*cutoff is exceeded, for qa < 0 once s drops to <= 0
    // (concavity: no further positive values in that direction).
    auto consider = [&](long j) -> bool {
        Rat s = signed_area2(j);
        if (qa > 0 && s > 2 * area_cutoff) return false;
        if (qa < 0 && s <= 0) {
            try_contribute(j, s);
            return false;
        }
        try_contribute(j, s);
        return true;
    };
    for (long j = jv; consider(j); --j) {}
    for (long j = jv + 1; consider(j); ++j) {}
    std::sort(out.begin(), out.end(),
              [](const TriangleContribution& a, const TriangleContribution& b) { return a.area < b.area; });
    return out;
}

QSeries compose_A_basis(const LagrangianObject& l0, const LagrangianObject& l1,
                        const LagrangianObject& l2, const RatPoint& x0, const RatPoint& x1,
                        const RatPoint& x2, const Rat& cutoff, bool flip_orientation) {
    QSeries s(cutoff);
    for (const TriangleContribution& t :
         enumerate_triangles(l0, l1, l2, x0, x1, x2, cutoff, flip_orientation))
        s.add_term(t.area, t.holonomy);
    return s;
}

AStructureConstants compose_A(const LagrangianObject& l0, const LagrangianObject& l1,
                              const LagrangianObject& l2, const std::vector<Complex>& v,
                              const std::vector<Complex>& u, const Rat& cutoff,
                              bool flip_orientation) {
    FukHom h01 = hom_space(l0, l1), h12 = hom_space(l1, l2), h02 = hom_space(l0, l2);
    if (static_cast<long>(u.size()) != h01.dim || static_cast<long>(v.size()) != h12.dim)
        throw std::invalid_argument("compose_A: coefficient vector length mismatch");
    AStructureConstants out;
    out.coords.assign(h02.dim, QSeries(cutoff));
    if (alpha_less(shift_A(l0, 1), l2)) return out;  // alpha2 > alpha0 + 1: zero morphism
    if (alpha_diff_is(l0, l2, 1))
        throw std::invalid_argument("compose_A: alpha2 = alpha0 + 1 is routed through serre_pairing_A");
    if (h01.dim == 0 || h12.dim == 0 || h02.dim == 0) return out;

    if (h01.kind == FukHomCase::Transverse && h12.kind == FukHomCase::Transverse &&
        h02.kind == FukHomCase::Transverse) {
        if (!positive_triple(l0, l1, l2))
            throw std::invalid_argument("compose_A: unsupported transverse configuration");
        for (size_t i0 = 0; i0 < h01.points.size(); ++i0) {
            if (std::abs(u[i0]) < kDropTolerance) continue;
            for (size_t i1 = 0; i1 < h12.points.size(); ++i1) {
                if (std::abs(v[i1]) < kDropTolerance) continue;
                for (size_t i2 = 0; i2 < h02.points.size(); ++i2) {
                    QSeries s = compose_A_basis(l0, l1, l2, h01.points[i0], h12.points[i1],
                                                h02.points[i2], cutoff, flip_orientation);
                    out.coords[i2] = q_add(out.coords[i2], s.scaled(v[i1] * u[i0]));
                }
            }
        }
        return out;
    }
    if (h01.kind == FukHomCase::EqualSupportH0 && h12.kind == FukHomCase::EqualSupportH0 &&
        h02.kind == FukHomCase::EqualSupportH0) {
        // Plain composition of intertwiners, re-expanded in the target basis.
        for (size_t i = 0; i < h01.reps.size(); ++i)
            for (size_t j = 0; j < h12.reps.size(); ++j) {
                Complex w = v[j] * u[i];
                if (std::abs(w) < kDropTolerance) continue;
                std::vector<Rat> coords = expand_over_reps(h12.reps[j] * h01.reps[i], h02.reps);
                for (size_t c = 0; c < coords.size(); ++c)
                    out.coords[c] = q_add(out.coords[c],
                                          QSeries::constant(w * rat_d(coords[c]), cutoff));
            }
        return out;
    }
    // One equal-support pair (rank-1 scalar intertwiners act by the scalar).
    if (h01.kind == FukHomCase::EqualSupportH0 && h12.kind == FukHomCase::Transverse &&
        h02.kind == FukHomCase::Transverse && l0.system_rank() == 1 && l1.system_rank() == 1) {
        if (h12.points != h02.points) throw std::logic_error("compose_A: point sets differ");
        for (long i = 0; i < h02.dim; ++i) out.coords[i] = QSeries::constant(v[i] * u[0], cutoff);
        return out;
    }
    if (h01.kind == FukHomCase::Transverse && h12.kind == FukHomCase::EqualSupportH0 &&
        h02.kind == FukHomCase::Transverse && l1.system_rank() == 1 && l2.system_rank() == 1) {
        if (h01.points != h02.points) throw std::logic_error("compose_A: point sets differ");
        for (long i = 0; i < h02.dim; ++i) out.coords[i] = QSeries::constant(v[0] * u[i], cutoff);
        return out;
    }
    throw std::invalid_argument("compose_A: configuration outside the supported branches");
}

SerrePairingA serre_pairing_A(const LagrangianObject& l0, const LagrangianObject& l1) {
    FukHom left = hom_space(l0, l1);
    FukHom right = hom_space(l1, shift_A(l0, 1));
    SerrePairingA out;
    out.matrix = RatMatrix(static_cast<int>(left.dim), static_cast<int>(right.dim));
    if (left.dim != right.dim) throw std::logic_error("serre_pairing_A: paired dimensions differ");
    if (left.dim == 0) {
        out.full_rank = true;  // empty pairing
        return out;
    }
    if (left.kind == FukHomCase::Transverse && right.kind == FukHomCase::Transverse) {
        if (left.points != right.points) throw std::logic_error("serre_pairing_A: point sets differ");
        int r0 = static_cast<int>(l0.system_rank()), r1 = static_cast<int>(l1.system_rank());
        // Per point, matrix units E_ij pair with E_ji under the trace form.
        for (size_t p = 0; p < left.points.size(); ++p)
            for (int j = 0; j < r0; ++j)
                for (int i = 0; i < r1; ++i) {
                    int row = static_cast<int>(p) * r0 * r1 + j * r1 + i;
                    int col = static_cast<int>(p) * r0 * r1 + i * r0 + j;
                    out.matrix.at(row, col) = 1;
                }
    } else if (left.kind == FukHomCase::EqualSupportH0 && right.kind == FukHomCase::EqualSupportH1 &&
               !left.reps.empty() && !right.reps.empty()) {
        for (int i = 0; i < static_cast<int>(left.reps.size()); ++i)
            for (int j = 0; j < static_cast<int>(right.reps.size()); ++j) {
                RatMatrix prod = right.reps[j] * left.reps[i];  // V0 -> V0
                Rat tr = 0;
                for (int k = 0; k < prod.rows(); ++k) tr += prod.at(k, k);
                out.matrix.at(i, j) = tr;
            }
    } else {
        throw std::invalid_argument("serre_pairing_A: basis-level pairing outside supported scope");
    }
    out.full_rank = out.matrix.rank() == out.matrix.rows();
    return out;
}

LagrangianObject pushforward_obj(long r, const LagrangianObject& l) {
    if (r < 1) throw std::invalid_argument("pushforward_obj: r must be positive");
    l.validate();
    if (r == 1) return l;
    LagrangianObject out = l;
    long ipx = r * l.px, ipy = l.py;
    long g = std::gcd(ipx < 0 ? -ipx : ipx, ipy < 0 ? -ipy : ipy);
    out.px = ipx / g;
    out.py = ipy / g;
    out.base = reduce_point({r * l.base[0], l.base[1]});
    out.cyclic = l.cyclic * g;  // covering degree of p_r on the loop
    out.canonicalize();
    out.validate();
    return out;
}

std::vector<LagrangianObject> pullback_obj(long r, const LagrangianObject& l) {
    if (r < 1) throw std::invalid_argument("pullback_obj: r must be positive");
    l.validate();
    if (l.cyclic != 1)
        throw std::invalid_argument("pullback_obj: cyclic systems not supported as input");
    std::vector<LagrangianObject> out;
    if (r == 1) {
        out.push_back(l);
        return out;
    }
    long comps = std::gcd(l.px, r);  // connected components of the preimage
    long d = r / comps;              // covering degree of each component
    for (long j = 0; j < comps; ++j) {
        LagrangianObject c = l;
        // Preimage direction (p, r q) made primitive equals (p/comps, d q).
        c.px = l.px / comps;
        c.py = l.py * d;
        c.base = reduce_point({(l.base[0] + j) / r, l.base[1]});
        c.ls.b = rat_frac(Rat(d) * l.ls.b);  // monodromy M^d
        c.ls.N = l.ls.N.scaled(Rat(d));
        c.canonicalize();
        c.validate();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace mtorus
