#include "mirror_torus/sheaf.hpp"

#include <algorithm>
#include <numeric>

namespace mtorus {

LocalSystemData LocalSystemData::trivial(int rank) {
    LocalSystemData ls;
    ls.rank = rank;
    ls.N = RatMatrix(rank, rank);
    return ls;
}

void LocalSystemData::validate() const {
    if (rank < 1) throw std::invalid_argument("LocalSystemData: rank must be positive");
    if (N.rows() != rank || N.cols() != rank)
        throw std::invalid_argument("LocalSystemData: N must be rank x rank");
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j <= i; ++j)
            if (N.at(i, j) != 0)
                throw std::invalid_argument("LocalSystemData: N must be strictly upper triangular");
}

RatMatrix LocalSystemData::unipotent() const {
    RatMatrix out = RatMatrix::identity(rank);
    RatMatrix pw = RatMatrix::identity(rank);
    Rat fact = 1;
    for (int j = 1; j < rank; ++j) {
        pw = pw * N;
        fact *= j;
        out = out + pw.scaled(Rat(1) / fact);
    }
    return out;
}

bool LocalSystemData::nilpotent_cyclic() const {
    if (rank == 1) return true;
    return N.rank() == rank - 1;  // one Jordan block
}

std::vector<MonodromyBlock> monodromy_blocks(const LocalSystemData& ls, long cyclic) {
    std::vector<MonodromyBlock> out;
    if (cyclic <= 1) {
        out.push_back({ls.b, ls.N});
    } else {
        for (long j = 0; j < cyclic; ++j) out.push_back({(ls.b + j) / cyclic, ls.N});
    }
    return out;
}

long nilpotent_intertwiner_dim(const RatMatrix& n0, const RatMatrix& n1) {
    // Unknown f is n1.rows x n0.rows; equation N1 f - f N0 = 0, column-major.
    int r0 = n0.rows(), r1 = n1.rows();
    int total = r0 * r1;
    auto var = [&](int i, int j) { return j * r1 + i; };  // f_{i,j}
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < r0; ++j) {
            std::vector<Rat> row(total);
            for (int l = 0; l < r1; ++l)
                if (n1.at(i, l) != 0) row[var(l, j)] += n1.at(i, l);
            for (int l = 0; l < r0; ++l)
                if (n0.at(l, j) != 0) row[var(i, l)] -= n0.at(l, j);
            rows.push_back(std::move(row));
        }
    if (total == 0) return 0;
    return total - RatMatrix::from_rows(rows).rank();
}

long monodromy_hom_dim(const std::vector<MonodromyBlock>& m0, const std::vector<MonodromyBlock>& m1) {
    long dim = 0;
    for (const MonodromyBlock& b0 : m0)
        for (const MonodromyBlock& b1 : m1)
            if (rat_frac(b1.b - b0.b) == 0) dim += nilpotent_intertwiner_dim(b0.N, b1.N);
    return dim;
}

SheafObject SheafObject::line_bundle(long n, const Rat& a, const Rat& b, LocalSystemData ls) {
    SheafObject e;
    e.kind = SheafKind::Line;
    e.n = n;
    e.a = a;
    e.b = b;
    e.ls = std::move(ls);
    e.validate();
    return e;
}

SheafObject SheafObject::torsion(const Rat& a, const Rat& b, LocalSystemData ls) {
    SheafObject e;
    e.kind = SheafKind::Torsion;
    e.a = a;
    e.b = b;
    e.ls = std::move(ls);
    e.validate();
    return e;
}

SheafObject SheafObject::pushforward(long r, long n, const Rat& a, const Rat& b, LocalSystemData ls) {
    SheafObject e;
    e.kind = SheafKind::Pushforward;
    e.r = r;
    e.n = n;
    e.a = a;
    e.b = b;
    e.ls = std::move(ls);
    e.validate();
    return e;
}

void SheafObject::validate() const {
    ls.validate();
    if (ls.b != 0)
        throw std::invalid_argument("SheafObject: the unipotent part carries no phase (ls.b must be 0)");
    switch (kind) {
        case SheafKind::Line:
            if (r != 1) throw std::invalid_argument("SheafObject: line bundle must have r = 1");
            break;
        case SheafKind::Torsion:
            if (r != 1 || n != 0) throw std::invalid_argument("SheafObject: torsion has no degree/isogeny");
            if (!ls.nilpotent_cyclic())
                throw std::invalid_argument("SheafObject: torsion nilpotent must be cyclic");
            break;
        case SheafKind::Pushforward: {
            if (r < 2) throw std::invalid_argument("SheafObject: pushforward needs r >= 2");
            long g = std::gcd(r, n < 0 ? -n : n);
            if (g != 1)
                throw std::invalid_argument(
                    "SheafObject: pushforward requires gcd(r, n) = 1 (indecomposability)");
            break;
        }
    }
}

SheafObject SheafObject::shifted(int k) const {
    SheafObject e = *this;
    e.shift += k;
    return e;
}

long SheafObject::sheaf_rank() const {
    if (kind == SheafKind::Torsion) return 0;
    return (kind == SheafKind::Pushforward ? r : 1) * ls.rank;
}

long SheafObject::sheaf_degree() const {
    if (kind == SheafKind::Torsion) return ls.rank;
    return n * ls.rank;
}

Rat SheafObject::slope() const {
    if (!is_bundle()) throw std::invalid_argument("slope: torsion sheaf");
    return Rat(sheaf_degree(), sheaf_rank());
}

namespace {

bool same_point(const SheafObject& e0, const SheafObject& e1) {
    return rat_frac(e1.a - e0.a) == 0 && rat_frac(e1.b - e0.b) == 0;
}

long hom_dim_zero(const SheafObject& e0, const SheafObject& e1) {
    // Torsion source maps to no bundle and only to torsion at the same point.
    if (e0.kind == SheafKind::Torsion) {
        if (e1.kind != SheafKind::Torsion) return 0;
        if (!same_point(e0, e1)) return 0;
        return nilpotent_intertwiner_dim(e0.ls.N, e1.ls.N);
    }
    // Bundle onto torsion: fibrewise surjection, rank product.
    if (e1.kind == SheafKind::Torsion) return e0.sheaf_rank() * e1.ls.rank;

    Rat mu0 = e0.slope(), mu1 = e1.slope();
    if (mu0 < mu1)
        return e1.sheaf_degree() * e0.sheaf_rank() - e0.sheaf_degree() * e1.sheaf_rank();
    if (mu0 > mu1) return 0;

    // Equal slopes: coprime normal forms force equal (r, n).
    if (e0.r != e1.r || e0.n != e1.n)
        throw std::logic_error("hom_dim: equal slopes with distinct coprime forms");
    if (e0.kind == SheafKind::Line) {
        if (!same_point(e0, e1)) return 0;
        return nilpotent_intertwiner_dim(e0.ls.N, e1.ls.N);
    }
    // Pushforwards with equal (r, n): Hom(pi_* A, pi_* B) = (+)_j Hom(A, t_{j tau}^* B),
    // and translating by j tau moves the inner point by (n j / r, 0).
    long dim = 0;
    for (long j = 0; j < e0.r; ++j) {
        if (rat_frac(e1.a - e0.a + Rat(e0.n * j, e0.r)) == 0 && rat_frac(e1.b - e0.b) == 0)
            dim += nilpotent_intertwiner_dim(e0.ls.N, e1.ls.N);
    }
    return dim;
}

}  // namespace

long hom_dim(const SheafObject& e0, const SheafObject& e1, int k) {
    e0.validate();
    e1.validate();
    if (e0.shift != 0 || e1.shift != 0)
        throw std::invalid_argument("hom_dim: objects must sit at shift 0");
    if (k == 0) return hom_dim_zero(e0, e1);
    if (k == 1) return hom_dim_zero(e1, e0);  // Serre duality
    return 0;
}

namespace {

struct PairData {
    long d;       // degree difference
    Rat a, b;     // x01 components
};

PairData line_pair(const SheafObject& e0, const SheafObject& e1) {
    if (e0.kind != SheafKind::Line || e1.kind != SheafKind::Line)
        throw std::invalid_argument("hom basis: line bundles only");
    if (!e0.ls.is_scalar_trivial() || !e1.ls.is_scalar_trivial())
        throw std::invalid_argument("hom basis: scalar trivial local systems only");
    if (e0.shift != 0 || e1.shift != 0) throw std::invalid_argument("hom basis: shift 0 only");
    long d = e1.n - e0.n;
    if (d <= 0) throw std::invalid_argument("hom basis: degenerate degree difference");
    return {d, (e1.a - e0.a) / d, (e1.b - e0.b) / d};
}

}  // namespace

std::vector<FourierQSeries> hom_basis(const SheafObject& e0, const SheafObject& e1, const Rat& cutoff) {
    PairData p = line_pair(e0, e1);
    std::vector<FourierQSeries> out;
    out.reserve(p.d);
    for (long k = 0; k < p.d; ++k) out.push_back(theta_basis_section(p.d, k, p.a, p.b, cutoff));
    return out;
}

StructureConstants compose_basis_B(const SheafObject& e0, const SheafObject& e1,
                                   const SheafObject& e2, long k1, long k2, const Rat& cutoff) {
    PairData p01 = line_pair(e0, e1);
    PairData p12 = line_pair(e1, e2);
    PairData p02 = line_pair(e0, e2);
    if (k1 < 0 || k1 >= p01.d || k2 < 0 || k2 >= p12.d)
        throw std::invalid_argument("compose_basis_B: basis index out of range");

    for (Rat margin{6}; margin <= 24; margin *= 2) {
        FourierQSeries u = theta_basis_section(p01.d, k1, p01.a, p01.b, cutoff + margin);
        FourierQSeries v = theta_basis_section(p12.d, k2, p12.a, p12.b, cutoff + margin);
        ThetaExpansion exp = expand_in_theta_basis(fq_mul(v, u), p02.d, p02.a, p02.b);
        bool wide_enough = true;
        for (const QSeries& c : exp.coeffs)
            if (c.cutoff() < cutoff) wide_enough = false;
        if (!wide_enough) continue;
        StructureConstants out;
        out.residual = exp.residual;
        for (const QSeries& c : exp.coeffs) out.coords.push_back(c.truncated(cutoff));
        return out;
    }
    throw std::logic_error("compose_basis_B: truncation window did not converge");
}

StructureConstants compose_B(const SheafObject& e0, const SheafObject& e1, const SheafObject& e2,
                             const std::vector<Complex>& v, const std::vector<Complex>& u,
                             const Rat& cutoff) {
    PairData p01 = line_pair(e0, e1);
    PairData p12 = line_pair(e1, e2);
    PairData p02 = line_pair(e0, e2);
    if (static_cast<long>(u.size()) != p01.d || static_cast<long>(v.size()) != p12.d)
        throw std::invalid_argument("compose_B: coefficient vector length mismatch");
    StructureConstants out;
    out.coords.assign(p02.d, QSeries(cutoff));
    for (long k1 = 0; k1 < p01.d; ++k1) {
        if (std::abs(u[k1]) < kDropTolerance) continue;
        for (long k2 = 0; k2 < p12.d; ++k2) {
            if (std::abs(v[k2]) < kDropTolerance) continue;
            StructureConstants basis = compose_basis_B(e0, e1, e2, k1, k2, cutoff);
            out.residual = std::max(out.residual, basis.residual);
            for (long k = 0; k < p02.d; ++k)
                out.coords[k] = q_add(out.coords[k], basis.coords[k].scaled(v[k2] * u[k1]));
        }
    }
    return out;
}

QSeries compose_torsion_basis_B(const SheafObject& e0, const SheafObject& e1,
                                const SheafObject& t, long k1, const Rat& cutoff) {
    PairData p01 = line_pair(e0, e1);
    if (t.kind != SheafKind::Torsion || !t.ls.is_scalar_trivial())
        throw std::invalid_argument("compose_torsion_B: scalar torsion target required");
    if (k1 < 0 || k1 >= p01.d) throw std::invalid_argument("compose_torsion_B: index out of range");
    // Evaluate the theta section at z = a_t tau + b_t: mode n01 c1 picks up
    // q^{n01 c1 a_t} e^{2 pi i n01 c1 b_t}; everything stays exact.
    QSeries out(cutoff);
    Rat ashift = p01.a + t.a;
    Rat d(p01.d);
    auto term_exp = [&](const Rat& c1) { return d * (c1 * c1 / 2 + c1 * ashift); };
    Rat c_center = -ashift;
    long m_center = rat_floor(c_center - Rat(k1, p01.d)).convert_to<long>();
    auto c_of = [&](long m) { return Rat(m) + Rat(k1, p01.d); };
    for (long m = m_center; term_exp(c_of(m)) <= cutoff; --m)
        out.add_term(term_exp(c_of(m)), unit_phase(d * c_of(m) * (p01.b + t.b)));
    for (long m = m_center + 1; term_exp(c_of(m)) <= cutoff; ++m)
        out.add_term(term_exp(c_of(m)), unit_phase(d * c_of(m) * (p01.b + t.b)));
    return out;
}

StructureConstants compose_torsion_B(const SheafObject& e0, const SheafObject& e1,
                                     const SheafObject& t, Complex v,
                                     const std::vector<Complex>& u, const Rat& cutoff) {
    PairData p01 = line_pair(e0, e1);
    if (static_cast<long>(u.size()) != p01.d)
        throw std::invalid_argument("compose_torsion_B: coefficient vector length mismatch");
    StructureConstants out;
    out.coords.assign(1, QSeries(cutoff));
    for (long k1 = 0; k1 < p01.d; ++k1) {
        if (std::abs(u[k1] * v) < kDropTolerance) continue;
        out.coords[0] =
            q_add(out.coords[0], compose_torsion_basis_B(e0, e1, t, k1, cutoff).scaled(v * u[k1]));
    }
    return out;
}

QSeries series_det(const std::vector<std::vector<QSeries>>& m, const Rat& cutoff) {
    size_t n = m.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    QSeries det(cutoff);
    do {
        // Permutation sign by inversion count.
        int inversions = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        QSeries term = QSeries::constant(inversions % 2 == 0 ? 1.0 : -1.0, cutoff);
        for (size_t i = 0; i < n; ++i) term = q_mul(term, m[i][perm[i]]);
        det = q_add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

SerrePairingB serre_pairing_B(const SheafObject& e0, const SheafObject& e1, const Rat& cutoff) {
    PairData p01 = line_pair(e0, e1);
    long d = p01.d;
    if (hom_dim(e0, e1, 0) != hom_dim(e1, e0, 1))
        throw std::invalid_argument("serre_pairing_B: paired space dimensions differ");
    // Reflection of E0 across E1 realizes Ext^1(E1, E0) as Hom(E1, E2').
    SheafObject e2 = SheafObject::line_bundle(2 * e1.n - e0.n, 2 * e1.a - e0.a, 2 * e1.b - e0.b);
    SerrePairingB out;
    out.matrix.assign(d, std::vector<QSeries>(d, QSeries(cutoff)));
    for (long k = 0; k < d; ++k)
        for (long l = 0; l < d; ++l) {
            StructureConstants c = compose_basis_B(e0, e1, e2, k, l, cutoff);
            out.matrix[k][l] = c.coords[k + l];
        }
    QSeries det = series_det(out.matrix, cutoff);
    out.full_rank = det.max_abs_coeff() > 1e-9;
    return out;
}

}  // namespace mtorus
