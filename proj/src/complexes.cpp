#include "mirror_torus/complexes.hpp"

#include <algorithm>

namespace mtorus {

BoundedComplex BoundedComplex::concentrated(int degree, int d) {
    BoundedComplex x;
    x.lo = x.hi = degree;
    x.dims = {d};
    return x;
}

RatMatrix BoundedComplex::d(int n) const {
    if (n < lo || n >= hi) return RatMatrix(dim(n + 1), dim(n));
    return diffs[n - lo];
}

void BoundedComplex::validate() const {
    if (window_empty()) {
        if (!dims.empty() || !diffs.empty()) throw std::invalid_argument("complex: empty window with data");
        return;
    }
    if (static_cast<int>(dims.size()) != hi - lo + 1) throw std::invalid_argument("complex: dims size");
    if (static_cast<int>(diffs.size()) != hi - lo) throw std::invalid_argument("complex: diffs size");
    for (int n = lo; n < hi; ++n) {
        const RatMatrix& m = diffs[n - lo];
        if (m.rows() != dim(n + 1) || m.cols() != dim(n))
            throw std::invalid_argument("complex: differential shape");
    }
    for (int n = lo; n + 1 < hi; ++n)
        if (!(d(n + 1) * d(n)).is_zero()) throw std::invalid_argument("complex: d.d != 0");
}

bool BoundedComplex::operator==(const BoundedComplex& o) const {
    int a = std::min(lo, o.lo), b = std::max(hi, o.hi);
    for (int n = a; n <= b; ++n) {
        if (dim(n) != o.dim(n)) return false;
        if (n < b && !(d(n) == o.d(n))) return false;
    }
    return true;
}

ChainMap ChainMap::identity(const BoundedComplex& x) {
    ChainMap f;
    f.source = f.target = x;
    f.lo = x.lo;
    for (int n = x.lo; n <= x.hi; ++n) f.maps.push_back(RatMatrix::identity(x.dim(n)));
    return f;
}

ChainMap ChainMap::zero(const BoundedComplex& x, const BoundedComplex& y) {
    ChainMap f;
    f.source = x;
    f.target = y;
    f.lo = std::min(x.lo, y.lo);
    for (int n = f.lo; n <= std::max(x.hi, y.hi); ++n)
        f.maps.push_back(RatMatrix(y.dim(n), x.dim(n)));
    return f;
}

RatMatrix ChainMap::f(int n) const {
    int i = n - lo;
    if (i < 0 || i >= static_cast<int>(maps.size())) return RatMatrix(target.dim(n), source.dim(n));
    return maps[i];
}

void ChainMap::validate() const {
    source.validate();
    target.validate();
    int a = std::min(source.lo, target.lo) - 1, b = std::max(source.hi, target.hi) + 1;
    for (int n = a; n <= b; ++n) {
        if (f(n).rows() != target.dim(n) || f(n).cols() != source.dim(n))
            throw std::invalid_argument("chain map: component shape");
        if (n < b && !(f(n + 1) * source.d(n) == target.d(n) * f(n)))
            throw std::invalid_argument("chain map: does not commute with differentials");
    }
}

BoundedComplex shift(const BoundedComplex& x, int n) {
    if (x.window_empty()) return x;
    BoundedComplex r;
    r.lo = x.lo - n;
    r.hi = x.hi - n;
    r.dims = x.dims;
    Rat sign = (n % 2 == 0) ? 1 : -1;
    for (const RatMatrix& m : x.diffs) r.diffs.push_back(m.scaled(sign));
    return r;
}

ChainMap shift(const ChainMap& f, int n) {
    ChainMap r;
    r.source = shift(f.source, n);
    r.target = shift(f.target, n);
    r.lo = f.lo - n;
    r.maps = f.maps;
    return r;
}

Cohomology cohomology(const BoundedComplex& x, int n) {
    RatMatrix ker = x.d(n).nullspace();            // dim(n) x k
    RatMatrix im = x.d(n - 1);                     // columns span im(d^{n-1}) after pruning
    std::vector<int> pick = ker.independent_columns_over(im);
    Cohomology h;
    h.basis = ker.columns(pick);
    h.dim = h.basis.cols();
    return h;
}

bool is_acyclic(const BoundedComplex& x) {
    for (int n = x.lo; n <= x.hi; ++n)
        if (cohomology(x, n).dim != 0) return false;
    return true;
}

RatMatrix induced_map(const ChainMap& f, int n) {
    Cohomology hx = cohomology(f.source, n);
    Cohomology hy = cohomology(f.target, n);
    RatMatrix img = f.f(n) * hx.basis;  // columns lie in ker(d_Y^n)
    // Coordinates of img modulo im(d_Y^{n-1}) in the hy basis.
    RatMatrix imY = f.target.d(n - 1);
    RatMatrix sys = hy.basis.hcat(imY);
    RatMatrix out(hy.dim, hx.dim);
    for (int j = 0; j < img.cols(); ++j) {
        RatMatrix col(img.rows(), 1);
        for (int i = 0; i < img.rows(); ++i) col.at(i, 0) = img.at(i, j);
        RatMatrix sol;
        if (!sys.solve(col, sol)) throw std::logic_error("induced_map: image not in kernel");
        for (int i = 0; i < hy.dim; ++i) out.at(i, j) = sol.at(i, 0);
    }
    return out;
}

BoundedComplex cone(const ChainMap& f) {
    f.validate();
    const BoundedComplex& x = f.source;
    const BoundedComplex& y = f.target;
    BoundedComplex c;
    if (x.window_empty() && y.window_empty()) return c;
    c.lo = std::min(x.window_empty() ? y.lo : x.lo - 1, y.window_empty() ? x.lo - 1 : y.lo);
    c.hi = std::max(x.window_empty() ? y.hi : x.hi - 1, y.window_empty() ? x.hi - 1 : y.hi);
    for (int n = c.lo; n <= c.hi; ++n) c.dims.push_back(x.dim(n + 1) + y.dim(n));
    for (int n = c.lo; n < c.hi; ++n) {
        RatMatrix m(c.dims[n + 1 - c.lo], c.dims[n - c.lo]);
        m.set_block(0, 0, -x.d(n + 1));
        m.set_block(x.dim(n + 2), 0, f.f(n + 1));
        m.set_block(x.dim(n + 2), x.dim(n + 1), y.d(n));
        c.diffs.push_back(std::move(m));
    }
    c.validate();
    return c;
}

BoundedComplex cylinder(const ChainMap& f) {
    f.validate();
    const BoundedComplex& x = f.source;
    const BoundedComplex& y = f.target;
    BoundedComplex z;
    if (x.window_empty() && y.window_empty()) return z;
    BoundedComplex c = cone(f);
    z.lo = std::min(x.window_empty() ? c.lo : x.lo, c.window_empty() ? x.lo : c.lo);
    z.hi = std::max(x.window_empty() ? c.hi : x.hi, c.window_empty() ? x.hi : c.hi);
    for (int n = z.lo; n <= z.hi; ++n) z.dims.push_back(x.dim(n) + x.dim(n + 1) + y.dim(n));
    for (int n = z.lo; n < z.hi; ++n) {
        RatMatrix m(z.dims[n + 1 - z.lo], z.dims[n - z.lo]);
        int r1 = x.dim(n + 1), r2 = x.dim(n + 2);
        m.set_block(0, 0, x.d(n));
        m.set_block(0, x.dim(n), -RatMatrix::identity(r1));
        m.set_block(r1, x.dim(n), -x.d(n + 1));
        m.set_block(r1 + r2, x.dim(n), f.f(n + 1));
        m.set_block(r1 + r2, x.dim(n) + x.dim(n + 1), y.d(n));
        z.diffs.push_back(std::move(m));
    }
    z.validate();
    return z;
}

ChainMap cone_inclusion(const ChainMap& f) {
    BoundedComplex c = cone(f);
    ChainMap i2;
    i2.source = f.target;
    i2.target = c;
    i2.lo = c.lo;
    for (int n = c.lo; n <= c.hi; ++n) {
        RatMatrix m(c.dim(n), f.target.dim(n));
        m.set_block(f.source.dim(n + 1), 0, RatMatrix::identity(f.target.dim(n)));
        i2.maps.push_back(std::move(m));
    }
    return i2;
}

ChainMap cone_projection(const ChainMap& f) {
    BoundedComplex c = cone(f);
    ChainMap p1;
    p1.source = c;
    p1.target = shift(f.source, 1);
    p1.lo = c.lo;
    for (int n = c.lo; n <= c.hi; ++n) {
        RatMatrix m(f.source.dim(n + 1), c.dim(n));
        m.set_block(0, 0, RatMatrix::identity(f.source.dim(n + 1)));
        p1.maps.push_back(std::move(m));
    }
    return p1;
}

ChainMap cylinder_projection(const ChainMap& f) {
    BoundedComplex z = cylinder(f);
    ChainMap p3;
    p3.source = z;
    p3.target = f.target;
    p3.lo = z.lo;
    for (int n = z.lo; n <= z.hi; ++n) {
        RatMatrix m(f.target.dim(n), z.dim(n));
        m.set_block(0, 0, f.f(n));
        m.set_block(0, f.source.dim(n) + f.source.dim(n + 1), RatMatrix::identity(f.target.dim(n)));
        p3.maps.push_back(std::move(m));
    }
    return p3;
}

bool is_quasi_iso(const ChainMap& f) {
    int a = std::min(f.source.lo, f.target.lo), b = std::max(f.source.hi, f.target.hi);
    for (int n = a; n <= b; ++n) {
        RatMatrix h = induced_map(f, n);
        if (h.rows() != h.cols() || h.rank() != h.rows()) return false;
    }
    return true;
}

HomotopyWitness is_null_homotopic(const ChainMap& f) {
    const BoundedComplex& x = f.source;
    const BoundedComplex& y = f.target;
    int a = std::min(x.lo, y.lo), b = std::max(x.hi, y.hi) + 1;

    // Unknowns: entries of k^n: X^n -> Y^{n-1} for n in [a, b], column-major per degree.
    std::vector<int> offset(b - a + 2, 0);
    int total = 0;
    auto kvars = [&](int n) { return x.dim(n) * y.dim(n - 1); };
    for (int n = a; n <= b; ++n) {
        offset[n - a] = total;
        total += kvars(n);
    }
    offset[b - a + 1] = total;

    // Equations: f^n = k^{n+1} d^n + d^{n-1} k^n, entrywise for n in [a-1, b].
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    auto var = [&](int n, int row, int col) { return offset[n - a] + col * y.dim(n - 1) + row; };
    for (int n = a - 1; n <= b; ++n) {
        RatMatrix fn = f.f(n), dxn = x.d(n), dyn1 = y.d(n - 1);
        for (int i = 0; i < y.dim(n); ++i)
            for (int j = 0; j < x.dim(n); ++j) {
                std::vector<Rat> row(total);
                // (k^{n+1} d^n)_{ij} = sum_l k^{n+1}_{i,l} d^n_{l,j}
                if (n + 1 >= a && n + 1 <= b)
                    for (int l = 0; l < x.dim(n + 1); ++l)
                        if (dxn.at(l, j) != 0) row[var(n + 1, i, l)] += dxn.at(l, j);
                // (d^{n-1} k^n)_{ij} = sum_l d^{n-1}_{i,l} k^n_{l,j}
                if (n >= a && n <= b)
                    for (int l = 0; l < y.dim(n - 1); ++l)
                        if (dyn1.at(i, l) != 0) row[var(n, l, j)] += dyn1.at(i, l);
                rows.push_back(std::move(row));
                rhs.push_back(fn.at(i, j));
            }
    }

    HomotopyWitness w;
    w.lo = a;
    RatMatrix sys = RatMatrix::from_rows(rows);
    RatMatrix bcol(static_cast<int>(rhs.size()), 1);
    for (int i = 0; i < bcol.rows(); ++i) bcol.at(i, 0) = rhs[i];
    RatMatrix sol;
    if (rows.empty() || sys.solve(bcol, sol)) {
        w.null_homotopic = true;
        for (int n = a; n <= b; ++n) {
            RatMatrix kn(y.dim(n - 1), x.dim(n));
            for (int i = 0; i < kn.rows(); ++i)
                for (int j = 0; j < kn.cols(); ++j)
                    kn.at(i, j) = rows.empty() ? Rat(0) : sol.at(var(n, i, j), 0);
            w.k.push_back(std::move(kn));
        }
    }
    return w;
}

RatMatrix HomotopyWitness::kmap(int n) const {
    int i = n - lo;
    if (i < 0 || i >= static_cast<int>(k.size())) return RatMatrix(0, 0);
    return k[i];
}

namespace {

bool exact_at(const RatMatrix& in, const RatMatrix& out, int middle_dim) {
    if (!(out * in).is_zero()) return false;
    return in.rank() + out.rank() == middle_dim;
}

}  // namespace

bool les_check(const ChainMap& f) {
    ChainMap i2 = cone_inclusion(f);
    ChainMap p1 = cone_projection(f);
    const BoundedComplex& c = i2.target;
    for (int n = c.lo - 1; n <= c.hi + 1; ++n) {
        RatMatrix hf = induced_map(f, n);
        RatMatrix hi2 = induced_map(i2, n);
        RatMatrix hp1 = induced_map(p1, n);       // H^n(C) -> H^{n+1}(X)
        RatMatrix hf1 = induced_map(f, n + 1);
        if (!exact_at(hf, hi2, cohomology(f.target, n).dim)) return false;
        if (!exact_at(hi2, hp1, cohomology(c, n).dim)) return false;
        if (!exact_at(hp1, hf1, cohomology(f.source, n + 1).dim)) return false;
    }
    return true;
}

Splitting split_complex(const BoundedComplex& x) {
    x.validate();
    Splitting s;
    BoundedComplex target;
    if (!x.window_empty()) {
        std::vector<Cohomology> hs;
        for (int n = x.lo; n <= x.hi; ++n) hs.push_back(cohomology(x, n));
        target.lo = x.lo;
        target.hi = x.hi;
        for (int n = x.lo; n <= x.hi; ++n) {
            target.dims.push_back(hs[n - x.lo].dim);
            if (hs[n - x.lo].dim > 0) s.summands.push_back({n, hs[n - x.lo].dim});
            if (n < x.hi) target.diffs.push_back(RatMatrix(hs[n + 1 - x.lo].dim, hs[n - x.lo].dim));
        }
        s.witness.source = x;
        s.witness.target = target;
        s.witness.lo = x.lo;
        for (int n = x.lo; n <= x.hi; ++n) {
            // Complete [im(d^{n-1}) | H-basis] to a basis of X^n by identity columns
            // (column-pivot order breaks ties), then project onto the H coordinates.
            const Cohomology& h = hs[n - x.lo];
            RatMatrix im = x.d(n - 1);
            std::vector<int> im_pick = im.independent_columns_over(RatMatrix(x.dim(n), 0));
            RatMatrix imb = im.columns(im_pick);
            RatMatrix base = imb.hcat(h.basis);
            RatMatrix id = RatMatrix::identity(x.dim(n));
            RatMatrix full = base.hcat(id.columns(id.independent_columns_over(base)));
            // Solve full * coords = e_j for each j, read the H block.
            RatMatrix g(h.dim, x.dim(n));
            for (int j = 0; j < x.dim(n); ++j) {
                RatMatrix e(x.dim(n), 1);
                e.at(j, 0) = 1;
                RatMatrix sol;
                if (!full.solve(e, sol)) throw std::logic_error("split_complex: basis completion failed");
                for (int i = 0; i < h.dim; ++i) g.at(i, j) = sol.at(imb.cols() + i, 0);
            }
            s.witness.maps.push_back(std::move(g));
        }
        s.witness.validate();
    } else {
        s.witness = ChainMap::zero(x, target);
    }
    return s;
}

namespace {

Rat small_entry(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-2, 2);
    return Rat(dist(rng));
}

}  // namespace

BoundedComplex random_complex(std::mt19937_64& rng, int max_dim, int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> lo_dist(-2, 2);
    std::uniform_int_distribution<int> dim_dist(0, max_dim);
    BoundedComplex x;
    x.lo = lo_dist(rng);
    x.hi = x.lo + len_dist(rng) - 1;
    for (int n = x.lo; n <= x.hi; ++n) x.dims.push_back(dim_dist(rng));
    for (int n = x.lo; n < x.hi; ++n) {
        RatMatrix draw(x.dim(n + 1), x.dim(n));
        for (int i = 0; i < draw.rows(); ++i)
            for (int j = 0; j < draw.cols(); ++j) draw.at(i, j) = small_entry(rng);
        if (n > x.lo) {
            // Project so the new differential kills im(d^{n-1}): subtract draw*Q
            // with Q = B (B^T B)^{-1} B^T the exact projector onto the image.
            RatMatrix prev = x.diffs.back();
            std::vector<int> pick = prev.independent_columns_over(RatMatrix(x.dim(n), 0));
            RatMatrix imb = prev.columns(pick);
            if (imb.cols() > 0) {
                RatMatrix gram = imb.transposed() * imb;  // invertible: imb has full column rank
                RatMatrix gram_inv_bt(gram.rows(), imb.rows());
                RatMatrix bt = imb.transposed();
                for (int j = 0; j < imb.rows(); ++j) {
                    RatMatrix col(bt.rows(), 1);
                    for (int i = 0; i < bt.rows(); ++i) col.at(i, 0) = bt.at(i, j);
                    RatMatrix sol;
                    if (!gram.solve(col, sol)) throw std::logic_error("random_complex: gram solve failed");
                    for (int i = 0; i < gram.rows(); ++i) gram_inv_bt.at(i, j) = sol.at(i, 0);
                }
                RatMatrix q = imb * gram_inv_bt;
                draw = draw - draw * q;
            }
        }
        x.diffs.push_back(std::move(draw));
    }
    x.validate();
    return x;
}

ChainMap random_chain_map(std::mt19937_64& rng, const BoundedComplex& x, const BoundedComplex& y) {
    int a = std::min(x.lo, y.lo), b = std::max(x.hi, y.hi);
    std::vector<int> offset(b - a + 2, 0);
    int total = 0;
    for (int n = a; n <= b; ++n) {
        offset[n - a] = total;
        total += x.dim(n) * y.dim(n);
    }
    offset[b - a + 1] = total;
    auto var = [&](int n, int row, int col) { return offset[n - a] + col * y.dim(n) + row; };

    // Homogeneous constraints f^{n+1} d_X^n - d_Y^n f^n = 0.
    std::vector<std::vector<Rat>> rows;
    for (int n = a - 1; n <= b; ++n) {
        RatMatrix dxn = x.d(n), dyn = y.d(n);
        for (int i = 0; i < y.dim(n + 1); ++i)
            for (int j = 0; j < x.dim(n); ++j) {
                std::vector<Rat> row(total);
                if (n + 1 <= b)
                    for (int l = 0; l < x.dim(n + 1); ++l)
                        if (dxn.at(l, j) != 0) row[var(n + 1, i, l)] += dxn.at(l, j);
                if (n >= a)
                    for (int l = 0; l < y.dim(n); ++l)
                        if (dyn.at(i, l) != 0) row[var(n, l, j)] -= dyn.at(i, l);
                rows.push_back(std::move(row));
            }
    }

    RatMatrix basis = total == 0 ? RatMatrix(0, 0)
                                 : (rows.empty() ? RatMatrix::identity(total)
                                                 : RatMatrix::from_rows(rows).nullspace());
    std::vector<Rat> coords(total);
    for (int c = 0; c < basis.cols(); ++c) {
        Rat w = small_entry(rng);
        if (w == 0) continue;
        for (int i = 0; i < total; ++i) coords[i] += w * basis.at(i, c);
    }

    ChainMap f;
    f.source = x;
    f.target = y;
    f.lo = a;
    for (int n = a; n <= b; ++n) {
        RatMatrix fn(y.dim(n), x.dim(n));
        for (int i = 0; i < fn.rows(); ++i)
            for (int j = 0; j < fn.cols(); ++j) fn.at(i, j) = coords[var(n, i, j)];
        f.maps.push_back(std::move(fn));
    }
    f.validate();
    return f;
}

ChainMap random_chain_map(std::mt19937_64& rng, int max_dim, int max_len) {
    BoundedComplex x = random_complex(rng, max_dim, max_len);
    BoundedComplex y = random_complex(rng, max_dim, max_len);
    return random_chain_map(rng, x, y);
}

}  // namespace mtorus
