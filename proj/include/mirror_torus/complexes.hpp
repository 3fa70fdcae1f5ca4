#pragma once

#include "mirror_torus/rat_matrix.hpp"

#include <random>
#include <utility>
#include <vector>

namespace mtorus {

/// Bounded cochain complex of Q-vector spaces on an explicit support window
/// [lo, hi]; every space outside the window is zero. diffs[i] is
/// d^{lo+i}: X^{lo+i} -> X^{lo+i+1} (hi - lo matrices, each dims[i+1] x dims[i]).
struct BoundedComplex {
    int lo = 0;
    int hi = -1;  // empty window by default (zero complex)
    std::vector<int> dims;
    std::vector<RatMatrix> diffs;

    static BoundedComplex zero() { return {}; }
    /// One space of dimension d placed in the given degree.
    static BoundedComplex concentrated(int degree, int d);

    int dim(int n) const { return (n < lo || n > hi) ? 0 : dims[n - lo]; }
    /// d^n as a dim(n+1) x dim(n) matrix (zero-sized outside the window).
    RatMatrix d(int n) const;

    bool window_empty() const { return hi < lo; }
    /// Checks dims/diffs shapes and d^{n+1} d^n = 0; throws on violation.
    void validate() const;
    bool operator==(const BoundedComplex& o) const;
};

struct ChainMap {
    BoundedComplex source;
    BoundedComplex target;
    int lo = 0;  // maps[i] is f^{lo+i}: X^{lo+i} -> Y^{lo+i}
    std::vector<RatMatrix> maps;

    static ChainMap identity(const BoundedComplex& x);
    static ChainMap zero(const BoundedComplex& x, const BoundedComplex& y);

    RatMatrix f(int n) const;
    /// Checks shape consistency and f^{n+1} d_X^n = d_Y^n f^n; throws on violation.
    void validate() const;
};

/// Translated complex: result^k = X^{n+k}, differential (-1)^n d^{n+k}.
BoundedComplex shift(const BoundedComplex& x, int n);
ChainMap shift(const ChainMap& f, int n);

struct Cohomology {
    int dim = 0;
    /// Columns lie in ker(d^n) and span a complement of im(d^{n-1}) there.
    RatMatrix basis;
};
Cohomology cohomology(const BoundedComplex& x, int n);
bool is_acyclic(const BoundedComplex& x);

/// Matrix of H^n(f) in the bases produced by cohomology().
RatMatrix induced_map(const ChainMap& f, int n);

/// C(f)^n = X^{n+1} (+) Y^n with differential [[-d_X^{n+1}, 0], [f^{n+1}, d_Y^n]].
BoundedComplex cone(const ChainMap& f);
/// Z(f)^n = X^n (+) X^{n+1} (+) Y^n with the three-block differential.
BoundedComplex cylinder(const ChainMap& f);
/// Inclusion Y -> C(f).
ChainMap cone_inclusion(const ChainMap& f);
/// Projection C(f) -> X[1].
ChainMap cone_projection(const ChainMap& f);
/// Projection Z(f) -> Y, (x, x', y) -> f(x) + y.
ChainMap cylinder_projection(const ChainMap& f);

bool is_quasi_iso(const ChainMap& f);

struct HomotopyWitness {
    bool null_homotopic = false;
    int lo = 0;  // k[i] is k^{lo+i}: X^{lo+i} -> Y^{lo+i-1}
    std::vector<RatMatrix> k;

    RatMatrix kmap(int n) const;
};
/// Solves f^n = k^{n+1} d^n + d^{n-1} k^n exactly; the witness satisfies the
/// identity on the whole window when it exists.
HomotopyWitness is_null_homotopic(const ChainMap& f);

/// Verifies im = ker at every slot of
/// H^n(X) -> H^n(Y) -> H^n(C(f)) -> H^{n+1}(X) over the full support window.
bool les_check(const ChainMap& f);

struct Splitting {
    std::vector<std::pair<int, int>> summands;  // (degree, dimension), nonzero only
    ChainMap witness;                           // X -> (+) H^n(X)[-n], a quasi-iso
};
Splitting split_complex(const BoundedComplex& x);

/// Random complex with dims <= max_dim on a window of length <= max_len,
/// entries drawn in {-2..2} and projected onto d.d = 0.
BoundedComplex random_complex(std::mt19937_64& rng, int max_dim = 5, int max_len = 4);
/// Random chain map X -> Y obtained as a random integer combination of a basis
/// of the exact solution space of the commutation constraints.
ChainMap random_chain_map(std::mt19937_64& rng, const BoundedComplex& x, const BoundedComplex& y);
ChainMap random_chain_map(std::mt19937_64& rng, int max_dim = 5, int max_len = 4);

}  // namespace mtorus
