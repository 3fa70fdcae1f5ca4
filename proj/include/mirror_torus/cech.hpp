#pragma once

#include "mirror_torus/complexes.hpp"

#include <map>

namespace mtorus {

/// Finite model of a cover: section-space dimensions per ordered index tuple
/// (1-based, strictly increasing) and restriction matrices toward larger
/// tuples, keyed by (tuple, omitted position). Absent tuples have dimension 0.
struct CoverModel {
    int index_count = 0;
    std::map<std::vector<int>, int> sections;
    /// restrictions[{T, k}]: F(U_{T minus position k}) -> F(U_T),
    /// a dim(T) x dim(T minus k) matrix.
    std::map<std::pair<std::vector<int>, int>, RatMatrix> restrictions;

    int section_dim(const std::vector<int>& tuple) const;
    RatMatrix restriction(const std::vector<int>& tuple, int omit) const;
    /// Shape checks plus pairwise compatibility of double refinements.
    void validate() const;
};

/// Ordered list of the (n+1)-tuples with nonzero section space, lexicographic.
std::vector<std::vector<int>> cech_tuples(const CoverModel& m, int n);

/// Degree-n space = product over (n+1)-tuples; differential = alternating sum
/// of restrictions. Throws if the assembled differential fails d.d = 0.
BoundedComplex cech_complex(const CoverModel& m);
int cech_cohomology(const CoverModel& m, int n);

namespace detail {
/// Test hook: flip_alternation replaces (-1)^k by +1 in the differential.
BoundedComplex cech_complex_signed(const CoverModel& m, bool flip_alternation);
}  // namespace detail

/// Circle as two arcs with a two-component overlap (constant sheaf).
CoverModel two_arc_circle_model();
/// Circle as three arcs with single-component pairwise overlaps.
CoverModel three_arc_circle_model();
/// One set covering everything, sections of the given dimension.
CoverModel single_set_model(int dim);

}  // namespace mtorus
