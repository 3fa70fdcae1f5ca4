#include "mirror_torus/cech.hpp"

#include <algorithm>

namespace mtorus {

int CoverModel::section_dim(const std::vector<int>& tuple) const {
    auto it = sections.find(tuple);
    return it == sections.end() ? 0 : it->second;
}

RatMatrix CoverModel::restriction(const std::vector<int>& tuple, int omit) const {
    std::vector<int> smaller = tuple;
    smaller.erase(smaller.begin() + omit);
    int r = section_dim(tuple), c = section_dim(smaller);
    if (r == 0 || c == 0) return RatMatrix(r, c);
    auto it = restrictions.find({tuple, omit});
    if (it == restrictions.end())
        throw std::invalid_argument("CoverModel: missing restriction matrix");
    if (it->second.rows() != r || it->second.cols() != c)
        throw std::invalid_argument("CoverModel: restriction shape mismatch");
    return it->second;
}

void CoverModel::validate() const {
    if (index_count <= 0) throw std::invalid_argument("CoverModel: index_count must be positive");
    for (const auto& [tuple, dim] : sections) {
        if (dim < 0) throw std::invalid_argument("CoverModel: negative dimension");
        if (tuple.empty() || !std::is_sorted(tuple.begin(), tuple.end()) ||
            std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end() ||
            tuple.front() < 1 || tuple.back() > index_count)
            throw std::invalid_argument("CoverModel: tuple must be strictly increasing in [1, index_count]");
    }
    // Double-refinement compatibility: refining by two positions commutes.
    for (const auto& [tuple, dim] : sections) {
        (void)dim;
        int n = static_cast<int>(tuple.size());
        if (n < 3) continue;
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                std::vector<int> no_k = tuple, no_l = tuple;
                no_k.erase(no_k.begin() + k);
                no_l.erase(no_l.begin() + l);
                // tuple minus positions {k, l}: reached from no_k by omitting l-1, from no_l by omitting k.
                RatMatrix via_k = restriction(tuple, k) * restriction(no_k, l - 1);
                RatMatrix via_l = restriction(tuple, l) * restriction(no_l, k);
                if (!(via_k == via_l))
                    throw std::invalid_argument("CoverModel: incompatible restrictions");
            }
    }
}

std::vector<std::vector<int>> cech_tuples(const CoverModel& m, int n) {
    std::vector<std::vector<int>> out;
    for (const auto& [tuple, dim] : m.sections)
        if (static_cast<int>(tuple.size()) == n + 1 && dim > 0) out.push_back(tuple);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

BoundedComplex cech_complex_signed(const CoverModel& m, bool flip_alternation) {
    m.validate();
    int max_deg = -1;
    for (const auto& [tuple, dim] : m.sections)
        if (dim > 0) max_deg = std::max(max_deg, static_cast<int>(tuple.size()) - 1);
    BoundedComplex c;
    if (max_deg < 0) return c;
    c.lo = 0;
    c.hi = max_deg;

    std::vector<std::vector<std::vector<int>>> tuples(max_deg + 1);
    std::vector<std::vector<int>> offsets(max_deg + 1);
    for (int n = 0; n <= max_deg; ++n) {
        tuples[n] = cech_tuples(m, n);
        int total = 0;
        for (const auto& t : tuples[n]) {
            offsets[n].push_back(total);
            total += m.section_dim(t);
        }
        c.dims.push_back(total);
    }

    for (int n = 0; n < max_deg; ++n) {
        RatMatrix d(c.dims[n + 1], c.dims[n]);
        for (size_t bi = 0; bi < tuples[n + 1].size(); ++bi) {
            const std::vector<int>& big = tuples[n + 1][bi];
            for (int k = 0; k < static_cast<int>(big.size()); ++k) {
                std::vector<int> small = big;
                small.erase(small.begin() + k);
                auto it = std::lower_bound(tuples[n].begin(), tuples[n].end(), small);
                if (it == tuples[n].end() || *it != small) continue;  // dim-0 face
                size_t si = static_cast<size_t>(it - tuples[n].begin());
                Rat sign = (!flip_alternation && k % 2 == 1) ? -1 : 1;
                d.set_block(offsets[n + 1][bi], offsets[n][si],
                            m.restriction(big, k).scaled(sign));
            }
        }
        c.diffs.push_back(std::move(d));
    }
    c.validate();  // rejects inconsistent restriction data via d.d = 0
    return c;
}

}  // namespace detail

BoundedComplex cech_complex(const CoverModel& m) { return detail::cech_complex_signed(m, false); }

int cech_cohomology(const CoverModel& m, int n) {
    if (n < 0) return 0;
    return cohomology(cech_complex(m), n).dim;
}

CoverModel two_arc_circle_model() {
    CoverModel m;
    m.index_count = 2;
    m.sections[{1}] = 1;
    m.sections[{2}] = 1;
    m.sections[{1, 2}] = 2;  // two overlap components
    RatMatrix ones = RatMatrix::from_rows({{Rat(1)}, {Rat(1)}});
    m.restrictions[{{1, 2}, 0}] = ones;  // from U_2
    m.restrictions[{{1, 2}, 1}] = ones;  // from U_1
    return m;
}

CoverModel three_arc_circle_model() {
    CoverModel m;
    m.index_count = 3;
    for (int i = 1; i <= 3; ++i) m.sections[{i}] = 1;
    RatMatrix one = RatMatrix::from_rows({{Rat(1)}});
    for (auto pr : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        std::vector<int> t{pr.first, pr.second};
        m.sections[t] = 1;
        m.restrictions[{t, 0}] = one;
        m.restrictions[{t, 1}] = one;
    }
    return m;
}

CoverModel single_set_model(int dim) {
    CoverModel m;
    m.index_count = 1;
    m.sections[{1}] = dim;
    return m;
}

}  // namespace mtorus
