#include "mirror_torus/json_io.hpp"

namespace mtorus {

Json to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix rat_matrix_from_json(const Json& j) {
    std::vector<std::vector<Rat>> rows;
    for (const Json& row : j) {
        std::vector<Rat> r;
        for (const Json& e : row) r.push_back(rat_parse(e.get<std::string>()));
        rows.push_back(std::move(r));
    }
    return RatMatrix::from_rows(rows);
}

namespace {

/// Shape-preserving matrix parse: falls back to the given dimensions when the
/// row list cannot carry them (zero rows or columns).
RatMatrix matrix_from_json_shaped(const Json& j, int rows, int cols) {
    RatMatrix m = rat_matrix_from_json(j);
    if (m.rows() == rows && m.cols() == cols) return m;
    if (m.rows() == 0 || m.cols() == 0) return RatMatrix(rows, cols);
    throw std::invalid_argument("matrix JSON: shape mismatch");
}

}  // namespace

Json to_json(const BoundedComplex& x) {
    Json j;
    j["lo"] = x.lo;
    j["hi"] = x.hi;
    j["dims"] = x.dims;
    Json diffs = Json::array();
    for (const RatMatrix& d : x.diffs) diffs.push_back(to_json(d));
    j["diffs"] = std::move(diffs);
    return j;
}

BoundedComplex complex_from_json(const Json& j) {
    BoundedComplex x;
    x.lo = j.at("lo").get<int>();
    x.hi = j.at("hi").get<int>();
    x.dims = j.at("dims").get<std::vector<int>>();
    const Json& diffs = j.at("diffs");
    for (int n = x.lo; n < x.hi; ++n)
        x.diffs.push_back(matrix_from_json_shaped(diffs.at(n - x.lo), x.dim(n + 1), x.dim(n)));
    x.validate();
    return x;
}

Json to_json(const ChainMap& f) {
    Json j;
    j["source"] = to_json(f.source);
    j["target"] = to_json(f.target);
    j["lo"] = f.lo;
    Json maps = Json::array();
    for (const RatMatrix& m : f.maps) maps.push_back(to_json(m));
    j["maps"] = std::move(maps);
    return j;
}

ChainMap chain_map_from_json(const Json& j) {
    ChainMap f;
    f.source = complex_from_json(j.at("source"));
    f.target = complex_from_json(j.at("target"));
    f.lo = j.at("lo").get<int>();
    const Json& maps = j.at("maps");
    for (size_t i = 0; i < maps.size(); ++i) {
        int n = f.lo + static_cast<int>(i);
        f.maps.push_back(matrix_from_json_shaped(maps.at(i), f.target.dim(n), f.source.dim(n)));
    }
    f.validate();
    return f;
}

Json to_json(const CoverModel& m) {
    Json j;
    j["index_count"] = m.index_count;
    Json sections = Json::array();
    for (const auto& [tuple, dim] : m.sections) {
        Json s;
        s["tuple"] = tuple;
        s["dim"] = dim;
        sections.push_back(std::move(s));
    }
    j["sections"] = std::move(sections);
    Json restrictions = Json::array();
    for (const auto& [key, mat] : m.restrictions) {
        Json r;
        r["tuple"] = key.first;
        r["omit"] = key.second;
        r["matrix"] = to_json(mat);
        restrictions.push_back(std::move(r));
    }
    j["restrictions"] = std::move(restrictions);
    return j;
}

CoverModel cover_model_from_json(const Json& j) {
    CoverModel m;
    m.index_count = j.at("index_count").get<int>();
    for (const Json& s : j.at("sections"))
        m.sections[s.at("tuple").get<std::vector<int>>()] = s.at("dim").get<int>();
    if (j.contains("restrictions"))
        for (const Json& r : j.at("restrictions")) {
            std::vector<int> tuple = r.at("tuple").get<std::vector<int>>();
            int omit = r.at("omit").get<int>();
            std::vector<int> smaller = tuple;
            smaller.erase(smaller.begin() + omit);
            m.restrictions[{tuple, omit}] = matrix_from_json_shaped(
                r.at("matrix"), m.section_dim(tuple), m.section_dim(smaller));
        }
    m.validate();
    return m;
}

namespace {

Json term_to_json(const QTerm& t) {
    return Json::array({rat_str(t.exp), Json::array({t.coeff.real(), t.coeff.imag()})});
}

}  // namespace

Json to_json(const QSeries& s) {
    Json j;
    Json terms = Json::array();
    for (const QTerm& t : s.terms()) terms.push_back(term_to_json(t));
    j["terms"] = std::move(terms);
    j["cutoff"] = rat_str(s.cutoff());
    return j;
}

Json to_json(const FourierQSeries& s) {
    Json j;
    Json modes = Json::object();
    for (const auto& [r, f] : s.modes()) {
        Json terms = Json::array();
        for (const QTerm& t : f.terms()) terms.push_back(term_to_json(t));
        modes[rat_str(r)] = std::move(terms);
    }
    j["modes"] = std::move(modes);
    j["cutoff"] = rat_str(s.cutoff());
    return j;
}

Json to_json(const SheafObject& e) {
    Json j;
    j["kind"] = e.kind == SheafKind::Line ? "line" : e.kind == SheafKind::Torsion ? "torsion" : "push";
    j["n"] = e.n;
    j["a"] = rat_str(e.a);
    j["b"] = rat_str(e.b);
    j["rank"] = e.ls.rank;
    j["N"] = to_json(e.ls.N);
    j["r"] = e.r;
    j["shift"] = e.shift;
    return j;
}

SheafObject sheaf_object_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    LocalSystemData ls;
    ls.rank = j.value("rank", 1);
    ls.N = j.contains("N") ? matrix_from_json_shaped(j.at("N"), ls.rank, ls.rank)
                           : RatMatrix(ls.rank, ls.rank);
    Rat a = rat_parse(j.value("a", std::string("0")));
    Rat b = rat_parse(j.value("b", std::string("0")));
    SheafObject e;
    if (kind == "line") {
        e = SheafObject::line_bundle(j.value("n", 0L), a, b, ls);
    } else if (kind == "torsion") {
        e = SheafObject::torsion(a, b, ls);
    } else if (kind == "push") {
        e = SheafObject::pushforward(j.value("r", 2L), j.value("n", 0L), a, b, ls);
    } else {
        throw std::invalid_argument("SheafObject JSON: unknown kind '" + kind + "'");
    }
    e.shift = j.value("shift", 0);
    e.validate();
    return e;
}

Json to_json(const LagrangianObject& l) {
    Json j;
    j["dir"] = Json::array({l.px, l.py});
    j["base"] = Json::array({rat_str(l.base[0]), rat_str(l.base[1])});
    j["grade_shift"] = l.grade_shift;
    j["rank"] = l.ls.rank;
    j["b"] = rat_str(l.ls.b);
    j["N"] = to_json(l.ls.N);
    if (l.cyclic != 1) j["cyclic"] = l.cyclic;
    return j;
}

LagrangianObject lagrangian_from_json(const Json& j) {
    LagrangianObject l;
    l.px = j.at("dir").at(0).get<long>();
    l.py = j.at("dir").at(1).get<long>();
    l.base = {rat_parse(j.at("base").at(0).get<std::string>()),
              rat_parse(j.at("base").at(1).get<std::string>())};
    l.grade_shift = j.value("grade_shift", 0);
    l.ls.rank = j.value("rank", 1);
    l.ls.b = rat_parse(j.value("b", std::string("0")));
    l.ls.N = j.contains("N") ? matrix_from_json_shaped(j.at("N"), l.ls.rank, l.ls.rank)
                             : RatMatrix(l.ls.rank, l.ls.rank);
    l.cyclic = j.value("cyclic", 1L);
    l.canonicalize();
    l.validate();
    return l;
}

Json to_json(const MirrorReport& r, const SheafObject& e0, const SheafObject& e1,
             const SheafObject& e2) {
    Json j;
    j["triple"] = Json::array({to_json(e0), to_json(e1), to_json(e2)});
    j["cutoff"] = rat_str(r.cutoff);
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.verdict == MirrorVerdict::Pass ? "pass"
                   : r.verdict == MirrorVerdict::NormalizationDiscrepancy ? "normalization-discrepancy"
                                                                          : "fail";
    j["max_deviation"] = r.max_dev;
    Json els = Json::array();
    for (const MirrorElementReport& el : r.elements) {
        Json e;
        e["k1"] = el.k1;
        e["k2"] = el.k2;
        e["k"] = el.k;
        e["a_series"] = to_json(el.a_side);
        e["b_series"] = to_json(el.b_side);
        e["max_deviation"] = el.max_dev;
        e["compared_upto"] = rat_str(el.compared_upto);
        els.push_back(std::move(e));
    }
    j["elements"] = std::move(els);
    if (r.first_mismatch_exp) {
        Json m;
        m["exponent"] = rat_str(*r.first_mismatch_exp);
        m["a_coeff"] = Json::array({r.first_mismatch_a.real(), r.first_mismatch_a.imag()});
        m["b_coeff"] = Json::array({r.first_mismatch_b.real(), r.first_mismatch_b.imag()});
        j["first_mismatch"] = std::move(m);
    }
    if (!r.ratio_constants.empty()) {
        Json rc = Json::array();
        for (Complex c : r.ratio_constants) rc.push_back(Json::array({c.real(), c.imag()}));
        j["ratio_constants"] = std::move(rc);
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

}  // namespace mtorus
