#include "mirror_torus/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mtorus {

QSeries QSeries::monomial(const Rat& exp, Complex c, const Rat& cutoff) {
    QSeries s(cutoff);
    s.add_term(exp, c);
    return s;
}

QSeries QSeries::constant(Complex c, const Rat& cutoff) { return monomial(0, c, cutoff); }

void QSeries::add_term(const Rat& exp, Complex c) {
    if (exp > cutoff_) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const QTerm& t, const Rat& e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == exp) {
        it->coeff += c;
        if (std::abs(it->coeff) < kDropTolerance) terms_.erase(it);
    } else if (std::abs(c) >= kDropTolerance) {
        terms_.insert(it, QTerm{exp, c});
    }
}

Complex QSeries::coeff_at(const Rat& exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const QTerm& t, const Rat& e) { return t.exp < e; });
    if (it != terms_.end() && it->exp == exp) return it->coeff;
    return {0.0, 0.0};
}

std::optional<Rat> QSeries::min_exp() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().exp;
}

double QSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const QTerm& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

QSeries QSeries::truncated(const Rat& new_cutoff) const {
    QSeries s(std::min(cutoff_, new_cutoff));
    for (const QTerm& t : terms_)
        if (t.exp <= s.cutoff_) s.terms_.push_back(t);
    return s;
}

QSeries QSeries::shifted(const Rat& delta) const {
    QSeries s(cutoff_ + delta);
    for (const QTerm& t : terms_) s.terms_.push_back({t.exp + delta, t.coeff});
    return s;
}

QSeries QSeries::scaled(Complex c) const {
    QSeries s(cutoff_);
    if (std::abs(c) < kDropTolerance) return s;
    for (const QTerm& t : terms_) {
        Complex v = t.coeff * c;
        if (std::abs(v) >= kDropTolerance) s.terms_.push_back({t.exp, v});
    }
    return s;
}

std::string QSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const QTerm& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.real();
        if (t.coeff.imag() >= 0) os << "+";
        os << t.coeff.imag() << "i)";
        if (t.exp != 0) os << "*q^{" << rat_str(t.exp) << "}";
    }
    return os.str();
}

QSeries q_add(const QSeries& a, const QSeries& b) {
    QSeries s(std::min(a.cutoff(), b.cutoff()));
    for (const QTerm& t : a.terms()) s.add_term(t.exp, t.coeff);
    for (const QTerm& t : b.terms()) s.add_term(t.exp, t.coeff);
    return s;
}

QSeries q_mul(const QSeries& a, const QSeries& b) {
    // Unknown tails start strictly above the factors' cutoffs, so the product
    // is complete up to min(cut_a + minexp_b, cut_b + minexp_a).
    Rat bound_a = a.min_exp().value_or(a.cutoff());
    Rat bound_b = b.min_exp().value_or(b.cutoff());
    QSeries s(std::min(a.cutoff() + bound_b, b.cutoff() + bound_a));
    for (const QTerm& ta : a.terms())
        for (const QTerm& tb : b.terms()) s.add_term(ta.exp + tb.exp, ta.coeff * tb.coeff);
    return s;
}

QSeries q_scale(const QSeries& a, Complex c) { return a.scaled(c); }

double q_max_abs_diff(const QSeries& a, const QSeries& b, const Rat& upto) {
    if (a.cutoff() < upto || b.cutoff() < upto)
        throw std::invalid_argument("q_max_abs_diff: series not complete up to the requested bound");
    double m = 0.0;
    for (const QTerm& t : a.terms())
        if (t.exp <= upto) m = std::max(m, std::abs(t.coeff - b.coeff_at(t.exp)));
    for (const QTerm& t : b.terms())
        if (t.exp <= upto) m = std::max(m, std::abs(t.coeff - a.coeff_at(t.exp)));
    return m;
}

void FourierQSeries::add(const Rat& mode, const Rat& exp, Complex c) {
    auto it = modes_.find(mode);
    if (it == modes_.end()) {
        QSeries s(cutoff_);
        s.add_term(exp, c);
        if (!s.empty()) modes_.emplace(mode, std::move(s));
    } else {
        it->second.add_term(exp, c);
        if (it->second.empty()) modes_.erase(it);
    }
}

const QSeries* FourierQSeries::mode(const Rat& r) const {
    auto it = modes_.find(r);
    return it == modes_.end() ? nullptr : &it->second;
}

namespace {

// e(m) = n c^2 / 2 + c n a for c = m + k/n.
Rat theta_exp(long n, long k, const Rat& a, long m) {
    Rat c = Rat(m) + Rat(k, n);
    return Rat(n) * c * c / 2 + c * Rat(n) * a;
}

}  // namespace

Rat theta_min_exp(long n, long k, const Rat& a) {
    // Vertex of the parabola at c = -a, i.e. m* = -a - k/n; check both neighbors.
    Rat mstar = -a - Rat(k, n);
    long m0 = rat_floor(mstar).convert_to<long>();
    Rat best = theta_exp(n, k, a, m0);
    best = std::min(best, theta_exp(n, k, a, m0 + 1));
    best = std::min(best, theta_exp(n, k, a, m0 - 1));
    return best;
}

FourierQSeries theta_basis_section(long n, long k, const Rat& a, const Rat& b, const Rat& cutoff) {
    if (n < 1) throw std::invalid_argument("theta_basis_section: n must be positive");
    if (k < 0 || k >= n) throw std::invalid_argument("theta_basis_section: k out of range");
    FourierQSeries s(cutoff);
    Rat mstar = -a - Rat(k, n);
    long m0 = rat_floor(mstar).convert_to<long>();
    for (long m = m0; theta_exp(n, k, a, m) <= cutoff; --m) {
        Rat c = Rat(m) + Rat(k, n);
        s.add(Rat(n * m + k), theta_exp(n, k, a, m), unit_phase(c * Rat(n) * b));
    }
    for (long m = m0 + 1; theta_exp(n, k, a, m) <= cutoff; ++m) {
        Rat c = Rat(m) + Rat(k, n);
        s.add(Rat(n * m + k), theta_exp(n, k, a, m), unit_phase(c * Rat(n) * b));
    }
    return s;
}

FourierQSeries fq_mul(const FourierQSeries& s, const FourierQSeries& t) {
    // Completeness: unknown q-tails of either factor push the product's
    // guaranteed window down to min over cross terms.
    Rat cutoff = std::min(s.cutoff(), t.cutoff());
    std::optional<Rat> min_s, min_t;
    for (const auto& [r, f] : s.modes())
        if (auto e = f.min_exp()) min_s = min_s ? std::min(*min_s, *e) : *e;
    for (const auto& [r, f] : t.modes())
        if (auto e = f.min_exp()) min_t = min_t ? std::min(*min_t, *e) : *e;
    if (min_s && min_t) cutoff = std::min(s.cutoff() + *min_t, t.cutoff() + *min_s);

    FourierQSeries out(cutoff);
    for (const auto& [r1, f1] : s.modes())
        for (const auto& [r2, f2] : t.modes()) {
            QSeries prod = q_mul(f1, f2);
            for (const QTerm& term : prod.terms()) out.add(r1 + r2, term.exp, term.coeff);
        }
    return out;
}

ThetaExpansion expand_in_theta_basis(const FourierQSeries& s, long n, const Rat& a, const Rat& b) {
    if (n < 1) throw std::invalid_argument("expand_in_theta_basis: n must be positive");
    for (const auto& [r, f] : s.modes())
        if (!is_integer(r))
            throw std::invalid_argument("expand_in_theta_basis: Fourier support not integral");

    ThetaExpansion out;
    out.coeffs.reserve(n);
    for (long k = 0; k < n; ++k) {
        FourierQSeries basis = theta_basis_section(n, k, a, b, s.cutoff());
        // Reference mode: the lowest basis exponent in the coset, so the
        // division window is maximal.
        const Rat* ref_mode = nullptr;
        Rat ref_exp;
        for (const auto& [r, f] : basis.modes()) {
            Rat e = f.min_exp().value();
            if (!ref_mode || e < ref_exp) {
                ref_mode = &r;
                ref_exp = e;
            }
        }
        QSeries ck(s.cutoff());
        if (ref_mode) {
            const QSeries* sref = s.mode(*ref_mode);
            if (sref) {
                Complex phase = basis.mode(*ref_mode)->terms().front().coeff;
                ck = sref->shifted(-ref_exp).scaled(Complex(1.0, 0.0) / phase);
            } else {
                ck = QSeries(s.cutoff() - ref_exp);
            }
        }
        // Verify on every other basis mode within the window.
        for (const auto& [r, f] : basis.modes()) {
            const QTerm& mono = f.terms().front();
            QSeries predicted = ck.shifted(mono.exp).scaled(mono.coeff);
            const QSeries* actual = s.mode(r);
            QSeries zero(s.cutoff());
            Rat window = std::min(predicted.cutoff(), s.cutoff());
            out.residual = std::max(
                out.residual, q_max_abs_diff(predicted.truncated(window),
                                             (actual ? *actual : zero).truncated(window), window));
        }
        out.coeffs.push_back(std::move(ck));
    }
    // Any mode of s outside every coset window adds to the residual directly.
    for (const auto& [r, f] : s.modes()) {
        long k = static_cast<long>(((rat_num(r) % n) + n) % n);
        FourierQSeries basis = theta_basis_section(n, k, a, b, s.cutoff());
        if (!basis.mode(r)) out.residual = std::max(out.residual, f.max_abs_coeff());
    }
    return out;
}

QSeries fq_evaluate(const FourierQSeries& s, const Rat& a, const Rat& b) {
    bool any = false;
    Rat window;
    for (const auto& [r, f] : s.modes()) {
        Rat w = f.cutoff() + r * a;
        if (!any || w < window) window = w, any = true;
    }
    QSeries out(any ? window : s.cutoff());
    for (const auto& [r, f] : s.modes()) {
        QSeries term = f.shifted(r * a).scaled(unit_phase(r * b));
        for (const QTerm& t : term.terms()) out.add_term(t.exp, t.coeff);
    }
    return out.truncated(out.cutoff());
}

}  // namespace mtorus
