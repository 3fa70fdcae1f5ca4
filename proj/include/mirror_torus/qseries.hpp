#pragma once

#include "mirror_torus/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtorus {

inline constexpr double kDropTolerance = 1e-12;

struct QTerm {
    Rat exp;
    Complex coeff;
};

/// Truncated series sum c_i q^{e_i} with exact rational exponents, sorted
/// strictly increasing. `cutoff` records the exponent bound up to which the
/// series is complete; arithmetic propagates it so comparisons stay sound.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(Rat cutoff) : cutoff_(std::move(cutoff)) {}

    static QSeries monomial(const Rat& exp, Complex c, const Rat& cutoff);
    static QSeries constant(Complex c, const Rat& cutoff);

    const std::vector<QTerm>& terms() const { return terms_; }
    const Rat& cutoff() const { return cutoff_; }
    bool empty() const { return terms_.empty(); }

    void add_term(const Rat& exp, Complex c);
    Complex coeff_at(const Rat& exp) const;
    std::optional<Rat> min_exp() const;
    double max_abs_coeff() const;

    QSeries truncated(const Rat& new_cutoff) const;
    /// Multiplies by q^{delta} (exact exponent shift; cutoff shifts too).
    QSeries shifted(const Rat& delta) const;
    QSeries scaled(Complex c) const;

    std::string str() const;

private:
    std::vector<QTerm> terms_;
    Rat cutoff_ = 0;
};

QSeries q_add(const QSeries& a, const QSeries& b);
QSeries q_mul(const QSeries& a, const QSeries& b);
QSeries q_scale(const QSeries& a, Complex c);
/// Max |coeff(a) - coeff(b)| over exponents <= upto; throws if either side is
/// not complete that far.
double q_max_abs_diff(const QSeries& a, const QSeries& b, const Rat& upto);

/// Family of q-series indexed by exact rational Fourier modes; represents a
/// function of z as sum over modes r of f_r(q) e^{2 pi i r z}. All mode series
/// share the completeness cutoff.
class FourierQSeries {
public:
    FourierQSeries() = default;
    explicit FourierQSeries(Rat cutoff) : cutoff_(std::move(cutoff)) {}

    const std::map<Rat, QSeries>& modes() const { return modes_; }
    const Rat& cutoff() const { return cutoff_; }

    void add(const Rat& mode, const Rat& exp, Complex c);
    const QSeries* mode(const Rat& r) const;

private:
    std::map<Rat, QSeries> modes_;
    Rat cutoff_ = 0;
};

/// Fourier expansion of t_x^* theta[k/n, 0](n tau, n z) for x = a tau + b:
/// support on modes n m + k, coefficient e^{2 pi i (m + k/n) n b} q^{e(m)}
/// with e(m) = n (m + k/n)^2 / 2 + (m + k/n) n a, truncated at the cutoff.
FourierQSeries theta_basis_section(long n, long k, const Rat& a, const Rat& b, const Rat& cutoff);

/// Smallest exponent e(m) of the section above over all modes (exact).
Rat theta_min_exp(long n, long k, const Rat& a);

FourierQSeries fq_mul(const FourierQSeries& s, const FourierQSeries& t);

struct ThetaExpansion {
    std::vector<QSeries> coeffs;
    double residual = 0.0;
};

/// Writes s = sum_k c_k(q) theta_basis_section(n, k, a, b) by matching the
/// disjoint mode cosets n Z + k; c_k comes from exact division on the lowest
/// basis exponent in the coset and the residual is the max coefficient
/// mismatch across all other modes. Requires integer Fourier support.
ThetaExpansion expand_in_theta_basis(const FourierQSeries& s, long n, const Rat& a, const Rat& b);

/// Value at z = a tau + b as a q-series: sum over modes of f_r(q) q^{r a}
/// e^{2 pi i r b}. Completeness is the conservative min over contributing modes.
QSeries fq_evaluate(const FourierQSeries& s, const Rat& a, const Rat& b);

}  // namespace mtorus
