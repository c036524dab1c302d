#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/qarith.hpp"
#include "gevrey/ratfunc.hpp"
#include "gevrey/series.hpp"
#include "gevrey/weyl.hpp"

namespace gevrey {

// Pure tail in 1/z: coefficient n multiplies z^{-n-1}, n = 0..order.
class QLaurentSeries {
  public:
    QLaurentSeries() : coeffs_{Rat(0)} {}
    explicit QLaurentSeries(std::vector<Rat> coeffs);
    static QLaurentSeries zero(std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rat& coeff(std::size_t n) const;
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    QLaurentSeries operator+(const QLaurentSeries& o) const;
    QLaurentSeries operator-(const QLaurentSeries& o) const;
    QLaurentSeries operator*(const Rat& c) const;
    QLaurentSeries shift_down() const;  // multiply by 1/z

    bool agrees_with(const QLaurentSeries& o, std::size_t through) const;
    std::string to_string(const std::string& var = "z") const;

  private:
    std::vector<Rat> coeffs_;
};

// sigma_r f(z) = f(r z), delta_r f(z) = (f(rz) - f(z))/((r-1) z).
FormalSeries sigma_apply(const FormalSeries& f, const Rat& ratio);
FormalSeries delta_apply(const FormalSeries& f, const Rat& ratio);
QLaurentSeries sigma_apply(const QLaurentSeries& f, const Rat& ratio);
QLaurentSeries delta_apply(const QLaurentSeries& f, const Rat& ratio);
RationalFunction sigma_apply(const RationalFunction& f, const Rat& ratio);
RationalFunction delta_apply(const RationalFunction& f, const Rat& ratio);

enum class QSeriesKind { Tschakaloff, QExponential, QExponentialProduct };

// T_q = sum q^{-n(n-1)/2} z^n, E_q = sum z^n/n_q!, and E_q rebuilt from its
// infinite product prod_{m>=1} (1 + (q-1) z/q^m). The product route keeps a
// literal partial product and closes the tail with the shifted Euler
// development, so its agreement with the series route is a real check.
FormalSeries q_special_series(QSeriesKind kind, const QContext& ctx, std::size_t trunc);

enum class QLaplaceMode { Sharp, Plus };

// F^# = sum q^{n(n-1)/2} a_n z^{-n-1}; F^+ = sum n_q! a_n z^{-n-1}.
QLaurentSeries q_laplace(const FormalSeries& f, QLaplaceMode mode, const QContext& ctx);

// Exact partial fractions of the transform of beta_0 + sum beta_j K(alpha_j z)
// (K = T_q in sharp mode, E_q in plus mode): beta_0/z + sum beta_j/(z - alpha_j).
PartialFraction q_combination_transform_fractions(const std::vector<Rat>& beta,
                                                  const std::vector<Rat>& alpha);

// Tail solution H of the division relation at infinity:
//   sharp: (1/(qz)) sigma_{1/q}(H) - xi H = F^#
//   plus:  (-1/q) delta_{1/q}(H) - xi H  = F^+
// i.e. the transform of (z - xi)^{-1} F. beta has m+1 entries (beta_0 first),
// alpha has m nonzero pairwise-distinct entries.
QLaurentSeries q_divide_transform(const std::vector<Rat>& beta, const std::vector<Rat>& alpha,
                                  const Rat& xi, const QContext& ctx, QLaplaceMode mode,
                                  std::size_t trunc);

// Linear q-difference operator sum_i c_i(z) sigma^i, all i >= 0, where sigma
// dilates the argument by `ratio`. Coefficients are rational functions since
// the natural division relations carry 1/z factors.
class QDiffOp {
  public:
    explicit QDiffOp(Rat ratio);
    static QDiffOp shift(Rat ratio, long power = 1);  // sigma^power

    const Rat& ratio() const { return ratio_; }
    bool is_zero() const { return coeffs_.empty(); }
    long order() const;
    const std::map<long, RationalFunction>& coefficients() const { return coeffs_; }

    QDiffOp operator+(const QDiffOp& o) const;
    QDiffOp operator-(const QDiffOp& o) const;
    QDiffOp scaled(const RationalFunction& c) const;  // left multiply by c(z)
    // composition: (c sigma^i)(d sigma^j) = c * d(r^i z) sigma^{i+j}
    QDiffOp compose(const QDiffOp& o) const;

    std::string to_string() const;

  private:
    void set(long i, RationalFunction c);
    Rat ratio_;
    std::map<long, RationalFunction> coeffs_;
};

// Slopes at infinity from the upper hull of (i, deg c_i), reported in the
// |dilation| > 1 orientation (slopes negate when |ratio| < 1). A coefficient
// with a pole marks the operator as the reduced form of an inhomogeneous
// equation with rational right-hand side; the minimal homogenization
// contributes one slope-0 edge, matching the classical second-order reading
// of the division relation.
NewtonPolygon qdiff_newton_polygon(const QDiffOp& a);

// ((1/q) delta_{1/q})^n applied to 1/(z - alpha):
// (-1)^n n_q! / ((z-alpha)(z-alpha q)...(z-alpha q^n)).
RationalFunction iterated_delta_partial_fraction(const Rat& alpha, std::size_t n,
                                                 const QContext& ctx);

// Solvability of 1/(z-alpha) = ((-1/q) delta_{1/q} - xi)(sum gamma_n/(z - alpha q^n))
// over the window n in [-M, N]. Solvable exactly when alpha xi (1-q) = q^m
// for an integer m in [1, M]; gamma is then supported on [-m, -1].
struct Lemma454Result {
    bool solvable = false;
    bool window_limited = false;  // a matching exponent exists beyond the window
    long exponent = 0;            // m with alpha xi (1-q) = q^m, when one was found
    std::map<long, Rat> gamma;    // the solution, when solvable
    bool verified = false;        // re-substitution check of the solution
    Rat obstruction;              // forced nonzero boundary value otherwise
    std::string detail;
};

Lemma454Result lemma454_solve(const Rat& alpha, const Rat& xi, const QContext& ctx, long M, long N);

// Exact check of the bilateral rearrangement
//   sum_{n in Z} c^{n(n+1)/2} xi^n = T_{1/c}(c xi) + xi^{-1} T_{1/c}(c/xi)
// at truncation N, with rational geometric tail bounds; requires |c| < 1.
struct ThetaCheck {
    Rat bilateral;   // partial sum over n in [-N, N]
    Rat two_sided;   // the two truncated T-values
    Rat gap;         // |difference|, exact
    Rat tail_bound;  // bound on everything either side omitted
    bool pass = false;
};

ThetaCheck theta_bilateral_check(const Rat& c, const Rat& xi, std::size_t N);

}  // namespace gevrey
