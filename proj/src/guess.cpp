#include "gevrey/guess.hpp"

#include <stdexcept>

#include "gevrey/linalg.hpp"

namespace gevrey {

namespace {

Rat falling(long m, long j) {
    Rat r(1);
    for (long a = 0; a < j; ++a) r *= Rat(m - a);
    return r;
}

// Canonical kernel element: reduced row echelon of the basis, first row,
// scaled to primitive integers with positive first nonzero entry.
std::vector<Rat> canonical_kernel_vector(std::vector<std::vector<Rat>> basis) {
    rref(basis);
    std::vector<Rat> v = basis.front();
    Int den_lcm(1), num_gcd(0);
    for (const auto& c : v) {
        Int d = c.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    for (const auto& c : v) num_gcd = gcd(num_gcd, Int(c.get_num() * (den_lcm / c.get_den())));
    Rat scale = make_rat(den_lcm, num_gcd);
    for (auto& c : v) c *= scale;
    for (const auto& c : v) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& x : v) x = -x;
        break;
    }
    return v;
}

}  // namespace

std::optional<DiffOp> guess_operator(const FormalSeries& f, const GuessConfig& cfg) {
    if (cfg.max_order < 0 || cfg.max_degree < 0)
        throw std::invalid_argument("guess_operator: negative bounds");
    std::size_t needed = static_cast<std::size_t>((cfg.max_order + 1) * (cfg.max_degree + 1)) +
                         cfg.margin;
    if (cfg.truncation < needed || f.order() < cfg.truncation)
        throw std::invalid_argument("guess_operator: insufficient coefficients");
    long N = static_cast<long>(cfg.truncation);

    for (long rho = 0; rho <= cfg.max_order; ++rho) {
        long last_row = N - rho;  // beyond this, a z^m coefficient of A f is unknown
        if (last_row < 0) break;
        long solve_last = last_row - static_cast<long>(cfg.margin);
        for (long delta = 0; delta <= cfg.max_degree; ++delta) {
            std::size_t cols = static_cast<std::size_t>((rho + 1) * (delta + 1));
            auto entry = [&](long m, long i, long j) -> Rat {
                long src = m - i + j;
                if (src < 0 || src > N) return Rat(0);
                return falling(src, j) * f.coeff(static_cast<std::size_t>(src));
            };
            QMatrix rows;
            for (long m = 0; m <= solve_last; ++m) {
                std::vector<Rat> row(cols);
                for (long j = 0; j <= rho; ++j)
                    for (long i = 0; i <= delta; ++i)
                        row[static_cast<std::size_t>(j * (delta + 1) + i)] = entry(m, i, j);
                rows.push_back(std::move(row));
            }
            auto kernel = kernel_basis(std::move(rows), cols);
            if (kernel.empty()) continue;

            // held-out certification: the kernel must survive the margin rows
            QMatrix held;
            for (long m = solve_last + 1; m <= last_row; ++m) {
                std::vector<Rat> row(kernel.size());
                for (std::size_t k = 0; k < kernel.size(); ++k) {
                    Rat acc(0);
                    for (long j = 0; j <= rho; ++j)
                        for (long i = 0; i <= delta; ++i)
                            acc += entry(m, i, j) *
                                   kernel[k][static_cast<std::size_t>(j * (delta + 1) + i)];
                    row[k] = acc;
                }
                held.push_back(std::move(row));
            }
            auto combo = kernel_basis(std::move(held), kernel.size());
            if (combo.empty()) continue;

            std::vector<std::vector<Rat>> survivors;
            for (const auto& w : combo) {
                std::vector<Rat> v(cols, Rat(0));
                for (std::size_t k = 0; k < kernel.size(); ++k)
                    for (std::size_t c = 0; c < cols; ++c) v[c] += w[k] * kernel[k][c];
                survivors.push_back(std::move(v));
            }
            auto v = canonical_kernel_vector(std::move(survivors));
            DiffOp a;
            for (long j = 0; j <= rho; ++j)
                for (long i = 0; i <= delta; ++i) {
                    const Rat& c = v[static_cast<std::size_t>(j * (delta + 1) + i)];
                    if (c != 0) a = a + DiffOp::monomial(i, j, c);
                }
            if (a.is_zero()) continue;
            return a.canonical();
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Poly>> hermite_pade(const std::vector<FormalSeries>& Z,
                                              std::size_t target_order, long degree_bound) {
    if (Z.empty()) throw std::invalid_argument("hermite_pade: no input series");
    if (degree_bound < 0) throw std::invalid_argument("hermite_pade: negative degree bound");
    std::size_t m = Z.size();
    std::size_t unknowns = m * static_cast<std::size_t>(degree_bound + 1);
    if (unknowns <= target_order)
        throw std::invalid_argument("hermite_pade: inconsistent bounds (need m(D+1) > N)");
    for (const auto& z : Z)
        if (z.order() + 1 < target_order)
            throw std::invalid_argument("hermite_pade: series truncation below target order");

    QMatrix rows;
    for (std::size_t t = 0; t < target_order; ++t) {
        std::vector<Rat> row(unknowns, Rat(0));
        for (std::size_t h = 0; h < m; ++h)
            for (std::size_t k = 0; k <= static_cast<std::size_t>(degree_bound); ++k) {
                if (k > t) continue;
                row[h * (degree_bound + 1) + k] = Z[h].coeff(t - k);
            }
        rows.push_back(std::move(row));
    }
    auto kernel = kernel_basis(std::move(rows), unknowns);
    if (kernel.empty()) return std::nullopt;
    auto v = canonical_kernel_vector(std::move(kernel));
    std::vector<Poly> out;
    for (std::size_t h = 0; h < m; ++h) {
        std::vector<Rat> coeffs(v.begin() + static_cast<long>(h * (degree_bound + 1)),
                                v.begin() + static_cast<long>((h + 1) * (degree_bound + 1)));
        out.emplace_back(std::move(coeffs));
    }
    return out;
}

std::optional<RationalReconstruction> rational_reconstruct(const FormalSeries& f,
                                                           std::size_t margin) {
    long N = static_cast<long>(f.order());
    // highest denominator degree for which 2d+1 rows still leave `margin`
    // held-out agreements
    long d_max = (N - static_cast<long>(margin) - 1) / 2;
    for (long d = 0; d <= d_max; ++d) {
        std::size_t cols = static_cast<std::size_t>(d + 1);
        QMatrix rows;
        for (long t = d + 1; t <= N; ++t) {
            std::vector<Rat> row(cols);
            for (long k = 0; k <= d; ++k)
                row[static_cast<std::size_t>(k)] =
                    (t - k >= 0) ? f.coeff(static_cast<std::size_t>(t - k)) : Rat(0);
            rows.push_back(std::move(row));
        }
        auto kernel = kernel_basis(std::move(rows), cols);
        if (kernel.empty()) continue;
        // prefer a denominator invertible at the origin
        std::optional<std::vector<Rat>> q_opt;
        for (const auto& v : kernel) {
            if (v[0] != 0) {
                q_opt = v;
                break;
            }
        }
        if (!q_opt) continue;
        Poly q(*q_opt);
        // numerator = low part of f*q
        std::vector<Rat> p_coeffs(static_cast<std::size_t>(d + 1), Rat(0));
        for (long t = 0; t <= d; ++t) {
            Rat acc(0);
            for (long k = 0; k <= std::min(t, d); ++k)
                acc += q.coeff(static_cast<std::size_t>(k)) *
                       f.coeff(static_cast<std::size_t>(t - k));
            p_coeffs[static_cast<std::size_t>(t)] = acc;
        }
        Poly p(std::move(p_coeffs));
        RationalReconstruction rec{RationalFunction(p, q), std::nullopt, d};
        rec.denominator_degree = rec.fn.den().degree();
        rec.fractions = partial_fractions(rec.fn);
        return rec;
    }
    return std::nullopt;
}

}  // namespace gevrey
