#include "lgf/cheb.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace lgf {

namespace {
constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);
}  // namespace

ChebCoeffTable build_coeff_table(int N) {
    if (N < 0) throw Error("coefficient table order must be nonnegative");
    std::vector<std::vector<Int>> rows(static_cast<std::size_t>(N) + 1);
    rows[0] = {Int(1)};
    if (N >= 1) rows[1] = {Int(0), Int(1)};
    for (int n = 2; n <= N; ++n) {
        auto& row = rows[static_cast<std::size_t>(n)];
        const auto& prev = rows[static_cast<std::size_t>(n - 1)];
        const auto& prev2 = rows[static_cast<std::size_t>(n - 2)];
        row.resize(static_cast<std::size_t>(n) + 1);
        for (int k = n % 2; k <= n; k += 2) {
            Int v(0);
            if (k >= 1) v = 2 * prev[static_cast<std::size_t>(k - 1)];
            if (k <= n - 2) v -= prev2[static_cast<std::size_t>(k)];
            row[static_cast<std::size_t>(k)] = std::move(v);
        }
    }
    return ChebCoeffTable(std::move(rows));
}

MomentTable moments_from_walks(const WalkTable& walks, const ChebCoeffTable& coeffs) {
    const int N = walks.max_order();
    if (coeffs.max_order() < N)
        throw Error("coefficient table shorter than walk table");
    const int z = walks.lattice.z;

    std::vector<Int> zpow(static_cast<std::size_t>(N) + 1);
    zpow[0] = 1;
    for (int m = 1; m <= N; ++m) zpow[static_cast<std::size_t>(m)] = zpow[static_cast<std::size_t>(m - 1)] * z;

    MomentTable mt{walks.lattice, walks.displacement, {}, {}};
    mt.scaled.resize(static_cast<std::size_t>(N) + 1);
    mt.floats.resize(static_cast<std::size_t>(N) + 1);

    Int term;
    for (int n = 0; n <= N; ++n) {
        Int acc(0);
        const auto& row = coeffs.row(n);
        for (int k = n % 2; k <= n; k += 2) {
            const Int& w = walks.counts[static_cast<std::size_t>(k)];
            if (w == 0) continue;
            // acc += a_nk * z^{n-k} * W_k, all exact
            term = row[static_cast<std::size_t>(k)] * zpow[static_cast<std::size_t>(n - k)];
            mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(), w.get_mpz_t());
        }
        mt.floats[static_cast<std::size_t>(n)] = ratio_as_double(acc, zpow[static_cast<std::size_t>(n)]);
        mt.scaled[static_cast<std::size_t>(n)] = std::move(acc);
    }
    return mt;
}

std::vector<double> power_moments_from_chebyshev(const MomentTable& moments) {
    const int N = moments.max_order();
    std::vector<double> w(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        // x^k = 2^{1-k} sum_{j == k mod 2}' C(k,(k-j)/2) T_j(x), j = 0 term halved
        double acc = 0.0;
        for (int j = k % 2; j <= k; j += 2) {
            const int m = (k - j) / 2;
            double b = std::exp(std::lgamma(k + 1.0) - std::lgamma(m + 1.0) -
                                std::lgamma(k - m + 1.0) + (1.0 - k) * kLn2);
            if (j == 0) b *= 0.5;
            acc += b * moments.floats[static_cast<std::size_t>(j)];
        }
        w[static_cast<std::size_t>(k)] = acc;
    }
    return w;
}

double harmonic_number(int m) {
    if (m < 0) throw Error("harmonic number of negative index");
    static std::vector<double> cache{0.0};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= m)
        cache.push_back(cache.back() + 1.0 / static_cast<double>(cache.size()));
    return cache[static_cast<std::size_t>(m)];
}

double transform_coeff(const TransformPair& pair, int n) {
    if (n < 0) throw Error("transform coefficient index must be nonnegative");
    if (n % 2 != 0) return 0.0;  // every tabulated f(omega) is even
    const int half = n / 2;
    const double sign = half % 2 == 0 ? 1.0 : -1.0;
    switch (pair.kind) {
        case PairKind::delta_like:
            return n == 0 ? 1.0 : 0.0;
        case PairKind::semicircle:
            if (n == 0) return 0.5;
            if (n == 2) return -0.25;
            return 0.0;
        case PairKind::constant:
            return 2.0 / (1.0 - static_cast<double>(n) * n);
        case PairKind::parabolic:
            return 12.0 / ((1.0 - static_cast<double>(n) * n) * (9.0 - static_cast<double>(n) * n));
        case PairKind::log:
            if (n == 0) return kLn2;
            return sign / n;
        case PairKind::log_squared:
            if (n == 0) return kPi * kPi / 12.0 + kLn2 * kLn2;
            return sign * (2.0 / (static_cast<double>(n) * n) +
                           (2.0 * harmonic_number(half - 1) + 2.0 * kLn2) / n);
    }
    throw Error("unknown transform pair kind");
}

namespace {
bool has_sqrt_weight(PairKind k) {
    return k == PairKind::delta_like || k == PairKind::log || k == PairKind::log_squared;
}
}  // namespace

double transform_eval(const TransformPair& pair, double omega) {
    if (has_sqrt_weight(pair.kind) && std::abs(omega) >= 1.0)
        throw DomainError("transform pair diverges at |omega| >= 1");
    if ((pair.kind == PairKind::log || pair.kind == PairKind::log_squared) && omega == 0.0)
        throw DomainError("log transform pair diverges at omega = 0");
    switch (pair.kind) {
        case PairKind::delta_like:
            return 1.0 / (kPi * std::sqrt(1.0 - omega * omega));
        case PairKind::semicircle:
            if (std::abs(omega) > 1.0) throw DomainError("semicircle pair undefined for |omega| > 1");
            return std::sqrt(1.0 - omega * omega) / kPi;
        case PairKind::constant:
            return 1.0;
        case PairKind::parabolic:
            return 1.0 - omega * omega;
        case PairKind::log:
            return std::log(1.0 / std::abs(omega)) / (kPi * std::sqrt(1.0 - omega * omega));
        case PairKind::log_squared: {
            const double l = std::log(1.0 / std::abs(omega));
            return l * l / (kPi * std::sqrt(1.0 - omega * omega));
        }
    }
    throw Error("unknown transform pair kind");
}

double transform_eval_theta(const TransformPair& pair, double theta) {
    const double s = std::sin(theta);
    switch (pair.kind) {
        case PairKind::delta_like:
            return 1.0 / kPi;
        case PairKind::semicircle:
            return s * s / kPi;
        case PairKind::constant:
            return s;
        case PairKind::parabolic:
            return s * s * s;
        case PairKind::log:
            return std::log(1.0 / std::abs(std::cos(theta))) / kPi;
        case PairKind::log_squared: {
            const double l = std::log(1.0 / std::abs(std::cos(theta)));
            return l * l / kPi;
        }
    }
    throw Error("unknown transform pair kind");
}

double bessel_i0(double x) {
    // I0(x) = sum_k (x/2)^{2k} / (k!)^2
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double kaiser_window(int n, int L, double beta) {
    if (n < 0 || n > L - 1) throw Error("kaiser window index out of range");
    if (beta < 0.0) throw Error("kaiser window beta must be nonnegative");
    if (beta == 0.0) return 1.0;
    const double x = L > 1 ? static_cast<double>(n) / (L - 1) : 0.0;
    const double arg = beta * std::sqrt(std::max(0.0, 1.0 - x * x));
    return bessel_i0(arg) / bessel_i0(beta);
}

double eval_T_series(std::span<const double> c, double omega) {
    if (c.empty()) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b = c[k] + 2.0 * omega * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return c[0] + omega * b1 - b2;
}

double eval_U_series(std::span<const double> c, double omega) {
    // sum_{n>=1} c_n U_{n-1} = sum_{m>=0} c_{m+1} U_m; U-recurrence Clenshaw
    if (c.size() <= 1) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t m = c.size() - 1; m-- > 0;) {
        const double b = c[m + 1] + 2.0 * omega * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return b1;
}

double eval_cos_series(std::span<const double> c, double theta) {
    double sum = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n)
        if (c[n] != 0.0) sum += c[n] * std::cos(static_cast<double>(n) * theta);
    return sum;
}

}  // namespace lgf
