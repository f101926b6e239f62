#include "lgf/walks.hpp"

#include <cassert>
#include <functional>
#include <span>

namespace lgf {

namespace {

void divexact(Int& a, const Int& b) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// chain / square / bcc: one binomial per axis.  Each factor C(n,(n+x)/2)
// vanishes when n+x is odd or |x| > n, which encodes the parity constraint.
Int bcc_family_open(std::span<const int> r, int n) {
    Int w(1);
    for (int x : r) {
        if ((n + x) % 2 != 0) return Int(0);
        w *= binomial(n, (static_cast<long>(n) + x) / 2);
        if (w == 0) return w;
    }
    return w;
}

// cubic family: sum over step-count splits of the multinomial
// n! / prod_i m_i! (m_i + r_i)!  with sum m_i = (n - sum r)/2.
// All factorial arguments of one term are >= 0 and sum to n, so prefix
// divisions stay exact.
Int cubic_family_open(std::span<const int> r, int n) {
    long coord_sum = 0;
    for (int x : r) coord_sum += x;
    const long s2 = n - coord_sum;
    if (s2 < 0 || s2 % 2 != 0) return Int(0);
    const long s = s2 / 2;

    Int total(0);
    const Int& fn = factorial(n);
    if (r.size() == 1) {
        const long m = s;
        if (m + r[0] < 0 || m + r[0] > n) return total;
        Int t = fn;
        divexact(t, factorial(static_cast<int>(m)));
        divexact(t, factorial(static_cast<int>(m + r[0])));
        return t;
    }
    if (r.size() == 3) {
        const int x = r[0], y = r[1], z = r[2];
        for (long j = 0; j <= s; ++j) {
            if (j + x < 0) continue;
            Int a = fn;
            divexact(a, factorial(static_cast<int>(j)));
            divexact(a, factorial(static_cast<int>(j + x)));
            for (long k = 0; k + j <= s; ++k) {
                const long l = s - j - k;
                if (k + y < 0 || l + z < 0) continue;
                Int b = a;
                divexact(b, factorial(static_cast<int>(k)));
                divexact(b, factorial(static_cast<int>(k + y)));
                divexact(b, factorial(static_cast<int>(l)));
                divexact(b, factorial(static_cast<int>(l + z)));
                total += b;
            }
        }
        return total;
    }
    assert(r.size() == 4);
    const int x = r[0], y = r[1], z = r[2], w4 = r[3];
    for (long j = 0; j <= s; ++j) {
        if (j + x < 0) continue;
        Int a = fn;
        divexact(a, factorial(static_cast<int>(j)));
        divexact(a, factorial(static_cast<int>(j + x)));
        for (long k = 0; k + j <= s; ++k) {
            if (k + y < 0) continue;
            Int b = a;
            divexact(b, factorial(static_cast<int>(k)));
            divexact(b, factorial(static_cast<int>(k + y)));
            for (long l = 0; l + k + j <= s; ++l) {
                const long m = s - j - k - l;
                if (l + z < 0 || m + w4 < 0) continue;
                Int c = b;
                divexact(c, factorial(static_cast<int>(l)));
                divexact(c, factorial(static_cast<int>(l + z)));
                divexact(c, factorial(static_cast<int>(m)));
                divexact(c, factorial(static_cast<int>(m + w4)));
                total += c;
            }
        }
    }
    return total;
}

// honeycomb / diamond: positive steps permute one multinomial, negative
// steps the other, giving the step-count sum
//   W_n = floor(n/2)! ceil(n/2)! (f_{r1} * f_{r2} * ...)(floor(n/2)),
// with f_c(i) = 1/(i! (i+c)!).  Pairs of factors contract by Vandermonde,
//   (f_a * f_b)(p) = C(2p+a+b, p+a) / (p! (p+a+b)!),
// which collapses the double/triple sums to a single sum over p.  The
// closed-walk single-sum forms are the r = 0 special case.  Caller checks
// sum(r) == n mod 2; out-of-range binomials vanish and encode the rest.
Int honeycomb_family_open(std::span<const int> r, int n) {
    const int h = n / 2;       // negative steps
    const int hc = n - h;      // positive steps
    Int total(0);
    if (r.size() == 3) {
        const int x = r[0], y = r[1];
        for (int p = 0; p <= h; ++p) {
            // C(h,p) C(hc, p+x+y) C(2p+x+y, p+x); the f_z factor is absorbed
            // into C(hc, p+x+y) because (p+x+y) + (h-p+z) = hc
            Int t = binomial(h, p);
            if (t == 0) continue;
            t *= binomial(hc, p + x + y);
            if (t == 0) continue;
            t *= binomial(2 * p + x + y, p + x);
            total += t;
        }
        return total;
    }
    assert(r.size() == 4);
    const int u = r[0], v = r[1], w = r[2], s4 = r[3];
    for (int p = 0; p <= h; ++p) {
        Int t = binomial(h, p);
        if (t == 0) continue;
        t *= binomial(hc, p + u + v);
        if (t == 0) continue;
        t *= binomial(2 * p + u + v, p + u);
        if (t == 0) continue;
        t *= binomial(2 * (h - p) + w + s4, (h - p) + w);
        total += t;
    }
    return total;
}

int parity_of_sum(std::span<const int> r) {
    long s = 0;
    for (int x : r) s += x;
    return static_cast<int>(((s % 2) + 2) % 2);
}

// triangular / fcc: alternating binomial transform of the parent family,
// W_n = sum_j C(n,j) (-z_p)^{n-j} W^parent_{r,2j} with z_p = 3 resp. 4.
Int alternating_transform(int n, int parent_base,
                          const std::function<Int(int)>& parent_at) {
    Int total(0);
    Int p(1);
    std::vector<Int> powers(static_cast<std::size_t>(n) + 1);
    for (int e = 0; e <= n; ++e) {
        powers[static_cast<std::size_t>(e)] = p;
        p *= parent_base;
    }
    for (int j = 0; j <= n; ++j) {
        Int w = parent_at(j);
        if (w == 0) continue;
        w *= binomial(n, j);
        w *= powers[static_cast<std::size_t>(n - j)];
        if ((n - j) % 2 != 0)
            total -= w;
        else
            total += w;
    }
    assert(total >= 0);
    return total;
}

Int closed_honeycomb(int N) {  // W^hon_{2N} = sum_j C(N,j)^2 C(2j,j)
    Int total(0);
    for (int j = 0; j <= N; ++j) {
        Int t = binomial(N, j);
        t *= t;
        t *= binomial(2 * j, j);
        total += t;
    }
    return total;
}

Int closed_diamond(int N) {  // W^diam_{2N} = sum_j C(N,j)^2 C(2j,j) C(2N-2j,N-j)
    Int total(0);
    for (int j = 0; j <= N; ++j) {
        Int t = binomial(N, j);
        t *= t;
        t *= binomial(2 * j, j);
        t *= binomial(2 * (N - j), N - j);
        total += t;
    }
    return total;
}

}  // namespace

Int count_closed_walks(const LatticeSpec& lat, int n) {
    if (n < 0) throw Error("walk length must be nonnegative");
    if (n == 0) return Int(1);
    if (is_bipartite(lat.family) && n % 2 != 0) return Int(0);
    const int N = n / 2;
    switch (lat.family) {
        case Family::chain:
            return binomial(n, N);
        case Family::square: {
            Int b = binomial(n, N);
            return b * b;
        }
        case Family::bcc: {
            Int b = binomial(n, N);
            return b * b * b;
        }
        case Family::honeycomb:
            return closed_honeycomb(N);
        case Family::diamond:
            return closed_diamond(N);
        case Family::cubic:
            return binomial(n, N) * closed_honeycomb(N);
        case Family::hypercubic4:
            return binomial(n, N) * closed_diamond(N);
        case Family::triangular:
            return alternating_transform(n, 3, [](int j) { return closed_honeycomb(j); });
        case Family::fcc:
            return alternating_transform(n, 4, [](int j) { return closed_diamond(j); });
    }
    throw Error("unknown lattice family");
}

Int count_walks_to(const LatticeSpec& lat, const Displacement& r, int n) {
    if (n < 0) throw Error("walk length must be nonnegative");
    validate_displacement(lat, r);
    std::span<const int> c{r.coords};
    switch (lat.family) {
        case Family::chain:
        case Family::square:
        case Family::bcc:
            return bcc_family_open(c, n);
        case Family::cubic:
        case Family::hypercubic4:
            return cubic_family_open(c, n);
        case Family::honeycomb:
        case Family::diamond:
            if (parity_of_sum(c) != n % 2) return Int(0);
            return honeycomb_family_open(c, n);
        case Family::triangular:
            return alternating_transform(
                n, 3, [&](int j) { return honeycomb_family_open(c, 2 * j); });
        case Family::fcc:
            return alternating_transform(
                n, 4, [&](int j) { return honeycomb_family_open(c, 2 * j); });
    }
    throw Error("unknown lattice family");
}

std::array<int, 3> project_grid4(int u, int v, int w, int s) {
    return {u + v - w - s, u - v + w - s, u - v - w + s};
}

WalkTable build_walk_table(const LatticeSpec& lat, const Displacement& r, int N) {
    if (N < 0) throw Error("table order must be nonnegative");
    validate_displacement(lat, r);
    warm_factorials(N);
    WalkTable table{lat, r, {}};
    table.counts.resize(static_cast<std::size_t>(N) + 1);

    const bool origin = r.is_origin();
    std::span<const int> c{r.coords};

    if (lat.family == Family::triangular || lat.family == Family::fcc) {
        // Build the parent-family open-walk table once, then transform.
        const int base = lat.family == Family::triangular ? 3 : 4;
        std::vector<Int> parent(static_cast<std::size_t>(N) + 1);
        for (int j = 0; j <= N; ++j)
            parent[static_cast<std::size_t>(j)] = honeycomb_family_open(c, 2 * j);
        for (int n = 0; n <= N; ++n)
            table.counts[static_cast<std::size_t>(n)] = alternating_transform(
                n, base, [&](int j) { return parent[static_cast<std::size_t>(j)]; });
        return table;
    }

    for (int n = 0; n <= N; ++n)
        table.counts[static_cast<std::size_t>(n)] =
            origin ? count_closed_walks(lat, n) : count_walks_to(lat, r, n);
    return table;
}

}  // namespace lgf
