#include "lgf/bigint.hpp"

#include "lgf/lattice.hpp"

#include <atomic>
#include <deque>
#include <mutex>

namespace lgf {

namespace {

// Published entries are immutable and the deque never invalidates references,
// so reads below the watermark need no lock.
std::deque<Int> g_factorials{Int(1)};
std::atomic<int> g_watermark{1};  // number of valid entries
std::mutex g_growth;

void grow_factorials(int n) {
    std::lock_guard<std::mutex> lock(g_growth);
    for (int k = g_watermark.load(std::memory_order_relaxed); k <= n; ++k) {
        g_factorials.push_back(g_factorials.back() * k);
        g_watermark.store(k + 1, std::memory_order_release);
    }
}

}  // namespace

const Int& factorial(int n) {
    if (n < 0) throw Error("factorial of negative argument");
    if (n >= g_watermark.load(std::memory_order_acquire)) grow_factorials(n);
    return g_factorials[static_cast<std::size_t>(n)];
}

void warm_factorials(int n_max) {
    if (n_max >= 0) factorial(n_max);
}

Int binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

double ratio_as_double(const Int& num, const Int& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return mpq_get_d(q.get_mpq_t());
}

std::string to_decimal(const Int& v) { return v.get_str(); }

}  // namespace lgf
