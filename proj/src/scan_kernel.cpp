#include "charp/scan_kernel.hpp"

#include <cstdlib>

#include "charp/errors.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace charp {

namespace {

// Divisibility test without division (Granlund-Montgomery): for odd p and
// y < 2^16, y % p == 0 iff (uint16_t)(y * inv_p) <= (2^16 - 1) / p, where
// inv_p is the inverse of p modulo 2^16.
inline std::uint16_t mod_inverse_u16(std::uint16_t p) {
    std::uint16_t inv = p;  // Newton iteration doubles correct bits
    for (int i = 0; i < 4; ++i) inv = (std::uint16_t)(inv * (2 - p * inv));
    return inv;
}

}  // namespace

void filter_congruent_scalar(const ScanTable& t, const std::uint16_t* prefix,
                             std::vector<std::uint32_t>& out) {
    const std::uint16_t inv = mod_inverse_u16(t.p);
    const std::uint16_t lim = (std::uint16_t)(0xFFFFu / t.p);
    const int L = (int)t.lanes.size();
    for (std::uint64_t e = 0; e < t.n; ++e) {
        bool ok = true;
        for (int l = 0; l < L; ++l) {
            std::uint16_t y = (std::uint16_t)(prefix[l] + t.lanes[l][e]);
            if ((std::uint16_t)(y * inv) > lim) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back((std::uint32_t)e);
    }
}

#if defined(__x86_64__)

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) void filter_congruent_avx2(const ScanTable& t,
                                                           const std::uint16_t* prefix,
                                                           std::vector<std::uint32_t>& out) {
    const std::uint16_t inv = mod_inverse_u16(t.p);
    const std::uint16_t lim = (std::uint16_t)(0xFFFFu / t.p);
    const int L = (int)t.lanes.size();
    const __m256i vinv = _mm256_set1_epi16((short)inv);
    const __m256i vlim = _mm256_set1_epi16((short)lim);
    std::uint64_t e = 0;
    for (; e + 16 <= t.n; e += 16) {
        __m256i acc = _mm256_set1_epi16(-1);
        for (int l = 0; l < L; ++l) {
            __m256i x = _mm256_loadu_si256((const __m256i*)(t.lanes[l].data() + e));
            __m256i y = _mm256_add_epi16(x, _mm256_set1_epi16((short)prefix[l]));
            __m256i m = _mm256_mullo_epi16(y, vinv);
            // unsigned m <= lim  <=>  min(m, lim) == m
            __m256i ok = _mm256_cmpeq_epi16(_mm256_min_epu16(m, vlim), m);
            acc = _mm256_and_si256(acc, ok);
            if (_mm256_testz_si256(acc, acc)) break;
        }
        unsigned mask = (unsigned)_mm256_movemask_epi8(acc);
        while (mask) {
            int bit = __builtin_ctz(mask);
            out.push_back((std::uint32_t)(e + bit / 2));
            mask &= mask - 1;
            mask &= mask - 1;  // clear both bytes of the 16-bit lane
        }
    }
    // tail
    if (e < t.n) {
        ScanTable tail;
        tail.n = t.n - e;
        tail.p = t.p;
        tail.lanes.resize(L);
        for (int l = 0; l < L; ++l)
            tail.lanes[l].assign(t.lanes[l].begin() + e, t.lanes[l].end());
        std::vector<std::uint32_t> tmp;
        filter_congruent_scalar(tail, prefix, tmp);
        for (auto v : tmp) out.push_back((std::uint32_t)(e + v));
    }
}

#endif  // __x86_64__

ScanFilterFn select_scan_filter() {
    const char* pref = std::getenv("CHARP_SCAN_KERNEL");
    std::string want = pref ? pref : "auto";
#if defined(__x86_64__)
    if (want == "avx2") {
        if (!avx2_available()) throw PreconditionError("CHARP_SCAN_KERNEL=avx2 but AVX2 missing");
        return &filter_congruent_avx2;
    }
    if (want == "auto" && avx2_available()) return &filter_congruent_avx2;
#endif
    if (want != "auto" && want != "scalar"
#if defined(__x86_64__)
        && want != "avx2"
#endif
    )
        throw PreconditionError("unknown CHARP_SCAN_KERNEL value: " + want);
    return &filter_congruent_scalar;
}

std::string selected_scan_kernel_name() {
#if defined(__x86_64__)
    if (select_scan_filter() == &filter_congruent_avx2) return "avx2";
#endif
    return "scalar";
}

}  // namespace charp
