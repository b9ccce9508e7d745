#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace charp {

// Data-parallel congruence filter used by the projective system scan.
//
// A candidate stream of length n is described lane-wise (structure of
// arrays): lane l holds n residues < p. Entry e is accepted when
// (prefix[l] + lane[l][e]) == 0 (mod p) for every lane. All residues and
// prefixes are < p, so the sums stay below 2p < 2^16.
struct ScanTable {
    std::uint64_t n = 0;
    std::uint16_t p = 0;
    std::vector<std::vector<std::uint16_t>> lanes;
};

using ScanFilterFn = void (*)(const ScanTable&, const std::uint16_t* prefix,
                              std::vector<std::uint32_t>& out);

// Reference implementation (portable scalar loop).
void filter_congruent_scalar(const ScanTable& t, const std::uint16_t* prefix,
                             std::vector<std::uint32_t>& out);

#if defined(__x86_64__)
// AVX2 variant, 16 entries per step. Same contract as the scalar kernel.
void filter_congruent_avx2(const ScanTable& t, const std::uint16_t* prefix,
                           std::vector<std::uint32_t>& out);
bool avx2_available();
#endif

// Runtime selection: honors CHARP_SCAN_KERNEL=scalar|avx2|auto (default auto).
ScanFilterFn select_scan_filter();
std::string selected_scan_kernel_name();

}  // namespace charp
