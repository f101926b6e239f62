#include "lgf/fixtures.hpp"

namespace lgf::fixtures {

// clang-format off
const std::array<std::array<std::int64_t, kMaxN + 1>, 9> closed_walks = {{
    // chain
    {1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252},
    // square
    {1, 0, 4, 0, 36, 0, 400, 0, 4900, 0, 63504},
    // bcc
    {1, 0, 8, 0, 216, 0, 8000, 0, 343000, 0, 16003008},
    // honeycomb
    {1, 0, 3, 0, 15, 0, 93, 0, 639, 0, 4653},
    // diamond
    {1, 0, 4, 0, 28, 0, 256, 0, 2716, 0, 31504},
    // cubic
    {1, 0, 6, 0, 90, 0, 1860, 0, 44730, 0, 1172556},
    // hypercubic4
    {1, 0, 8, 0, 168, 0, 5120, 0, 190120, 0, 7939008},
    // triangular
    {1, 0, 6, 12, 90, 360, 2040, 10080, 54810, 290640, 1588356},
    // fcc
    {1, 0, 12, 48, 540, 4320, 42240, 403200, 4038300, 40958400, 423550512},
}};

const std::array<std::array<std::int64_t, kMaxN + 1>, 9> scaled_moments = {{
    // chain (z=2)
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    // square (z=4)
    {1, 0, -8, 0, 32, 0, -512, 0, 4608, 0, -73728},
    // bcc (z=8)
    {1, 0, -48, 0, 1728, 0, -79872, 0, 4058112, 0, -216956928},
    // honeycomb (z=3)
    {1, 0, -3, 0, -15, 0, 141, 0, -1503, 0, 9117},
    // diamond (z=4)
    {1, 0, -8, 0, -32, 0, 1024, 0, -12800, 0, 90112},
    // cubic (z=6)
    {1, 0, -24, 0, 288, 0, -2688, 0, -32256, 0, 2820096},
    // hypercubic4 (z=8)
    {1, 0, -48, 0, 1344, 0, -24576, 0, 218112, 0, -688128},
    // triangular (z=6)
    {1, 0, -24, 48, 288, -2880, 3072, 64512, -400896, -245760, 12496896},
    // fcc (z=12)
    {1, 0, -120, 192, 11232, -69120, -887808, 11870208, 34721280, -1458585600, 4612792320},
}};

const std::array<std::array<std::int64_t, 7>, 7> cheb_coeffs = {{
    {1, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 0, 0, 0},
    {-1, 0, 2, 0, 0, 0, 0},
    {0, -3, 0, 4, 0, 0, 0},
    {1, 0, -8, 0, 8, 0, 0},
    {0, 5, 0, -20, 0, 16, 0},
    {-1, 0, 18, 0, -48, 0, 32},
}};
// clang-format on

}  // namespace lgf::fixtures
