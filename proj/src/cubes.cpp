#include "cubesum/cubes.hpp"

namespace cubesum {

U128 cube_sum_naive(const CubeSumInstance& inst, std::uint64_t term_limit) {
    validate(inst);
    if (inst.k > term_limit) throw oracle_limit_error("cube_sum_naive term cap exceeded");
    U128 sum = 0;
    for (std::uint64_t i = 0; i < inst.k; ++i) {
        U128 base = U128(inst.x) + i;
        sum += base * base * base;
    }
    return sum;
}

}  // namespace cubesum
