#include "sixv/qops.hpp"

namespace sixv {

std::vector<std::vector<long>> sector_compositions(long sites, long l, long cap) {
    if (sites <= 0) throw DomainError("site count must be positive");
    if (l < 0) throw DomainError("sector must be nonnegative");
    std::vector<std::vector<long>> out;
    std::vector<long> cur(static_cast<size_t>(sites));
    // Depth-first over site values, smallest site varying slowest.
    auto rec = [&](auto&& self, long k, long rest) -> void {
        if (k == sites) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        long hi = cap >= 0 && cap < rest ? cap : rest;
        for (long v = 0; v <= hi; ++v) {
            cur[static_cast<size_t>(k)] = v;
            self(self, k + 1, rest - v);
        }
    };
    rec(rec, 0, l);
    return out;
}

} // namespace sixv
