#include "dualmink/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dualmink::kern {

// Defined in kernels_avx2.cpp / kernels_neon.cpp; null when the platform
// or CPU lacks the instruction set.
const Impl* avx2_impl_if_supported();
const Impl* neon_impl_if_supported();

const std::vector<const Impl*>& available_impls() {
    static const std::vector<const Impl*> impls = [] {
        std::vector<const Impl*> v{&scalar_impl()};
        if (const Impl* a = avx2_impl_if_supported()) v.push_back(a);
        if (const Impl* n = neon_impl_if_supported()) v.push_back(n);
        return v;
    }();
    return impls;
}

const Impl& active_impl() {
    static const Impl* chosen = [] {
        const auto& impls = available_impls();
        const Impl* pick = impls.back(); // widest available
        if (const char* want = std::getenv("DUALMINK_SIMD")) {
            for (const Impl* impl : impls)
                if (std::strcmp(impl->name, want) == 0) pick = impl;
        }
        return pick;
    }();
    return *chosen;
}

} // namespace dualmink::kern
