#include <rlab/rng.hpp>

namespace rlab
{
    namespace
    {
        auto splitmix64(std::uint64_t x) -> std::uint64_t
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }
    }

    auto derive_seed(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t
    {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    }

    auto Rng::below(std::uint64_t bound) -> std::uint64_t
    {
        // rejection keeps the draw unbiased and identical across platforms
        std::uint64_t limit = bound ? (~std::uint64_t{0} - (~std::uint64_t{0} % bound)) : 0;
        while (true) {
            auto x = _engine();
            if (x < limit)
                return x % bound;
        }
    }

    auto Rng::unit() -> double
    {
        return double(_engine() >> 11) * 0x1.0p-53;
    }
}
