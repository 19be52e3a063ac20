#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rlab
{
    // Child seeds are derived, never drawn, so a stream index always maps to the same generator.
    auto derive_seed(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t;

    class Rng
    {
        public:
            explicit Rng(std::uint64_t seed) : _engine(seed)
            {
            }

            auto next() -> std::uint64_t
            {
                return _engine();
            }

            // uniform in [0, bound)
            auto below(std::uint64_t bound) -> std::uint64_t;

            auto coin() -> bool
            {
                return (_engine() >> 63) != 0;
            }

            auto unit() -> double;

            template <typename T>
            auto shuffle(std::vector<T> & items) -> void
            {
                for (std::size_t i = items.size(); i > 1; --i)
                    std::swap(items[i - 1], items[below(i)]);
            }

        private:
            std::mt19937_64 _engine;
    };
}
