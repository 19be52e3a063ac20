#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace rlab
{
    // Packed membership vector over a fixed universe {0, ..., n-1}.
    class VertexSet
    {
        public:
            VertexSet() = default;

            explicit VertexSet(int universe) :
                _n(universe),
                _words((universe + 63) / 64, 0)
            {
            }

            static auto full(int universe) -> VertexSet;
            static auto from_list(int universe, const std::vector<int> & members) -> VertexSet;

            auto universe() const -> int
            {
                return _n;
            }

            auto contains(int v) const -> bool
            {
                return (_words[v >> 6] >> (v & 63)) & 1u;
            }

            auto insert(int v) -> void
            {
                _words[v >> 6] |= std::uint64_t{1} << (v & 63);
            }

            auto erase(int v) -> void
            {
                _words[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
            }

            auto size() const -> int
            {
                int total = 0;
                for (auto w : _words)
                    total += std::popcount(w);
                return total;
            }

            auto empty() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return false;
                return true;
            }

            auto clear() -> void
            {
                for (auto & w : _words)
                    w = 0;
            }

            auto intersect_count(const VertexSet & other) const -> int
            {
                int total = 0;
                for (std::size_t i = 0; i < _words.size(); ++i)
                    total += std::popcount(_words[i] & other._words[i]);
                return total;
            }

            auto intersects(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            auto is_subset_of(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i] & ~other._words[i])
                        return false;
                return true;
            }

            auto operator&=(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|=(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            auto operator-=(const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            friend auto operator&(VertexSet a, const VertexSet & b) -> VertexSet
            {
                return a &= b;
            }

            friend auto operator|(VertexSet a, const VertexSet & b) -> VertexSet
            {
                return a |= b;
            }

            friend auto operator-(VertexSet a, const VertexSet & b) -> VertexSet
            {
                return a -= b;
            }

            auto operator==(const VertexSet & other) const -> bool = default;

            // smallest member, or -1
            auto first() const -> int
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i])
                        return int(i * 64) + std::countr_zero(_words[i]);
                return -1;
            }

            template <typename F>
            auto for_each(F && f) const -> void
            {
                for (std::size_t i = 0; i < _words.size(); ++i) {
                    auto w = _words[i];
                    while (w) {
                        int bit = std::countr_zero(w);
                        f(int(i * 64) + bit);
                        w &= w - 1;
                    }
                }
            }

            auto to_vector() const -> std::vector<int>;

            auto words() const -> const std::vector<std::uint64_t> &
            {
                return _words;
            }

            auto words() -> std::vector<std::uint64_t> &
            {
                return _words;
            }

        private:
            int _n = 0;
            std::vector<std::uint64_t> _words;
    };
}
