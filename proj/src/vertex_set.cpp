#include <rlab/vertex_set.hpp>

namespace rlab
{
    auto VertexSet::full(int universe) -> VertexSet
    {
        VertexSet result(universe);
        for (int v = 0; v < universe; ++v)
            result.insert(v);
        return result;
    }

    auto VertexSet::from_list(int universe, const std::vector<int> & members) -> VertexSet
    {
        VertexSet result(universe);
        for (int v : members)
            result.insert(v);
        return result;
    }

    auto VertexSet::to_vector() const -> std::vector<int>
    {
        std::vector<int> result;
        result.reserve(size());
        for_each([&](int v) { result.push_back(v); });
        return result;
    }
}
