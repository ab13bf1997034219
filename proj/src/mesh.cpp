#include "wfem/mesh.hpp"

#include "wfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace wfem
{

Mesh1D build_uniform_mesh(double a, double b, int n_elems)
{
    if (!(a < b))
        throw ArgumentError("build_uniform_mesh: need a < b");
    if (n_elems < 2)
        throw ArgumentError("build_uniform_mesh: need at least 2 elements, got " + std::to_string(n_elems));

    Mesh1D mesh;
    mesh.a = a;
    mesh.b = b;
    mesh.n_elems = n_elems;
    mesh.h = (b - a) / n_elems;
    mesh.nodes.resize(static_cast<std::size_t>(n_elems) + 1);
    for (int k = 0; k <= n_elems; ++k)
        mesh.nodes[static_cast<std::size_t>(k)] = a + (b - a) * (static_cast<double>(k) / n_elems);
    mesh.nodes.front() = a;
    mesh.nodes.back() = b;
    return mesh;
}

int Mesh1D::locate(double x) const noexcept
{
    if (x < a || x > b)
        return -1;
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    const int idx = static_cast<int>(it - nodes.begin());
    return std::clamp(idx - 1, 0, n_elems - 1);
}

PairClass element_pair_class(int k, int l) noexcept
{
    if (k == l)
        return PairClass::identical;
    if (std::abs(k - l) == 1)
        return PairClass::adjacent;
    return PairClass::disjoint;
}

} // namespace wfem
