#ifndef WFEM_MESH_HPP
#define WFEM_MESH_HPP

#include <cstddef>
#include <vector>

namespace wfem
{

/// Uniform partition of the interval (a, b). Elements are [nodes[k], nodes[k+1]].
struct Mesh1D
{
    double a = -1.0;
    double b = 1.0;
    int n_elems = 2;
    double h = 1.0;
    std::vector<double> nodes;

    int n_nodes() const noexcept { return n_elems + 1; }
    double left(int elem) const { return nodes[static_cast<std::size_t>(elem)]; }
    double right(int elem) const { return nodes[static_cast<std::size_t>(elem) + 1]; }
    double length() const noexcept { return b - a; }

    /// Element containing x (right-closed except for the first element); -1 outside [a, b].
    int locate(double x) const noexcept;
};

Mesh1D build_uniform_mesh(double a, double b, int n_elems);

enum class PairClass
{
    identical,
    adjacent,
    disjoint
};

PairClass element_pair_class(int k, int l) noexcept;

} // namespace wfem

#endif // WFEM_MESH_HPP
