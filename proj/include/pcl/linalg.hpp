#ifndef PCL_LINALG_HPP
#define PCL_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "pcl/rational.hpp"

namespace pcl {

using Matrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gaussian elimination.
std::size_t rank(Matrix a);

/// Unique solution of the square system a x = b, or nullopt when singular.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

/// A basis of {x : a x = 0}; `cols` gives the width when a has no rows.
std::vector<std::vector<Rational>> null_space(Matrix a, std::size_t cols);

}  // namespace pcl

#endif
