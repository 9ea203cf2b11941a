#pragma once

#include <cstddef>
#include <vector>

namespace invspec {

enum class Grading { Uniform, GradedToEndpoints, KinkAtZero };

struct Mesh {
  std::vector<double> x;  // strictly increasing nodes
  Grading grading = Grading::Uniform;

  std::size_t elements() const { return x.empty() ? 0 : x.size() - 1; }
};

/// N uniform elements on [-1, 1].
Mesh uniform_mesh(int elements);

/// x_i = sin(pi/2 (2i/N - 1)): quadratic clustering at both poles. N must be
/// even so that 0 is a node.
Mesh graded_mesh(int elements, Grading tag = Grading::GradedToEndpoints);

/// Right half of graded_mesh(elements) on [0, 1], i.e. elements/2 cells.
Mesh half_mesh(int elements);

/// Throws MeshError unless strictly increasing with at least one element.
void validate_mesh(const Mesh& mesh);

}  // namespace invspec
