#include "invspec/mesh.hpp"

#include <cmath>
#include <numbers>

#include "invspec/errors.hpp"

namespace invspec {

Mesh uniform_mesh(int elements) {
  if (elements < 1) throw MeshError("mesh needs at least one element");
  Mesh m;
  m.grading = Grading::Uniform;
  m.x.resize(elements + 1);
  for (int i = 0; i <= elements; ++i) m.x[i] = -1.0 + 2.0 * i / elements;
  m.x.back() = 1.0;
  return m;
}

Mesh graded_mesh(int elements, Grading tag) {
  if (elements < 2 || elements % 2 != 0) throw MeshError("graded mesh needs an even number of elements");
  Mesh m;
  m.grading = tag;
  m.x.resize(elements + 1);
  const int half = elements / 2;
  // -cos(pi i / N) for the left half, mirrored so the mesh is exactly symmetric
  for (int i = 0; i < half; ++i) {
    const double v = -std::cos(std::numbers::pi * i / elements);
    m.x[i] = v;
    m.x[elements - i] = -v;
  }
  m.x[0] = -1.0;
  m.x[elements] = 1.0;
  m.x[half] = 0.0;
  return m;
}

Mesh half_mesh(int elements) {
  const Mesh full = graded_mesh(elements);
  Mesh m;
  m.grading = Grading::GradedToEndpoints;
  m.x.assign(full.x.begin() + elements / 2, full.x.end());
  return m;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.x.size() < 2) throw MeshError("mesh needs at least one element");
  for (std::size_t i = 0; i + 1 < mesh.x.size(); ++i)
    if (!(mesh.x[i + 1] > mesh.x[i])) throw MeshError("mesh nodes must be strictly increasing");
}

}  // namespace invspec
